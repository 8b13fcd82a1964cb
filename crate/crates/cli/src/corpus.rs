//! Built-in example models, each with the results it is expected to produce.

pub struct Check {
    /// Command line, without the program name.
    pub args: &'static [&'static str],
    /// Slash-separated path into the report data.
    pub key: &'static str,
    pub expected: &'static str,
}

pub struct Entry {
    pub name: &'static str,
    pub summary: &'static str,
    pub json: &'static str,
    pub checks: &'static [Check],
}

const fn c(args: &'static [&'static str], key: &'static str, expected: &'static str) -> Check {
    Check { args, key, expected }
}

static ENTRIES: &[Entry] = &[
    Entry {
        name: "bq",
        summary:
            "two-dimensional hom(x,z); U by Z valid and connected; not Schurian generated; pi1 trivial unless q = 0",
        json: include_str!("../corpus/bq.json"),
        checks: &[
            c(&["cat", "info", "bq", "--q", "0"], "dims/x->z", "2"),
            c(&["cat", "info", "bq", "--q", "0"], "dims/x->z'", "1"),
            c(&["cat", "info", "bq", "--q", "1"], "dims/x->z", "2"),
            c(&["cat", "info", "bq", "--q", "1"], "dims/x->z'", "1"),
            c(&["cat", "info", "bq", "--q", "2"], "dims/x->z", "2"),
            c(&["cat", "info", "bq", "--q", "2"], "dims/x->z'", "1"),
            c(&["grading", "validate", "bq", "--grading", "U", "--q", "0"], "valid", "true"),
            c(&["grading", "validate", "bq", "--grading", "U", "--q", "2"], "valid", "true"),
            c(&["grading", "connected", "bq", "--grading", "U", "--q", "2"], "image", "Z"),
            c(&["grading", "connected", "bq", "--grading", "U"], "gradings/U/walks/square", "(1)"),
            c(&["cat", "check", "bq", "--q", "1"], "functors/shift/isomorphism", "true"),
            c(&["schur", "analyze", "bq"], "sg", "false"),
            c(&["schur", "analyze", "bq"], "arrows_outside_closure", "[\"gamma\"]"),
            c(&["pi1", "presentation", "bq", "--q", "0"], "abelianization", "Z"),
            c(&["pi1", "presentation", "bq", "--q", "1"], "abelianization", "0"),
            c(&["pi1", "presentation", "bq", "--q", "2"], "abelianization", "0"),
        ],
    },
    Entry {
        name: "kronecker",
        summary: "no universal grading; versal V; Fix trivial",
        json: include_str!("../corpus/kronecker.json"),
        checks: &[
            c(&["morph", "fix", "kronecker", "--grading", "V"], "endomorphisms", "[\"(-1)\",\"(1)\"]"),
            c(&["morph", "fix", "kronecker", "--grading", "V"], "fix", "0"),
            c(&["morph", "universal-check", "kronecker", "--grading", "V", "--quotients", "6"], "versal", "true"),
            c(&["morph", "universal-check", "kronecker", "--grading", "V", "--quotients", "6"], "universal", "false"),
            c(&["morph", "family", "kronecker", "--family", "endomorphisms"], "limit", "0"),
            c(&["morph", "verify", "kronecker"], "morphisms/inversion/verified", "true"),
            c(&["smash", "verify", "kronecker", "--grading", "V3", "--morphism", "swap3"], "lambda", "[\"(2)\"]"),
            c(&["schur", "analyze", "kronecker"], "constricted", "false"),
        ],
    },
    Entry {
        name: "kcp2",
        summary: "no Schurian morphisms; two grading families; limit group Z ⊕ C2",
        json: include_str!("../corpus/kcp2.json"),
        checks: &[
            c(&["schur", "analyze", "kcp2"], "schurian_count", "0"),
            c(&["grading", "validate", "kcp2", "--grading", "natural"], "valid", "true"),
            c(&["grading", "validate", "kcp2", "--grading", "maximal"], "valid", "true"),
            c(&["grading", "connected", "kcp2", "--grading", "natural"], "connected", "true"),
            c(&["grading", "connected", "kcp2", "--grading", "maximal"], "connected", "true"),
            c(&["morph", "family", "kcp2", "--family", "finite"], "limit", "Z ⊕ Z/2"),
        ],
    },
    Entry {
        name: "kcp3",
        summary: "no Schurian morphisms; two grading families; limit group Z ⊕ C3",
        json: include_str!("../corpus/kcp3.json"),
        checks: &[
            c(&["schur", "analyze", "kcp3"], "schurian_count", "0"),
            c(&["grading", "validate", "kcp3", "--grading", "natural"], "valid", "true"),
            c(&["grading", "validate", "kcp3", "--grading", "maximal"], "valid", "true"),
            c(&["grading", "connected", "kcp3", "--grading", "natural"], "connected", "true"),
            c(&["grading", "connected", "kcp3", "--grading", "maximal"], "connected", "true"),
            c(&["morph", "family", "kcp3", "--family", "finite"], "limit", "Z ⊕ Z/3"),
        ],
    },
    Entry {
        name: "square",
        summary: "Schurian; universal grading trivial",
        json: include_str!("../corpus/square.json"),
        checks: &[
            c(&["schur", "analyze", "square"], "sg", "true"),
            c(&["schur", "universal", "square"], "group", "0"),
            c(
                &["morph", "universal-check", "square", "--grading", "universal", "--oracle", "C2,C3,C4"],
                "universal",
                "true",
            ),
            c(&["smash", "verify", "square", "--grading", "trivial"], "galois", "true"),
        ],
    },
    Entry {
        name: "roundtrip",
        summary: "Schurian; universal grading by Z; C2 smash is Galois",
        json: include_str!("../corpus/roundtrip.json"),
        checks: &[
            c(&["schur", "analyze", "roundtrip"], "sg", "true"),
            c(&["schur", "universal", "roundtrip"], "group", "Z"),
            c(
                &["morph", "universal-check", "roundtrip", "--grading", "universal", "--oracle", "C2,C3,C4"],
                "universal",
                "true",
            ),
            c(&["morph", "fix", "roundtrip", "--grading", "universal"], "fix", "Z"),
            c(&["smash", "verify", "roundtrip", "--grading", "twisted"], "galois", "true"),
            c(&["smash", "build", "roundtrip", "--grading", "twisted"], "total_dimension", "8"),
        ],
    },
    Entry {
        name: "a3",
        summary: "Schurian; universal grading trivial",
        json: include_str!("../corpus/a3.json"),
        checks: &[
            c(&["schur", "analyze", "a3"], "sg", "true"),
            c(&["schur", "universal", "a3"], "group", "0"),
            c(
                &["morph", "universal-check", "a3", "--grading", "universal", "--oracle", "C2,C3,C4"],
                "universal",
                "true",
            ),
        ],
    },
    Entry {
        name: "dual",
        summary: "k[x]/(x^2) graded by C2; smash product of dimension 4 with a free transitive deck action",
        json: include_str!("../corpus/dual.json"),
        checks: &[
            c(&["smash", "build", "dual", "--grading", "parity"], "total_dimension", "4"),
            c(&["smash", "verify", "dual", "--grading", "parity"], "covering", "true"),
            c(&["smash", "verify", "dual", "--grading", "parity"], "galois", "true"),
        ],
    },
];

pub fn entries() -> &'static [Entry] {
    ENTRIES
}

pub fn find(name: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.name == name)
}
