use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use kgrad::grading::{closed_walk_subgroup, is_connected_grading, quotient_grading, walk_degree, ConnectorFamily};
use kgrad::grpkit::{generated_subgroup, hom_space, GroupElement};
use kgrad::linrep::{parse_rational, Scalar};
use kgrad::morph::{
    coherent_family_group, compute_fix, describe_witness, enumerate_constricted_gradings, enumerate_thin_morphisms,
    verify_grading_morphism, verify_universal_property, GradingFamily, DEFAULT_GRADING_CAP,
};
use kgrad::schur::{
    homogeneity_partition, is_constricted, presentation_group, schurian_morphisms, sg_closure, universal_grading,
    PresentationGroup, DEFAULT_PATH_CAP,
};
use kgrad::smash::{build_smash, covering_morphism_from_grading_morphism, galois_report, lambda_map, verify_covering};
use kgrad::{validate_grading, AbelianGroup, Grading, GroupHom, GroupPresentation};
use serde_json::{json, Value};
use thiserror::Error;

use crate::corpus;
use crate::model::{emit_model, grading_json, parse_model_str, resolve, Model, ModelError};
use crate::report::{plain, Report};

#[derive(Debug, Error)]
pub enum CliError {
    /// Help or version text requested; not an error for the caller.
    #[error("{0}")]
    Help(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Help(_) => 0,
            _ => 2,
        }
    }
}

fn compute(e: impl ToString) -> CliError {
    CliError::Compute(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "kgrad", version, about = "Group gradings of quivers with relations")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Append the elapsed time to the report.
    #[arg(long, global = true)]
    pub timings: bool,
    /// Accepted for compatibility; every computation is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Model file, or the name of a built-in example.
    pub model: String,
    /// Parameter override NAME=VALUE (rational).
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Shorthand for --param q=VALUE.
    #[arg(long)]
    pub q: Option<String>,
    /// Base object for walks and trees (default: the first vertex).
    #[arg(long)]
    pub base: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Presented categories.
    Cat {
        #[command(subcommand)]
        cmd: CatCmd,
    },
    /// Gradings.
    Grading {
        #[command(subcommand)]
        cmd: GradingCmd,
    },
    /// Schurian morphisms and universal gradings.
    Schur {
        #[command(subcommand)]
        cmd: SchurCmd,
    },
    /// Smash products.
    Smash {
        #[command(subcommand)]
        cmd: SmashCmd,
    },
    /// Morphisms of gradings.
    Morph {
        #[command(subcommand)]
        cmd: MorphCmd,
    },
    /// Brute-force enumeration of gradings.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Fundamental group of a presentation.
    Pi1 {
        #[command(subcommand)]
        cmd: Pi1Cmd,
    },
    /// The built-in example corpus.
    Examples {
        #[command(subcommand)]
        cmd: ExamplesCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatCmd {
    /// Hom-space dimensions and bases.
    Info(ModelArgs),
    /// Build the category and check every functor of the model.
    Check(ModelArgs),
}

#[derive(Args, Debug)]
pub struct GradingSel {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Grading name; all gradings of the model when absent.
    #[arg(long)]
    pub grading: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum GradingCmd {
    /// Check identities and composites against the degrees.
    Validate(GradingSel),
    /// Closed-walk degrees at the base object.
    Connected(GradingSel),
    /// Push a grading forward along a surjective group map.
    Quotient {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        grading: String,
        /// Target group, e.g. `C3`, `Z/4`, `Z^2+Z/2`.
        #[arg(long)]
        target: String,
        /// Images of the source generators, `;`-separated coordinate lists.
        #[arg(long)]
        images: String,
        /// Name of the new grading.
        #[arg(long, default_value = "quotient")]
        name: String,
        /// Write the model with the new grading added.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SchurCmd {
    /// Schurian morphisms, Schurian-generated closure, constriction, homogeneity partitions.
    Analyze(ModelArgs),
    /// Universal grading of a constricted Schurian-generated presentation.
    Universal {
        #[command(flatten)]
        model: ModelArgs,
        /// Write the model with the universal grading added.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SmashCmd {
    /// Build the smash product of a grading by a finite group.
    Build {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        grading: String,
        /// Write the smash category as JSON.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Covering and Galois checks, optionally for the covering morphism of a grading morphism.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        grading: String,
        #[arg(long)]
        morphism: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum MorphCmd {
    /// Verify the grading morphisms of the model.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        /// Morphism name; all morphisms when absent.
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Endomorphisms of a thin grading and the subgroup they fix.
    Fix {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        grading: String,
    },
    /// Morphisms from a candidate grading to a finite family.
    UniversalCheck {
        #[command(flatten)]
        model: ModelArgs,
        /// Candidate grading; `universal` computes it.
        #[arg(long)]
        grading: String,
        /// Family of pushforwards of the candidate to C_1, ..., C_n.
        #[arg(long)]
        quotients: Option<u64>,
        /// Family of every connected constricted grading by these groups, e.g. `C2,C3`.
        #[arg(long)]
        oracle: Option<String>,
        /// Family of named model gradings, comma-separated.
        #[arg(long)]
        against: Option<String>,
    },
    /// Group of coherent families over a family of the model.
    Family {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        family: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCmd {
    /// Every connected path-basis grading by a finite group.
    Enumerate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Pi1Cmd {
    /// Generators and relators from a spanning tree and the homogeneity partitions.
    Presentation(ModelArgs),
}

#[derive(Subcommand, Debug)]
pub enum ExamplesCmd {
    /// Names of the built-in examples.
    List,
    /// Print a built-in model file.
    Show { name: String },
    /// Run the checks of one example, or all of them.
    Run {
        #[arg(long, conflicts_with = "name")]
        all: bool,
        name: Option<String>,
    },
}

/// Parses `argv` (without the program name) and runs the command.
pub fn run<S: AsRef<str>>(argv: &[S]) -> Result<Report, CliError> {
    let args = std::iter::once("kgrad").chain(argv.iter().map(AsRef::as_ref));
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CliError::Help(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    })?;
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Cat { cmd: CatCmd::Info(m) } => cat_info(m),
        Command::Cat { cmd: CatCmd::Check(m) } => cat_check(m),
        Command::Grading { cmd: GradingCmd::Validate(s) } => grading_validate(s),
        Command::Grading { cmd: GradingCmd::Connected(s) } => grading_connected(s),
        Command::Grading { cmd: GradingCmd::Quotient { model, grading, target, images, name, out } } => {
            grading_quotient(model, grading, target, images, name, out.as_deref())
        }
        Command::Schur { cmd: SchurCmd::Analyze(m) } => schur_analyze(m),
        Command::Schur { cmd: SchurCmd::Universal { model, out } } => schur_universal(model, out.as_deref()),
        Command::Smash { cmd: SmashCmd::Build { model, grading, out } } => smash_build(model, grading, out.as_deref()),
        Command::Smash { cmd: SmashCmd::Verify { model, grading, morphism } } => {
            smash_verify(model, grading, morphism.as_deref())
        }
        Command::Morph { cmd: MorphCmd::Verify { model, morphism } } => morph_verify(model, morphism.as_deref()),
        Command::Morph { cmd: MorphCmd::Fix { model, grading } } => morph_fix(model, grading),
        Command::Morph { cmd: MorphCmd::UniversalCheck { model, grading, quotients, oracle, against } } => {
            morph_universal_check(model, grading, *quotients, oracle.as_deref(), against.as_deref())
        }
        Command::Morph { cmd: MorphCmd::Family { model, family } } => morph_family(model, family),
        Command::Oracle { cmd: OracleCmd::Enumerate { model, group } } => oracle_enumerate(model, group),
        Command::Pi1 { cmd: Pi1Cmd::Presentation(m) } => pi1_presentation(m),
        Command::Examples { cmd: ExamplesCmd::List } => Ok(examples_list()),
        Command::Examples { cmd: ExamplesCmd::Show { name } } => examples_show(name),
        Command::Examples { cmd: ExamplesCmd::Run { all, name } } => examples_run(*all, name.as_deref()),
    }?;
    report.elapsed = start.elapsed();
    Ok(report)
}

fn load(m: &ModelArgs) -> Result<(Model, usize), CliError> {
    let path = std::path::Path::new(&m.model);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| ModelError::Io { path: m.model.clone(), message: e.to_string() })?
    } else if let Some(entry) = corpus::find(&m.model) {
        entry.json.to_string()
    } else {
        return Err(CliError::Usage(format!("'{}' is neither a model file nor a built-in example", m.model)));
    };
    let file = parse_model_str(&text)?;
    let mut overrides = BTreeMap::new();
    for p in &m.params {
        let (k, v) = p.split_once('=').ok_or_else(|| CliError::Usage(format!("expected NAME=VALUE, got '{p}'")))?;
        overrides.insert(k.trim().to_string(), rational(v)?);
    }
    if let Some(q) = &m.q {
        overrides.insert("q".to_string(), rational(q)?);
    }
    let model = resolve(&file, &overrides)?;
    let base = match &m.base {
        None => 0,
        Some(b) => model.vertex(b).ok_or_else(|| CliError::Usage(format!("no object named '{b}'")))?,
    };
    Ok((model, base))
}

fn rational(s: &str) -> Result<Scalar, CliError> {
    parse_rational(s).ok_or_else(|| CliError::Usage(format!("'{s}' is not a rational number")))
}

/// Parses `C3`, `Z`, `Z^2`, `Z/4`, `0` and sums of these joined by `+`.
pub fn parse_group(s: &str) -> Result<AbelianGroup, CliError> {
    let bad = || CliError::Usage(format!("cannot read group '{s}'"));
    let mut rank = 0;
    let mut orders = Vec::new();
    for part in s.split(['+', '⊕']).map(str::trim) {
        if part == "0" || part == "1" || part.eq_ignore_ascii_case("trivial") {
            continue;
        }
        if part == "Z" {
            rank += 1;
        } else if let Some(k) = part.strip_prefix("Z^") {
            rank += k.parse::<usize>().map_err(|_| bad())?;
        } else if let Some(n) = part.strip_prefix("Z/").or_else(|| part.strip_prefix('C')) {
            let n: u64 = n.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            if n > 1 {
                orders.push(n);
            }
        } else {
            return Err(bad());
        }
    }
    Ok(AbelianGroup::from_orders(rank, &orders))
}

fn parse_elements(g: &AbelianGroup, s: &str) -> Result<Vec<GroupElement>, CliError> {
    s.split(';')
        .map(|e| {
            let coords = e
                .split(',')
                .filter(|c| !c.trim().is_empty())
                .map(|c| c.trim().parse::<num_bigint::BigInt>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Usage(format!("cannot read element '{e}'")))?;
            if coords.len() != g.num_generators() {
                return Err(CliError::Usage(format!("element '{e}' needs {} coordinates in {g}", g.num_generators())));
            }
            Ok(g.reduce(&coords))
        })
        .collect()
}

fn grading_named(model: &Model, name: &str, base: usize) -> Result<Grading, CliError> {
    if let Some(x) = model.grading(name) {
        return Ok(x.clone());
    }
    if name == "universal" {
        return universal_grading(&model.category, base).map(|u| u.grading).map_err(compute);
    }
    Err(CliError::Usage(format!("model has no grading named '{name}'")))
}

fn selected<'a>(model: &'a Model, name: &'a Option<String>) -> Result<Vec<(&'a str, &'a Grading)>, CliError> {
    match name {
        Some(n) => {
            let x = model.grading(n).ok_or_else(|| CliError::Usage(format!("model has no grading named '{n}'")))?;
            Ok(vec![(n.as_str(), x)])
        }
        None => Ok(model
            .gradings
            .iter()
            .filter(|(n, _)| n != "trivial" || model.gradings.len() == 1)
            .map(|(n, x)| (n.as_str(), x))
            .collect()),
    }
}

fn pair(model: &Model, x: usize, y: usize) -> String {
    format!("{}->{}", model.category.object_name(x), model.category.object_name(y))
}

fn mu_images(mu: &GroupHom) -> Vec<String> {
    mu.images().iter().map(ToString::to_string).collect()
}

fn cat_info(m: &ModelArgs) -> Result<Report, CliError> {
    let (model, _) = load(m)?;
    let cat = &model.category;
    let q = cat.quiver();
    let mut r = Report::new("cat info");
    r.line(format!(
        "{}: {} objects, {} arrows over {}, path bound {}",
        model.file.name,
        cat.num_objects(),
        q.arrows().len(),
        cat.field(),
        cat.bound()
    ));
    for (k, v) in &model.params {
        r.line(format!("parameter {k} = {}", kgrad::linrep::format_scalar(v)));
    }
    for rel in cat.relations() {
        r.line(format!("relation {}", rel.display(q)));
    }
    let mut dims = serde_json::Map::new();
    let mut bases = serde_json::Map::new();
    for (x, y) in cat.hom_pairs() {
        let h = cat.hom(x, y);
        let basis: Vec<String> = (0..h.dim()).map(|i| h.basis_path(i).display(q)).collect();
        if h.dim() > 0 {
            r.line(format!("hom({}) dim {}: {}", pair(&model, x, y), h.dim(), basis.join(", ")));
        }
        dims.insert(pair(&model, x, y), h.dim().into());
        bases.insert(pair(&model, x, y), basis.into());
    }
    r.line(format!("total dimension {}", cat.total_dimension()));
    r.set("name", model.file.name.clone());
    r.set("field", cat.field().to_string());
    r.set("bound", cat.bound());
    r.set("objects", q.vertices().to_vec());
    r.set("dims", dims);
    r.set("basis", bases);
    r.set("total_dimension", cat.total_dimension());
    Ok(r)
}

fn cat_check(m: &ModelArgs) -> Result<Report, CliError> {
    let (model, _) = load(m)?;
    let cat = &model.category;
    let mut r = Report::new("cat check");
    r.verdict("category", true, format!("relations admissible, paths of length {} vanish", cat.bound()));
    let mut functors = serde_json::Map::new();
    for (name, f) in &model.functors {
        let iso = f.is_isomorphism();
        r.verdict(format!("functor {name}"), true, "respects identities and composition");
        r.line(format!("functor {name}: {}", if iso { "isomorphism" } else { "not invertible" }));
        functors.insert(name.clone(), json!({ "isomorphism": iso, "identity": f.is_identity() }));
    }
    r.set("functors", functors);
    Ok(r)
}

fn grading_validate(s: &GradingSel) -> Result<Report, CliError> {
    let (model, _) = load(&s.model)?;
    let mut r = Report::new("grading validate");
    let mut out = serde_json::Map::new();
    for (name, x) in selected(&model, &s.grading)? {
        let v = validate_grading(x);
        let detail = match v.violations.first() {
            None => format!("graded by {}", x.group()),
            Some(first) => format!("{} violation(s), first: {first}", v.violations.len()),
        };
        r.verdict(format!("grading {name} is valid"), v.is_valid(), detail);
        out.insert(
            name.to_string(),
            json!({ "valid": v.is_valid(), "group": x.group().to_string(), "thin": x.is_thin(), "violations": v.violations.len() }),
        );
    }
    if let Some(n) = &s.grading {
        r.set("valid", out[n]["valid"].clone());
    }
    r.set("gradings", out);
    Ok(r)
}

fn grading_connected(s: &GradingSel) -> Result<Report, CliError> {
    let (model, base) = load(&s.model)?;
    let mut r = Report::new("grading connected");
    let mut out = serde_json::Map::new();
    for (name, x) in selected(&model, &s.grading)? {
        let degrees = closed_walk_subgroup(x, base).map_err(compute)?;
        let (image, _) = generated_subgroup(x.group(), &degrees);
        let connected = is_connected_grading(x, base).map_err(compute)?;
        let shown: Vec<String> = degrees.iter().map(ToString::to_string).collect();
        r.line(format!(
            "{name}: closed walks at {} have degrees {}",
            model.category.object_name(base),
            shown.join(" ")
        ));
        r.verdict(
            format!("grading {name} is connected"),
            connected,
            format!("closed-walk degrees generate {image} inside {}", x.group()),
        );
        let mut walks = serde_json::Map::new();
        let gi = model.grading_index(name);
        for (wn, g, w) in &model.walks {
            if Some(*g) == gi {
                let d = walk_degree(x, w).map_err(compute)?;
                r.line(format!("walk {wn} = {}: degree {d}", w.display(x)));
                walks.insert(wn.clone(), d.to_string().into());
            }
        }
        out.insert(
            name.to_string(),
            json!({ "connected": connected, "group": x.group().to_string(), "image": image.to_string(), "closed_walk_degrees": shown, "walks": walks }),
        );
    }
    if let Some(n) = &s.grading {
        r.set("connected", out[n]["connected"].clone());
        r.set("image", out[n]["image"].clone());
    }
    r.set("gradings", out);
    Ok(r)
}

fn grading_quotient(
    m: &ModelArgs,
    grading: &str,
    target: &str,
    images: &str,
    name: &str,
    out: Option<&std::path::Path>,
) -> Result<Report, CliError> {
    let (model, base) = load(m)?;
    let x = grading_named(&model, grading, base)?;
    let h = parse_group(target)?;
    let imgs = parse_elements(&h, images)?;
    let pi = GroupHom::new(x.group().clone(), h, imgs).map_err(compute)?;
    let y = quotient_grading(&x, &pi).map_err(compute)?;
    let valid = validate_grading(&y);
    let connected = is_connected_grading(&y, base).map_err(compute)?;
    let mut r = Report::new("grading quotient");
    r.line(format!("{name}: {grading} pushed to {}", y.group()));
    r.verdict(format!("grading {name} is valid"), valid.is_valid(), valid.to_string());
    r.verdict(format!("grading {name} is connected"), connected, "");
    let gj = grading_json(name, &y);
    r.set("grading", serde_json::to_value(&gj).expect("grading serializes"));
    r.set("group", y.group().to_string());
    if let Some(path) = out {
        let mut file = model.file.clone();
        file.gradings.push(gj);
        write_file(path, &emit_model(&file))?;
        r.line(format!("wrote {}", path.display()));
    }
    Ok(r)
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Compute(format!("cannot write {}: {e}", path.display())))
}

fn schur_analyze(m: &ModelArgs) -> Result<Report, CliError> {
    let (model, _) = load(m)?;
    let cat = &model.category;
    let q = cat.quiver();
    let mut r = Report::new("schur analyze");
    let schurian: Vec<String> = schurian_morphisms(cat).iter().map(|&(x, y)| pair(&model, x, y)).collect();
    r.line(format!(
        "Schurian hom-spaces: {}",
        if schurian.is_empty() { "none".to_string() } else { schurian.join(", ") }
    ));
    let closure = sg_closure(cat);
    let uncovered: Vec<String> = closure.uncovered.iter().map(|&(x, y)| pair(&model, x, y)).collect();
    let outside: Vec<String> = q
        .arrows()
        .iter()
        .enumerate()
        .filter(|(a, ar)| {
            let p = kgrad::Path::arrow(q, *a);
            !closure.contains(cat, ar.src, ar.tgt, &cat.path_morphism(&p).coords)
        })
        .map(|(_, ar)| ar.id.clone())
        .collect();
    if closure.is_sg {
        r.line("Schurian generated".to_string());
    } else {
        r.line(format!("not Schurian generated: closure misses {}", uncovered.join(", ")));
        r.line(format!("arrows outside the closure: {}", outside.join(", ")));
    }
    let c = is_constricted(cat);
    match &c.witness {
        None => r.line("constricted".to_string()),
        Some((a, p)) => r.line(format!("not constricted: {p} is parallel to {a}")),
    }
    let mut partitions = serde_json::Map::new();
    for (x, y) in cat.hom_pairs() {
        let h = cat.hom(x, y);
        if h.ideal().rank() == 0 {
            continue;
        }
        match homogeneity_partition(cat, x, y, DEFAULT_PATH_CAP) {
            Ok(part) => {
                let blocks: Vec<Vec<String>> =
                    part.blocks.iter().map(|b| b.iter().map(|&k| h.paths()[k].display(q)).collect()).collect();
                let shown: Vec<String> = blocks.iter().map(|b| format!("{{{}}}", b.join(", "))).collect();
                r.line(format!("homogeneity partition of hom({}): {}", pair(&model, x, y), shown.join(" ")));
                partitions.insert(pair(&model, x, y), json!(blocks));
            }
            Err(e) => {
                r.line(format!("homogeneity partition of hom({}): {e}", pair(&model, x, y)));
                partitions.insert(pair(&model, x, y), Value::String(e.to_string()));
            }
        }
    }
    r.set("schurian", schurian.clone());
    r.set("schurian_count", schurian.len());
    r.set("sg", closure.is_sg);
    r.set("uncovered", uncovered);
    r.set("arrows_outside_closure", outside);
    r.set("constricted", c.constricted);
    r.set("partitions", partitions);
    Ok(r)
}

fn presentation_json(p: &GroupPresentation) -> Value {
    let relators: Vec<Vec<Value>> = p
        .relators()
        .iter()
        .map(|w| w.iter().map(|l| json!([p.generators()[l.generator], if l.inverse { -1 } else { 1 }])).collect())
        .collect();
    json!({ "generators": p.generators(), "relators": relators })
}

fn describe_presentation(r: &mut Report, model: &Model, g: &PresentationGroup) {
    let q = model.category.quiver();
    let tree: Vec<&str> = g.tree_arrows.iter().map(|&a| q.arrows()[a].id.as_str()).collect();
    r.line(format!("spanning tree arrows: {}", if tree.is_empty() { "none".into() } else { tree.join(", ") }));
    r.line(format!("presentation {}", g.presentation));
    r.line(format!("abelianization {}", g.abelianization.group));
    r.set("presentation", presentation_json(&g.presentation));
    r.set("tree_arrows", tree);
    r.set("abelianization", g.abelianization.group.to_string());
}

fn schur_universal(m: &ModelArgs, out: Option<&std::path::Path>) -> Result<Report, CliError> {
    let (model, base) = load(m)?;
    let mut r = Report::new("schur universal");
    match universal_grading(&model.category, base) {
        Err(e) => {
            r.verdict("universal grading", false, e.to_string());
        }
        Ok(u) => {
            describe_presentation(&mut r, &model, &u.group);
            let gj = grading_json("universal", &u.grading);
            r.line(format!("universal grading by {}", u.grading.group()));
            for (a, d) in gj.arrow_degrees.iter().flatten() {
                let coords: Vec<String> = d.torsion.iter().chain(&d.free).map(ToString::to_string).collect();
                r.line(format!("  deg {a} = ({})", coords.join(",")));
            }
            r.verdict("universal grading", true, format!("valid and connected, group {}", u.grading.group()));
            r.set("group", u.grading.group().to_string());
            r.set("grading", serde_json::to_value(&gj).expect("grading serializes"));
            if let Some(path) = out {
                let mut file = model.file.clone();
                file.gradings.retain(|g| g.name != "universal");
                file.gradings.push(gj);
                write_file(path, &emit_model(&file))?;
                r.line(format!("wrote {}", path.display()));
            }
        }
    }
    Ok(r)
}

fn pi1_presentation(m: &ModelArgs) -> Result<Report, CliError> {
    let (model, base) = load(m)?;
    let g = presentation_group(&model.category, base, DEFAULT_PATH_CAP).map_err(compute)?;
    let mut r = Report::new("pi1 presentation");
    describe_presentation(&mut r, &model, &g);
    Ok(r)
}

fn smash_build(m: &ModelArgs, grading: &str, out: Option<&std::path::Path>) -> Result<Report, CliError> {
    let (model, base) = load(m)?;
    let x = grading_named(&model, grading, base)?;
    let s = build_smash(&x).map_err(compute)?;
    let mut r = Report::new("smash build");
    let labels: Vec<String> = (0..s.num_objects()).map(|o| s.object_label(o)).collect();
    r.line(format!("{} objects: {}", s.num_objects(), labels.join(" ")));
    let mut homs = Vec::new();
    for o1 in 0..s.num_objects() {
        for o2 in 0..s.num_objects() {
            if s.dim(o1, o2) > 0 {
                let basis: Vec<String> = s.hom(o1, o2).iter().map(|f| x.label(f)).collect();
                r.line(format!("hom({}, {}) dim {}: {}", labels[o1], labels[o2], s.dim(o1, o2), basis.join(", ")));
                homs.push(json!({ "src": labels[o1], "tgt": labels[o2], "basis": basis }));
            }
        }
    }
    r.line(format!("total dimension {}", s.total_dimension()));
    r.set("objects", labels);
    r.set("homs", homs);
    r.set("total_dimension", s.total_dimension());
    if let Some(path) = out {
        let mut text = serde_json::to_string_pretty(&Value::Object(r.data.clone())).expect("serializes");
        text.push('\n');
        write_file(path, &text)?;
        r.line(format!("wrote {}", path.display()));
    }
    Ok(r)
}

fn smash_verify(m: &ModelArgs, grading: &str, morphism: Option<&str>) -> Result<Report, CliError> {
    let (model, base) = load(m)?;
    let x = grading_named(&model, grading, base)?;
    let s = build_smash(&x).map_err(compute)?;
    let mut r = Report::new("smash verify");
    r.line(format!(
        "smash product by {}: {} objects, total dimension {}",
        x.group(),
        s.num_objects(),
        s.total_dimension()
    ));
    let cov = verify_covering(&s);
    r.verdict("stars project bijectively", cov.is_covering(), cov.mismatches.first().cloned().unwrap_or_default());
    let gal = galois_report(&s).map_err(compute)?;
    r.verdict("deck transformations are functors", gal.functorial, "");
    r.verdict("deck action is free", gal.free, "");
    r.verdict("deck group is transitive on fibres", gal.fibre_transitive, "");
    r.set("objects", s.num_objects());
    r.set("total_dimension", s.total_dimension());
    r.set("covering", cov.is_covering());
    r.set("galois", gal.is_galois());
    if let Some(name) = morphism {
        let mm = model
            .morphisms
            .iter()
            .find(|mm| mm.name == name)
            .ok_or_else(|| CliError::Usage(format!("model has no morphism named '{name}'")))?;
        let (gx, gy) = (&model.gradings[mm.source].1, &model.gradings[mm.target].1);
        if gx != &x {
            return Err(CliError::Usage(format!("morphism '{name}' does not start at grading '{grading}'")));
        }
        let sy = if gy == &x { s.clone() } else { build_smash(gy).map_err(compute)? };
        let conn = ConnectorFamily::trivial_degree(gx, base).map_err(compute)?;
        match covering_morphism_from_grading_morphism(&s, &sy, &mm.mu, &mm.witness, &conn) {
            Err(e) => r.verdict(format!("covering morphism of {name}"), false, e.to_string()),
            Ok(h) => {
                r.verdict(format!("covering morphism of {name}"), true, "commutes with the projections");
                match lambda_map(&h, base) {
                    Err(e) => r.verdict("deck map is a group map", false, e.to_string()),
                    Ok(lam) => {
                        r.verdict(
                            "deck map is a group map",
                            true,
                            format!("lambda = {}", mu_images(&lam.lambda).join(" ")),
                        );
                        r.verdict(
                            "lambda equals the induced group map",
                            lam.equation_holds,
                            format!("mu_J = {}", mu_images(&lam.mu_j).join(" ")),
                        );
                        r.set("lambda", mu_images(&lam.lambda));
                        r.set("mu_j", mu_images(&lam.mu_j));
                        if gx == gy {
                            let composite = h.compose(&h).map_err(compute)?;
                            let lam2 = lambda_map(&composite, base).map_err(compute)?;
                            let expect = lam.lambda.compose(&lam.lambda).map_err(compute)?;
                            r.verdict(
                                "lambda respects composition",
                                lam2.lambda == expect,
                                format!("lambda of the square = {}", mu_images(&lam2.lambda).join(" ")),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

fn morph_verify(m: &ModelArgs, name: Option<&str>) -> Result<Report, CliError> {
    let (model, base) = load(m)?;
    let mut r = Report::new("morph verify");
    let chosen: Vec<_> = model.morphisms.iter().filter(|mm| name.is_none_or(|n| mm.name == n)).collect();
    if let (Some(n), true) = (name, chosen.is_empty()) {
        return Err(CliError::Usage(format!("model has no morphism named '{n}'")));
    }
    let mut out = serde_json::Map::new();
    for mm in chosen {
        let (x, y) = (&model.gradings[mm.source].1, &model.gradings[mm.target].1);
        let verdicts: Vec<Result<(), String>> = (0..model.category.num_objects())
            .map(|b| verify_grading_morphism(x, y, &mm.mu, &mm.witness, b).map(|_| ()).map_err(|e| e.to_string()))
            .collect();
        let at_base = verdicts[base].clone();
        let consistent = verdicts.iter().all(|v| v.is_ok() == at_base.is_ok());
        r.verdict(
            format!("morphism {}", mm.name),
            at_base.is_ok(),
            at_base.clone().err().unwrap_or_else(|| format!("mu = {}", mu_images(&mm.mu).join(" "))),
        );
        r.verdict(format!("morphism {}: same verdict from every base object", mm.name), consistent, "");
        out.insert(mm.name.clone(), json!({ "verified": at_base.is_ok(), "mu": mu_images(&mm.mu) }));
    }
    r.set("morphisms", out);
    Ok(r)
}

fn morph_fix(m: &ModelArgs, grading: &str) -> Result<Report, CliError> {
    let (model, base) = load(m)?;
    let x = grading_named(&model, grading, base)?;
    let endos = enumerate_thin_morphisms(&x, &x, base).map_err(compute)?;
    let (fix, _) = compute_fix(&x, base).map_err(compute)?;
    let mut r = Report::new("morph fix");
    let mut mus = Vec::new();
    for e in &endos {
        let imgs = mu_images(&e.mu);
        r.line(format!("endomorphism mu = {}", imgs.join(" ")));
        for (from, to) in describe_witness(e) {
            r.line(format!("  {from} -> {to}"));
        }
        mus.push(imgs.join(" "));
    }
    r.line(format!("Fix = {fix}"));
    r.set("endomorphisms", mus);
    r.set("fix", fix.to_string());
    Ok(r)
}

fn morph_universal_check(
    m: &ModelArgs,
    grading: &str,
    quotients: Option<u64>,
    oracle: Option<&str>,
    against: Option<&str>,
) -> Result<Report, CliError> {
    let (model, base) = load(m)?;
    let u = grading_named(&model, grading, base)?;
    let given = [quotients.is_some(), oracle.is_some(), against.is_some()].iter().filter(|b| **b).count();
    if given != 1 {
        return Err(CliError::Usage("give exactly one of --quotients, --oracle, --against".into()));
    }
    let mut family = Vec::new();
    let mut names = Vec::new();
    if let Some(n) = quotients {
        let gens = u.group().generators();
        if gens.len() != 1 {
            return Err(CliError::Usage("--quotients needs a cyclic structural group".into()));
        }
        for k in 1..=n {
            let c = AbelianGroup::cyclic(k);
            let image = c.generators().first().cloned().unwrap_or_else(|| c.zero());
            let pi = GroupHom::new(u.group().clone(), c, vec![image]).map_err(compute)?;
            family.push(quotient_grading(&u, &pi).map_err(compute)?);
            names.push(format!("C{k}"));
        }
    }
    if let Some(groups) = oracle {
        for gname in groups.split(',').map(str::trim) {
            let g = parse_group(gname)?;
            let found =
                enumerate_constricted_gradings(&model.category, &g, base, DEFAULT_GRADING_CAP).map_err(compute)?;
            for (i, x) in found.into_iter().enumerate() {
                family.push(x);
                names.push(format!("{gname}#{i}"));
            }
        }
    }
    if let Some(list) = against {
        for n in list.split(',').map(str::trim) {
            family.push(grading_named(&model, n, base)?);
            names.push(n.to_string());
        }
    }
    let report = verify_universal_property(&u, &family, base).map_err(compute)?;
    let mut r = Report::new("morph universal-check");
    let mut entries = Vec::new();
    for (n, e) in names.iter().zip(&report.entries) {
        let mus: Vec<String> = e.mus.iter().map(|mu| mu_images(mu).join(" ")).collect();
        r.line(format!("{n} ({}): {} morphism(s) {}", e.group, mus.len(), mus.join(" | ")));
        entries.push(json!({ "name": n, "group": e.group.to_string(), "count": mus.len(), "mus": mus }));
    }
    let missing: Vec<&str> =
        names.iter().zip(&report.entries).filter(|(_, e)| !e.exists()).map(|(n, _)| n.as_str()).collect();
    let multiple: Vec<&str> =
        names.iter().zip(&report.entries).filter(|(_, e)| e.mus.len() > 1).map(|(n, _)| n.as_str()).collect();
    r.verdict(
        "a morphism to every member",
        report.all_exist(),
        if missing.is_empty() {
            format!("{} members", family.len())
        } else {
            format!("none to {}", missing.join(", "))
        },
    );
    r.verdict(
        "a unique morphism to every member",
        report.all_unique(),
        if multiple.is_empty() { String::new() } else { format!("several to {}", multiple.join(", ")) },
    );
    if oracle.is_some() && u.is_thin() && family.iter().all(Grading::is_thin) {
        let mut worst = (0, String::new());
        for (i, x) in family.iter().enumerate() {
            for (j, y) in family.iter().enumerate() {
                let k = enumerate_thin_morphisms(x, y, base).map_err(compute)?.len();
                if k > worst.0 {
                    worst = (k, format!("{} -> {}", names[i], names[j]));
                }
            }
        }
        r.verdict(
            "at most one morphism between any two members",
            worst.0 <= 1,
            if worst.0 > 1 { format!("{} morphisms {}", worst.0, worst.1) } else { String::new() },
        );
        r.set("max_morphisms_between_members", worst.0);
    }
    r.set("members", family.len());
    r.set("entries", entries);
    r.set("versal", report.all_exist());
    r.set("universal", report.is_universal());
    Ok(r)
}

fn morph_family(m: &ModelArgs, name: &str) -> Result<Report, CliError> {
    let (model, base) = load(m)?;
    let fam = model
        .families
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| CliError::Usage(format!("model has no family named '{name}'")))?;
    let mut r = Report::new("morph family");
    let gradings: Vec<Grading> = fam.gradings.iter().map(|&i| model.gradings[i].1.clone()).collect();
    let mut family = GradingFamily::new(gradings);
    for &k in &fam.morphisms {
        let mm = &model.morphisms[k];
        let (x, y) = (&model.gradings[mm.source].1, &model.gradings[mm.target].1);
        match verify_grading_morphism(x, y, &mm.mu, &mm.witness, base) {
            Err(e) => r.verdict(format!("morphism {}", mm.name), false, e.to_string()),
            Ok(v) => {
                r.verdict(format!("morphism {}", mm.name), true, format!("mu = {}", mu_images(&mm.mu).join(" ")));
                let from = fam.gradings.iter().position(|&g| g == mm.source).expect("checked at load");
                let to = fam.gradings.iter().position(|&g| g == mm.target).expect("checked at load");
                family.add_morphism(from, to, v).map_err(compute)?;
            }
        }
    }
    let members: Vec<&str> = fam.gradings.iter().map(|&i| model.gradings[i].0.as_str()).collect();
    for (name, x) in members.iter().zip(&family.gradings) {
        r.line(format!("{name}: graded by {}", x.group()));
    }
    // pairs of members without any group map between them
    let mut trivial = Vec::new();
    for (i, a) in family.gradings.iter().enumerate() {
        for (j, b) in family.gradings.iter().enumerate() {
            if i != j && !a.group().is_trivial() && hom_space(a.group(), b.group()).group.is_trivial() {
                r.line(format!("Hom({}, {}) = 0: no morphism {} -> {}", a.group(), b.group(), members[i], members[j]));
                trivial.push(format!("{} -> {}", members[i], members[j]));
            }
        }
    }
    let limit = coherent_family_group(&family).map_err(compute)?;
    r.line(format!("coherent families form {}", limit.group));
    r.set("limit", limit.group.to_string());
    r.set("trivial_homs", trivial);
    Ok(r)
}

fn oracle_enumerate(m: &ModelArgs, group: &str) -> Result<Report, CliError> {
    let (model, base) = load(m)?;
    let g = parse_group(group)?;
    let found = enumerate_constricted_gradings(&model.category, &g, base, DEFAULT_GRADING_CAP).map_err(compute)?;
    let mut r = Report::new("oracle enumerate");
    let mut list = Vec::new();
    for (i, x) in found.iter().enumerate() {
        let gj = grading_json(&format!("{group}#{i}"), x);
        let degrees: BTreeMap<String, String> = gj
            .arrow_degrees
            .clone()
            .unwrap_or_default()
            .into_iter()
            .map(|(a, e)| (a, format!("{:?}", [e.torsion, e.free].concat())))
            .collect();
        let shown: Vec<String> = degrees.iter().map(|(a, d)| format!("{a}={d}")).collect();
        r.line(format!("{}: {}", gj.name, shown.join(" ")));
        list.push(serde_json::to_value(&gj).expect("grading serializes"));
    }
    r.line(format!("{} connected gradings by {g}", found.len()));
    r.set("count", found.len());
    r.set("gradings", list);
    Ok(r)
}

fn examples_list() -> Report {
    let mut r = Report::new("examples list");
    for e in corpus::entries() {
        r.line(format!("{:<10} {}", e.name, e.summary));
    }
    r.set("names", corpus::entries().iter().map(|e| e.name).collect::<Vec<_>>());
    r
}

fn examples_show(name: &str) -> Result<Report, CliError> {
    let e = corpus::find(name).ok_or_else(|| CliError::Usage(format!("no example named '{name}'")))?;
    let file = parse_model_str(e.json)?;
    let mut r = Report::new("examples show");
    r.line(emit_model(&file));
    Ok(r)
}

fn examples_run(all: bool, name: Option<&str>) -> Result<Report, CliError> {
    let chosen: Vec<&corpus::Entry> = match (all, name) {
        (true, _) | (false, None) => corpus::entries().iter().collect(),
        (false, Some(n)) => vec![corpus::find(n).ok_or_else(|| CliError::Usage(format!("no example named '{n}'")))?],
    };
    let mut r = Report::new("examples run");
    for e in chosen {
        for c in e.checks {
            let label = format!("{} [{}] {} = {}", e.name, c.args.join(" "), c.key, c.expected);
            match run(c.args) {
                Err(err) => r.verdict(label, false, err.to_string()),
                Ok(out) => match out.get(c.key) {
                    None => r.verdict(label, false, "key missing from the report"),
                    Some(v) if plain(v) == c.expected => r.verdict(label, true, ""),
                    Some(v) => r.verdict(label, false, format!("got {}", plain(v))),
                },
            }
        }
    }
    Ok(r)
}
