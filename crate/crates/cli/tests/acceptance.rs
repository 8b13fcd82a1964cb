//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or runs past its time budget.

use std::collections::{BTreeMap, BTreeSet};
use std::panic;
use std::sync::Arc;
use std::time::{Duration, Instant};

use kgrad::grading::{
    is_connected_grading, quotient_grading, validate_grading, walk_degree, BasisRef, ConnectorFamily, Grading, Walk,
};
use kgrad::grpkit::{hom_space, smith_normal_form, AbelianGroup, GroupElement, GroupHom, IntMatrix};
use kgrad::linrep::{build_category, FieldSpec, Functor, LinComb, Path, PresentedCategory, Quiver, Scalar};
use kgrad::morph::{
    coherent_family_group, compute_fix, enumerate_constricted_gradings, enumerate_thin_morphisms,
    verify_grading_morphism, verify_universal_property, GradingFamily, DEFAULT_GRADING_CAP,
};
use kgrad::schur::{
    homogeneity_partition, presentation_group, schurian_morphisms, sg_closure, universal_grading, DEFAULT_PATH_CAP,
};
use kgrad::smash::{build_smash, covering_morphism_from_grading_morphism, galois_report, lambda_map, verify_covering};
use kgrad_cli::{corpus, parse_model_str, resolve, Model, ModelFile};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

fn corpus_file(name: &str) -> ModelFile {
    parse_model_str(corpus::find(name).expect("corpus entry").json).expect("corpus parses")
}

fn with_q(q: i64) -> BTreeMap<String, Scalar> {
    BTreeMap::from([("q".to_string(), Scalar::from_integer(q.into()))])
}

fn corpus_model(name: &str) -> Model {
    resolve(&corpus_file(name), &BTreeMap::new()).expect("corpus resolves")
}

fn bq_suite() {
    let file = corpus_file("bq");
    for q in 0..=2 {
        let m = resolve(&file, &with_q(q)).unwrap();
        let cat = &m.category;
        let (x, z, zz) = (m.vertex("x").unwrap(), m.vertex("z").unwrap(), m.vertex("z'").unwrap());
        assert_eq!(cat.dim(x, z), 2, "q = {q}");
        assert_eq!(cat.dim(x, zz), 1, "q = {q}");

        let u = m.grading("U").unwrap();
        assert!(validate_grading(u).is_valid(), "U invalid at q = {q}");
        assert_eq!(u.group(), &AbelianGroup::free(1));
        for b in 0..cat.num_objects() {
            assert!(is_connected_grading(u, b).unwrap(), "U not connected at q = {q}");
        }
        // the square gamma against beta*alpha has degree 1 in U
        let square = &m.walks.iter().find(|w| w.0 == "square").unwrap().2;
        assert_eq!(walk_degree(u, square).unwrap(), u.group().element_i64(&[1]));

        for q2 in 0..=2 {
            let mut f = file.clone();
            f.functors[0].target_params.insert("q".into(), q2.to_string());
            let m2 = resolve(&f, &with_q(q)).unwrap();
            let shift = &m2.functors.iter().find(|(n, _)| n == "shift").unwrap().1;
            assert!(shift.is_isomorphism(), "shift {q} -> {q2} not invertible");
            assert!(shift.inverse().is_some());
            // F preserves the relation of B_q, and B_q' satisfies its own
            let (src, tgt) = (shift.source(), shift.target());
            let img = |id: &str| shift.apply(&src.path_morphism(&Path::from_ids(src.quiver(), &[id]).unwrap()));
            let dg = tgt.compose(&img("delta"), &img("gamma")).unwrap();
            let dba = tgt.compose(&img("delta"), &tgt.compose(&img("beta"), &img("alpha")).unwrap()).unwrap();
            assert_eq!(dg.coords.len(), 1);
            assert_eq!(dg.coords[0], Scalar::from_integer(q.into()) * &dba.coords[0], "image of the relation of B_{q}");
            assert!(!dba.is_zero());
            let path = |ids: &[&str]| tgt.path_morphism(&Path::from_ids(tgt.quiver(), ids).unwrap());
            let (dg2, dba2) = (path(&["delta", "gamma"]), path(&["delta", "beta", "alpha"]));
            assert_eq!(dg2.coords[0], Scalar::from_integer(q2.into()) * &dba2.coords[0], "relation of B_{q2}");
        }

        let closure = sg_closure(cat);
        let gamma = cat.path_morphism(&Path::from_ids(cat.quiver(), &["gamma"]).unwrap());
        assert!(!closure.contains(cat, x, z, &gamma.coords), "gamma in the SG closure at q = {q}");
        assert!(!closure.is_sg);

        let g = presentation_group(cat, x, DEFAULT_PATH_CAP).unwrap();
        // one generator: the group is cyclic, so its abelianization is the group itself
        assert_eq!(g.presentation.generators().len(), 1);
        let expected = if q == 0 { AbelianGroup::free(1) } else { AbelianGroup::trivial() };
        assert_eq!(g.abelianization.group, expected, "pi1 at q = {q}");
    }
}

fn kronecker_suite() {
    let m = corpus_model("kronecker");
    let v = m.grading("V").unwrap();
    let z = v.group();
    let mus: BTreeSet<String> =
        enumerate_thin_morphisms(v, v, 0).unwrap().iter().map(|e| format!("{:?}", e.mu.images())).collect();
    let expected: BTreeSet<String> =
        [GroupHom::identity(z), GroupHom::scalar(z, -1)].iter().map(|h| format!("{:?}", h.images())).collect();
    assert_eq!(mus, expected);

    let (fix, _) = compute_fix(v, 0).unwrap();
    assert!(fix.is_trivial(), "Fix(V) = {fix}");

    let mut family = Vec::new();
    for n in 1..=6u64 {
        let c = AbelianGroup::cyclic(n);
        let image = c.generators().first().cloned().unwrap_or_else(|| c.zero());
        let pi = GroupHom::new(z.clone(), c, vec![image]).unwrap();
        family.push(quotient_grading(v, &pi).unwrap());
    }
    let report = verify_universal_property(v, &family, 0).unwrap();
    assert!(report.all_exist(), "V is not versal on the cyclic quotients");
    assert!(!report.all_unique());
    assert!(!report.is_universal());
    // maps Z -> C_n compatible with the quotient: t -> ±t, distinct iff n > 2
    for (n, e) in (1..=6).zip(&report.entries) {
        assert_eq!(e.mus.len(), if n <= 2 { 1 } else { 2 }, "C{n}");
    }
}

fn kcp_suite() {
    for p in [2u64, 3] {
        let m = corpus_model(&format!("kcp{p}"));
        let cat = &m.category;
        assert_eq!(cat.field(), &FieldSpec::prime(p).unwrap());
        assert!(schurian_morphisms(cat).is_empty(), "Schurian morphisms over F_{p}");

        let natural = m.grading("natural").unwrap();
        let maximal = m.grading("maximal").unwrap();
        assert_eq!(natural.group(), &AbelianGroup::cyclic(p));
        assert_eq!(maximal.group(), &AbelianGroup::free(1));
        for x in [natural, maximal] {
            assert!(validate_grading(x).is_valid());
            assert!(is_connected_grading(x, 0).unwrap());
        }

        let cp = AbelianGroup::cyclic(p);
        let z = AbelianGroup::free(1);
        let homs = hom_space(&cp, &z);
        assert_eq!(homs.count(), Some(1));
        assert_eq!(homs.enumerate(10).unwrap(), vec![GroupHom::zero(&cp, &z)]);
        // a generator of C_p can only go to some n with p*n = 0
        for n in -12i64..=12 {
            assert_eq!(GroupHom::new(cp.clone(), z.clone(), vec![z.element_i64(&[n])]).is_ok(), n == 0);
        }

        let fam = m.families.iter().find(|f| f.name == "finite").unwrap();
        let mut family = GradingFamily::new(fam.gradings.iter().map(|&i| m.gradings[i].1.clone()).collect());
        let id = Functor::identity(cat.clone());
        for &k in &fam.morphisms {
            let mm = &m.morphisms[k];
            let from = fam.gradings.iter().position(|&i| i == mm.source).unwrap();
            let to = fam.gradings.iter().position(|&i| i == mm.target).unwrap();
            let (x, y) = (&m.gradings[mm.source].1, &m.gradings[mm.target].1);
            family.add_morphism(from, to, verify_grading_morphism(x, y, &mm.mu, &id, 0).unwrap()).unwrap();
        }
        let groups: Vec<String> = family.gradings.iter().map(|x| x.group().to_string()).collect();
        assert_eq!(groups, ["Z", "Z/2", "Z/4", &format!("Z/{p}")]);
        let limit = coherent_family_group(&family).unwrap();
        assert_eq!(limit.group, AbelianGroup::from_orders(1, &[p]), "limit for p = {p}");
    }
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u64
}

fn sg_universal_suite() {
    // connected C_n gradings: roundtrip needs deg(alpha) + deg(beta) to generate;
    // the square forces its cycle to degree 0 and A3 has no cycle
    type Case = (&'static str, AbelianGroup, fn(u64) -> u64);
    let cases: [Case; 3] = [
        ("square", AbelianGroup::trivial(), |_| 0),
        ("roundtrip", AbelianGroup::free(1), |n| n * euler_phi(n)),
        ("a3", AbelianGroup::trivial(), |_| 0),
    ];
    for (name, group, count) in cases {
        let m = corpus_model(name);
        let cat = &m.category;
        let u = universal_grading(cat, 0).unwrap().grading;
        assert_eq!(u.group(), &group, "{name}");
        let mut family = Vec::new();
        for n in 2..=4u64 {
            let found = enumerate_constricted_gradings(cat, &AbelianGroup::cyclic(n), 0, DEFAULT_GRADING_CAP).unwrap();
            assert_eq!(found.len() as u64, count(n), "{name}: connected gradings by C{n}");
            family.extend(found);
        }
        let report = verify_universal_property(&u, &family, 0).unwrap();
        assert!(report.is_universal(), "{name} is not universal on the oracle family");
        family.push(u);
        for x in &family {
            for y in &family {
                assert!(enumerate_thin_morphisms(x, y, 0).unwrap().len() <= 1, "{name}: two morphisms");
            }
        }
    }
}

fn check_smash(x: &Grading) {
    let cat = x.category();
    let g = x.group();
    let order = g.elements(64).unwrap();
    let s = build_smash(x).unwrap();
    assert_eq!(s.num_objects(), cat.num_objects() * order.len());
    assert_eq!(s.total_dimension(), cat.total_dimension() * order.len());
    for (o1, &(b1, i1)) in s.objects.iter().enumerate() {
        for (o2, &(b2, i2)) in s.objects.iter().enumerate() {
            let want = g.sub(&s.elements[i1], &s.elements[i2]);
            let expected = x.degrees(b1, b2).iter().filter(|d| **d == want).count();
            assert_eq!(s.dim(o1, o2), expected);
        }
    }
    assert!(verify_covering(&s).is_covering());
    let gal = galois_report(&s).unwrap();
    assert!(gal.functorial && gal.free && gal.fibre_transitive);

    let conn = ConnectorFamily::trivial_degree(x, 0).unwrap();
    let endos = enumerate_thin_morphisms(x, x, 0).unwrap();
    assert!(!endos.is_empty());
    let mut covers = Vec::new();
    for e in &endos {
        let h = covering_morphism_from_grading_morphism(&s, &s, &e.mu, &e.witness, &conn).unwrap();
        h.verify().unwrap();
        let lam = lambda_map(&h, 0).unwrap();
        assert!(lam.equation_holds);
        assert_eq!(lam.lambda, e.mu);
        covers.push((h, lam.lambda));
    }
    for (h2, l2) in &covers {
        for (h1, l1) in &covers {
            let h = h2.compose(h1).unwrap();
            h.verify().unwrap();
            assert_eq!(lambda_map(&h, 0).unwrap().lambda, l2.compose(l1).unwrap());
        }
    }
}

fn smash_suite() {
    let square = corpus_model("square");
    check_smash(&Grading::trivial(square.category.clone()).validated().unwrap());
    let dual = corpus_model("dual");
    let parity = dual.grading("parity").unwrap();
    check_smash(parity);
    let s = build_smash(parity).unwrap();
    assert_eq!(s.num_objects(), 2);
    assert!((0..2).all(|a| (0..2).all(|b| s.dim(a, b) == 1)));
    assert_eq!(s.total_dimension(), 4);
    let roundtrip = corpus_model("roundtrip");
    check_smash(roundtrip.grading("twisted").unwrap());
    assert_eq!(build_smash(roundtrip.grading("twisted").unwrap()).unwrap().num_objects(), 4);
    // nontrivial lambda: the swap acts by -1 on C3
    check_smash(corpus_model("kronecker").grading("V3").unwrap());
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn det(m: &[Vec<i128>]) -> i128 {
    // fraction-free elimination
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Invariant factors from gcds of k-minors.
fn determinantal_invariants(a: &[Vec<i64>]) -> Vec<BigInt> {
    let (r, c) = (a.len(), a[0].len());
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Vec<Vec<i128>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| a[i][j] as i128).collect()).collect();
                g = num_integer::gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        let dk = BigInt::from(g);
        out.push(&dk / &prev);
        prev = dk;
    }
    out
}

fn snf_property() {
    let matrices = (1..=5usize, 1..=5usize)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-20i64..=20, c), r));
    runner(200)
        .run(&matrices, |a| {
            let rows: Vec<&[i64]> = a.iter().map(Vec::as_slice).collect();
            let m = IntMatrix::from_i64(&rows);
            let s = smith_normal_form(&m);
            prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
            prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
            prop_assert!(s.v.mul(&s.v_inv) == IntMatrix::identity(s.v.rows()));
            for i in 0..s.d.rows() {
                for j in 0..s.d.cols() {
                    prop_assert!(i == j || s.d[(i, j)].is_zero());
                }
            }
            let inv = s.invariants();
            prop_assert!(inv.iter().all(|d| d.is_positive()));
            prop_assert!(inv.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
            prop_assert_eq!(inv, determinantal_invariants(&a));
            Ok(())
        })
        .unwrap();
}

/// Interprets choices as a walk starting at `start`; returns it in written order.
fn walk_from(x: &Grading, start: usize, choices: &[usize]) -> (Walk, Vec<(BasisRef, i8)>) {
    let refs = x.basis_refs();
    let mut cur = start;
    let mut traversed = Vec::new();
    for &c in choices {
        let out: Vec<(BasisRef, i8)> = refs
            .iter()
            .flat_map(|f| {
                let fwd = (f.src == cur).then_some((*f, 1i8));
                let back = (f.tgt == cur).then_some((*f, -1i8));
                fwd.into_iter().chain(back)
            })
            .collect();
        let (f, s) = out[c % out.len()];
        cur = if s > 0 { f.tgt } else { f.src };
        traversed.push((f, s));
    }
    let written: Vec<_> = traversed.iter().rev().copied().collect();
    let w = if written.is_empty() { Walk::empty(start) } else { Walk::new(written.clone()).unwrap() };
    (w, written)
}

fn signed_sum(x: &Grading, steps: &[(BasisRef, i8)]) -> GroupElement {
    let g = x.group();
    steps.iter().fold(g.zero(), |acc, (f, s)| {
        let d = x.degree(f);
        if *s > 0 {
            g.add(&acc, d)
        } else {
            g.sub(&acc, d)
        }
    })
}

fn walk_property() {
    let gradings = [
        resolve(&corpus_file("bq"), &with_q(1)).unwrap().grading("U").unwrap().clone(),
        corpus_model("kronecker").grading("V").unwrap().clone(),
        corpus_model("kcp3").grading("natural").unwrap().clone(),
        universal_grading(&corpus_model("roundtrip").category, 0).unwrap().grading,
    ];
    let choices = (
        0..gradings.len(),
        0usize..8,
        proptest::collection::vec(0usize..64, 0..10),
        proptest::collection::vec(0usize..64, 0..10),
    );
    runner(300)
        .run(&choices, |(k, start, c1, c2)| {
            let x = &gradings[k];
            let start = start % x.category().num_objects();
            let (w1, s1) = walk_from(x, start, &c1);
            let (w2, s2) = walk_from(x, w1.tgt(), &c2);
            let g = x.group();
            let d1 = walk_degree(x, &w1).unwrap();
            let d2 = walk_degree(x, &w2).unwrap();
            prop_assert_eq!(&d1, &signed_sum(x, &s1));
            prop_assert_eq!(&d2, &signed_sum(x, &s2));
            prop_assert_eq!(walk_degree(x, &w1.inverse()).unwrap(), g.neg(&d1));
            prop_assert_eq!(w1.inverse().inverse(), w1.clone());
            let both = w2.after(&w1).unwrap();
            prop_assert_eq!(walk_degree(x, &both).unwrap(), g.add(&d1, &d2));
            prop_assert_eq!(walk_degree(x, &both.inverse()).unwrap(), g.add(&g.neg(&d2), &g.neg(&d1)));
            let back = w1.inverse().after(&w1).unwrap();
            prop_assert!(walk_degree(x, &back).unwrap().is_zero());
            Ok(())
        })
        .unwrap();
}

type Q = num_rational::BigRational;

fn rank(rows: &[Vec<Q>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let t = &a[i][c] / &a[r][c];
                let pivot = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x -= &t * y;
                }
            }
        }
        r += 1;
    }
    r
}

fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    // restricted growth strings
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn go(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[i] = b;
            go(i + 1, max.max(b), cur, out);
        }
    }
    if n > 0 {
        go(1, 0, &mut cur, &mut out);
    }
    out
}

/// Per subset of coordinates (bitmask), whether projecting every generator
/// onto it stays inside their span.
fn closed_subsets(gens: &[Vec<Q>], m: usize) -> Vec<bool> {
    let r = rank(gens);
    (0u32..1 << m)
        .map(|mask| {
            gens.iter().all(|g| {
                let proj: Vec<Q> =
                    g.iter().enumerate().map(|(i, x)| if mask >> i & 1 == 1 { x.clone() } else { Q::zero() }).collect();
                let mut rows = gens.to_vec();
                rows.push(proj);
                rank(&rows) == r
            })
        })
        .collect()
}

fn splits(closed: &[bool], labels: &[usize]) -> bool {
    let blocks = labels.iter().max().map_or(0, |m| m + 1);
    (0..blocks).all(|b| {
        let mask = labels.iter().enumerate().filter(|(_, &l)| l == b).fold(0usize, |acc, (i, _)| acc | 1 << i);
        closed[mask]
    })
}

fn blocks_of(labels: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        m.entry(l).or_default().push(i);
    }
    m.into_values().collect()
}

fn refines(fine: &BTreeSet<Vec<usize>>, coarse: &BTreeSet<Vec<usize>>) -> bool {
    fine.iter().all(|b| coarse.iter().any(|c| b.iter().all(|i| c.contains(i))))
}

fn partition_property() {
    let shapes = [(2usize, 2usize), (2, 3), (3, 2), (2, 4), (4, 2)];
    let strategy = (0..shapes.len(), proptest::collection::vec(proptest::collection::vec(-6i64..=6, 8), 1..=3));
    runner(40)
        .run(&strategy, |(k, raw)| {
            let (a, b) = shapes[k];
            let names: Vec<String> = (0..a).map(|i| format!("a{i}")).chain((0..b).map(|j| format!("b{j}"))).collect();
            let arrows: Vec<(&str, &str, &str)> = names
                .iter()
                .enumerate()
                .map(|(i, n)| if i < a { (n.as_str(), "x", "y") } else { (n.as_str(), "y", "z") })
                .collect();
            let quiver = Quiver::new(&["x", "y", "z"], &arrows).unwrap();
            let f = FieldSpec::Rationals;
            let paths: Vec<Path> = (0..b)
                .flat_map(|j| (0..a).map(move |i| (i, j)))
                .map(|(i, j)| Path::new(&quiver, vec![a + j, i]).unwrap())
                .collect();
            // small entries become zeros so that supports stay sparse
            let gens: Vec<Vec<Q>> = raw
                .iter()
                .map(|r| {
                    r[..paths.len()].iter().map(|&c| Q::from_integer(if c.abs() <= 3 { 0 } else { c }.into())).collect()
                })
                .collect();
            let relations: Vec<LinComb> = gens
                .iter()
                .filter(|g| g.iter().any(|c| !c.is_zero()))
                .map(|g| LinComb::new(&f, 0, 2, g.iter().cloned().zip(paths.iter().cloned()).collect()).unwrap())
                .collect();
            let cat = build_category(quiver, relations, None, f).unwrap();
            let h = cat.hom(0, 2);
            prop_assert_eq!(h.paths().len(), paths.len());
            let perm: Vec<usize> = h.paths().iter().map(|p| paths.iter().position(|q| q == p).unwrap()).collect();
            let part = homogeneity_partition(&cat, 0, 2, DEFAULT_PATH_CAP).unwrap();
            let found: BTreeSet<Vec<usize>> = part
                .blocks
                .iter()
                .map(|b| {
                    let mut v: Vec<usize> = b.iter().map(|&i| perm[i]).collect();
                    v.sort_unstable();
                    v
                })
                .collect();

            let closed = closed_subsets(&gens, paths.len());
            let splitting: Vec<BTreeSet<Vec<usize>>> =
                set_partitions(paths.len()).iter().filter(|l| splits(&closed, l)).map(|l| blocks_of(l)).collect();
            let most = splitting.iter().map(BTreeSet::len).max().unwrap();
            let finest: Vec<_> = splitting.iter().filter(|p| p.len() == most).collect();
            prop_assert_eq!(finest.len(), 1);
            prop_assert_eq!(&found, finest[0]);
            prop_assert!(splitting.iter().all(|p| refines(&found, p)));
            Ok(())
        })
        .unwrap();
}

fn candidate_maps(x: &Grading, y: &Grading) -> Vec<GroupHom> {
    let (g, h) = (x.group(), y.group());
    match hom_space(g, h).enumerate(256) {
        Ok(all) => all,
        // Z -> Z: a window of scalars
        Err(_) => (-3..=3).map(|k| GroupHom::scalar(g, k)).collect(),
    }
}

fn rerooting_property() {
    let kron = corpus_model("kronecker");
    let swap = kron.functors.iter().find(|(n, _)| n == "swap").unwrap().1.clone();
    let kg: Vec<Grading> = ["V", "V2", "V3"].iter().map(|n| kron.grading(n).unwrap().clone()).collect();
    let rt = corpus_model("roundtrip");
    let mut rg =
        enumerate_constricted_gradings(&rt.category, &AbelianGroup::cyclic(4), 0, DEFAULT_GRADING_CAP).unwrap();
    rg.push(universal_grading(&rt.category, 0).unwrap().grading);
    let bq = resolve(&corpus_file("bq"), &with_q(2)).unwrap();
    let bg = vec![bq.grading("U").unwrap().clone()];

    let mut outcomes = [0usize; 2];
    let suites: [(&Arc<PresentedCategory>, &[Grading], Vec<Functor>); 3] = [
        (&kron.category, &kg, vec![Functor::identity(kron.category.clone()), swap]),
        (&rt.category, &rg, vec![Functor::identity(rt.category.clone())]),
        (&bq.category, &bg, vec![Functor::identity(bq.category.clone())]),
    ];
    for (cat, gradings, witnesses) in suites {
        for x in gradings {
            for y in gradings {
                for mu in candidate_maps(x, y) {
                    for j in &witnesses {
                        let verdicts: Vec<bool> =
                            (0..cat.num_objects()).map(|b| verify_grading_morphism(x, y, &mu, j, b).is_ok()).collect();
                        assert!(verdicts.windows(2).all(|w| w[0] == w[1]), "root-dependent verdict for {mu:?}");
                        outcomes[verdicts[0] as usize] += 1;
                    }
                }
            }
        }
    }
    assert!(outcomes[0] > 0 && outcomes[1] > 0, "{outcomes:?}");
}

fn property_suites() {
    snf_property();
    walk_property();
    partition_property();
    rerooting_property();
}

fn main() {
    let criteria: [(&str, u64, fn()); 6] = [
        ("B_q suite", 1, bq_suite),
        ("Kronecker suite", 2, kronecker_suite),
        ("kC_p suite", 1, kcp_suite),
        ("SG universal gradings with oracle cross-check", 10, sg_universal_suite),
        ("smash products and Galois coverings", 2, smash_suite),
        ("module property suites", 15, property_suites),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run);
        let elapsed = start.elapsed();
        let ms = elapsed.as_secs_f64() * 1e3;
        match outcome {
            Ok(()) if elapsed <= Duration::from_secs(*budget) => {
                println!("PASS criterion {}: {title} ({ms:.0} ms)", i + 1)
            }
            Ok(()) => {
                failed += 1;
                println!("FAIL criterion {}: {title} took {ms:.0} ms, budget {budget} s", i + 1)
            }
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL criterion {}: {title}: {msg}", i + 1)
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
