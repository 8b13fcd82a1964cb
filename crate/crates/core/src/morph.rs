//! Morphisms of gradings: verification, exhaustive search for thin gradings,
//! fixed subgroups, brute-force grading enumeration, and coherent families.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::grading::{
    check_homogeneous, homogeneous_image, is_connected_grading, map_walk, spanning_tree, walk_degree, BasisRef,
    Grading, GradingError,
};
use crate::grpkit::{diagram_limit, express_in_generators, AbelianGroup, DiagramLimit, GroupError, GroupHom};
use crate::linrep::{build_functor, Functor, LinrepError, Matrix, PresentedCategory, Scalar};
use crate::schur::is_constricted;

pub const DEFAULT_GRADING_CAP: u64 = 1_000_000;
pub const DEFAULT_CANDIDATE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphError {
    #[error("witness functor is not homogeneous: {0}")]
    NotHomogeneousWitness(String),
    #[error("degree square fails on walk {walk}: group map gives {expected}, functor gives {found}")]
    SquareFails { walk: String, expected: String, found: String },
    #[error("witness functor is not an automorphism")]
    WitnessNotInvertible,
    #[error("groups or categories do not match: {0}")]
    Mismatch(String),
    #[error("no group map is induced: {0}")]
    NoInducedHom(String),
    #[error("grading {0} has a homogeneous component of dimension above one")]
    NotThin(String),
    #[error("presentation is not constricted: {0}")]
    NotConstricted(String),
    #[error("{size} candidates exceed the cap {cap}")]
    GroupTooLarge { size: String, cap: u64 },
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linrep(#[from] LinrepError),
}

/// A group map between structural groups together with a homogeneous
/// automorphism that induces it on closed-walk degrees.
#[derive(Clone, Debug)]
pub struct GradingMorphism {
    pub source: Grading,
    pub target: Grading,
    pub mu: GroupHom,
    pub witness: Functor,
}

impl GradingMorphism {
    /// `self ∘ first`, re-verified.
    pub fn compose(&self, first: &GradingMorphism, b0: usize) -> Result<GradingMorphism, MorphError> {
        let mu = self.mu.compose(&first.mu)?;
        let witness = self.witness.compose(&first.witness)?;
        verify_grading_morphism(&first.source, &self.target, &mu, &witness, b0)
    }
}

fn same_category(a: &Arc<PresentedCategory>, b: &Arc<PresentedCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Checks that `j` is a homogeneous automorphism from `x` to `y` and that
/// `mu(deg_x w) = deg_y(J(w))` on the closed walks of a spanning tree at `b0`.
pub fn verify_grading_morphism(
    x: &Grading,
    y: &Grading,
    mu: &GroupHom,
    j: &Functor,
    b0: usize,
) -> Result<GradingMorphism, MorphError> {
    if mu.source() != x.group() || mu.target() != y.group() {
        return Err(MorphError::Mismatch(format!(
            "map {} -> {} between gradings by {} and {}",
            mu.source(),
            mu.target(),
            x.group(),
            y.group()
        )));
    }
    if !same_category(j.source(), x.category()) || !same_category(j.target(), y.category()) {
        return Err(MorphError::Mismatch("witness acts on another category".into()));
    }
    if !j.is_isomorphism() {
        return Err(MorphError::WitnessNotInvertible);
    }
    check_homogeneous(j, x, y).map_err(|e| match e {
        GradingError::NotHomogeneous(s) => MorphError::NotHomogeneousWitness(s),
        other => other.into(),
    })?;
    let tree = spanning_tree(x, b0)?;
    for f in tree.edges() {
        let w = tree.cycle(f);
        let expected = mu.apply(&walk_degree(x, &w)?);
        let found = walk_degree(y, &map_walk(j, &w, x, y)?.walk)?;
        if expected != found {
            return Err(MorphError::SquareFails {
                walk: w.display(x),
                expected: expected.to_string(),
                found: found.to_string(),
            });
        }
    }
    Ok(GradingMorphism { source: x.clone(), target: y.clone(), mu: mu.clone(), witness: j.clone() })
}

/// The group map a homogeneous automorphism induces on closed-walk degrees;
/// `x` must be connected.
pub fn induced_hom(x: &Grading, y: &Grading, j: &Functor, b0: usize) -> Result<GroupHom, MorphError> {
    let tree = spanning_tree(x, b0)?;
    let cycles = tree.fundamental_cycles();
    let mut dx = Vec::with_capacity(cycles.len());
    let mut dy = Vec::with_capacity(cycles.len());
    for w in &cycles {
        dx.push(walk_degree(x, w)?);
        dy.push(walk_degree(y, &map_walk(j, w, x, y)?.walk)?);
    }
    let gx = x.group();
    let images = gx
        .generators()
        .iter()
        .map(|g| {
            let k = express_in_generators(gx, &dx, g)
                .ok_or_else(|| MorphError::NoInducedHom(format!("source grading is not connected at {g}")))?;
            Ok(y.group().sum(&k.iter().zip(&dy).map(|(k, d)| y.group().scale(k, d)).collect::<Vec<_>>()))
        })
        .collect::<Result<Vec<_>, MorphError>>()?;
    let mu =
        GroupHom::new(gx.clone(), y.group().clone(), images).map_err(|e| MorphError::NoInducedHom(e.to_string()))?;
    verify_grading_morphism(x, y, &mu, j, b0)?;
    Ok(mu)
}

fn check_thin(x: &Grading, name: &str) -> Result<(), MorphError> {
    if x.is_thin() {
        Ok(())
    } else {
        Err(MorphError::NotThin(name.into()))
    }
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// One scalar equation `a * c[h] = c[f] * c[g] * b` (or `a * c[h] = b` for identities).
struct Equation {
    h: usize,
    a: Scalar,
    rhs: Option<(usize, usize)>,
    b: Scalar,
}

/// Every grading morphism `x -> y` witnessed by an automorphism sending
/// homogeneous basis lines to homogeneous basis lines, one per distinct group map.
pub fn enumerate_thin_morphisms(x: &Grading, y: &Grading, b0: usize) -> Result<Vec<GradingMorphism>, MorphError> {
    check_thin(x, "source")?;
    check_thin(y, "target")?;
    if !same_category(x.category(), y.category()) {
        return Err(MorphError::Mismatch("gradings of different categories".into()));
    }
    let cat = x.category().clone();
    let fl = *cat.field();
    let pairs: Vec<(usize, usize)> = cat.hom_pairs().collect();
    let refs = x.basis_refs();
    let index: HashMap<BasisRef, usize> = refs.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let perms: Vec<Vec<Vec<usize>>> = pairs.iter().map(|&(a, b)| permutations(cat.dim(a, b))).collect();
    let total = perms.iter().try_fold(1u64, |acc, p| acc.checked_mul(p.len() as u64));
    match total {
        Some(t) if t <= DEFAULT_CANDIDATE_CAP => {}
        _ => {
            return Err(MorphError::GroupTooLarge { size: "line bijections".into(), cap: DEFAULT_CANDIDATE_CAP });
        }
    }
    let n = cat.num_objects();
    let pair_index = |a: usize, b: usize| a * n + b;

    // composites of homogeneous basis elements in homogeneous coordinates
    let products = |g: &Grading| -> HashMap<(BasisRef, BasisRef), Vec<Scalar>> {
        let mut out = HashMap::new();
        for f in g.basis_refs() {
            for h in g.basis_refs().iter().filter(|h| h.tgt == f.src) {
                let comp = cat.compose(&g.element(&f), &g.element(h)).expect("chained");
                out.insert((f, *h), g.to_homogeneous(&comp));
            }
        }
        out
    };
    let px = products(x);
    let py = products(y);
    let idx: Vec<Vec<Scalar>> = (0..n).map(|b| x.to_homogeneous(&cat.identity(b))).collect();
    let idy: Vec<Vec<Scalar>> = (0..n).map(|b| y.to_homogeneous(&cat.identity(b))).collect();

    let mut found: Vec<GradingMorphism> = Vec::new();
    let mut choice = vec![0usize; pairs.len()];
    'candidates: loop {
        let pi = |r: &BasisRef| -> BasisRef {
            let p = &perms[pair_index(r.src, r.tgt)][choice[pair_index(r.src, r.tgt)]];
            BasisRef { src: r.src, tgt: r.tgt, index: p[r.index] }
        };
        // equations in deterministic order: identities first, then composable pairs
        let mut eqs: Vec<Equation> = Vec::new();
        let mut consistent = true;
        for b in 0..n {
            for (k, a) in idx[b].iter().enumerate() {
                let h = BasisRef { src: b, tgt: b, index: k };
                let e = idy[b][pi(&h).index].clone();
                eqs.push(Equation { h: index[&h], a: a.clone(), rhs: None, b: e });
            }
        }
        for f in &refs {
            for g in refs.iter().filter(|g| g.tgt == f.src) {
                let a = &px[&(*f, *g)];
                let bv = &py[&(pi(f), pi(g))];
                for (k, ak) in a.iter().enumerate() {
                    let h = BasisRef { src: g.src, tgt: f.tgt, index: k };
                    let b = bv[pi(&h).index].clone();
                    eqs.push(Equation { h: index[&h], a: ak.clone(), rhs: Some((index[f], index[g])), b });
                }
            }
        }
        let mut c: Vec<Option<Scalar>> = vec![None; refs.len()];
        loop {
            let mut progress = true;
            while progress && consistent {
                progress = false;
                for e in &eqs {
                    let (az, bz) = (e.a.is_zero(), e.b.is_zero());
                    if az && bz {
                        continue;
                    }
                    if az != bz {
                        consistent = false;
                        break;
                    }
                    // a * c[h] = c[f] * c[g] * b
                    let (cf, cg) = match e.rhs {
                        None => (Some(fl.one()), Some(fl.one())),
                        Some((f, g)) => (c[f].clone(), c[g].clone()),
                    };
                    match (&c[e.h], cf, cg) {
                        (Some(ch), Some(cf), Some(cg)) => {
                            if fl.mul(&e.a, ch) != fl.mul(&fl.mul(&cf, &cg), &e.b) {
                                consistent = false;
                                break;
                            }
                        }
                        (None, Some(cf), Some(cg)) => {
                            let v = fl.div(&fl.mul(&fl.mul(&cf, &cg), &e.b), &e.a).expect("a nonzero");
                            c[e.h] = Some(v);
                            progress = true;
                        }
                        (Some(ch), None, Some(other)) | (Some(ch), Some(other), None) => {
                            let v = fl.div(&fl.mul(&e.a, ch), &fl.mul(&other, &e.b)).expect("nonzero");
                            let (f, g) = e.rhs.expect("identity equations have no unknown factors");
                            let slot = if c[f].is_none() { f } else { g };
                            c[slot] = Some(v);
                            progress = true;
                        }
                        _ => {}
                    }
                }
            }
            if !consistent {
                break;
            }
            match c.iter().position(Option::is_none) {
                Some(k) => c[k] = Some(fl.one()),
                None => break,
            }
        }
        if consistent && c.iter().all(|v| v.as_ref().is_some_and(|v| !v.is_zero())) {
            let c: Vec<Scalar> = c.into_iter().map(|v| v.expect("set")).collect();
            let matrices = pairs
                .iter()
                .map(|&(a, b)| {
                    let d = cat.dim(a, b);
                    let mut diag = Matrix::zeros(d, d);
                    for i in 0..d {
                        let r = BasisRef { src: a, tgt: b, index: i };
                        diag[(pi(&r).index, i)] = c[index[&r]].clone();
                    }
                    y.base_change(a, b).mul(&fl, &diag).mul(&fl, x.inverse_base_change(a, b))
                })
                .collect();
            if let Ok(j) = build_functor(cat.clone(), cat.clone(), matrices) {
                if let Ok(mu) = induced_hom(x, y, &j, b0) {
                    if !found.iter().any(|m| m.mu == mu) {
                        found.push(GradingMorphism { source: x.clone(), target: y.clone(), mu, witness: j });
                    }
                }
            }
        }
        // next candidate
        for k in 0..choice.len() {
            choice[k] += 1;
            if choice[k] < perms[k].len() {
                continue 'candidates;
            }
            choice[k] = 0;
        }
        break;
    }
    found.sort_by_key(|m| m.mu.images());
    Ok(found)
}

/// Elements fixed by every endomorphism of `x` (thin case), as a subgroup
/// with its inclusion.
pub fn compute_fix(x: &Grading, b0: usize) -> Result<(AbelianGroup, GroupHom), MorphError> {
    let endos = enumerate_thin_morphisms(x, x, b0)?;
    let g = x.group();
    let mut incl = GroupHom::identity(g);
    for m in &endos {
        let diff = m.mu.sub(&GroupHom::identity(g))?.compose(&incl)?;
        let (_, k) = diff.kernel();
        incl = incl.compose(&k)?;
    }
    Ok((incl.source().clone(), incl))
}

/// Every path-basis grading of a constricted presentation by the finite group
/// `g` (arrow degrees chosen freely) that is valid and connected at `b0`.
pub fn enumerate_constricted_gradings(
    cat: &Arc<PresentedCategory>,
    g: &AbelianGroup,
    b0: usize,
    cap: u64,
) -> Result<Vec<Grading>, MorphError> {
    let c = is_constricted(cat);
    if let Some((arrow, path)) = c.witness {
        return Err(MorphError::NotConstricted(format!("{path} is parallel to {arrow}")));
    }
    let order = g.order().ok_or_else(|| GroupError::Infinite(g.to_string()))?;
    let arrows = cat.quiver().arrows().len();
    let size = num_traits::pow(order.clone(), arrows);
    if size > BigInt::from(cap) {
        return Err(MorphError::GroupTooLarge { size: size.to_string(), cap });
    }
    let elements = g.elements(order.to_usize().expect("bounded by cap"))?;
    let mut out = Vec::new();
    let mut choice = vec![0usize; arrows];
    loop {
        let degrees: Vec<_> = choice.iter().map(|&i| elements[i].clone()).collect();
        let x = Grading::from_arrow_degrees(cat.clone(), g.clone(), &degrees)?;
        if let Ok(x) = x.validated() {
            if is_connected_grading(&x, b0)? {
                out.push(x);
            }
        }
        let mut k = 0;
        loop {
            if k == arrows {
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < elements.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Outcome of comparing one grading against a candidate universal grading.
#[derive(Clone, Debug)]
pub struct UniversalityEntry {
    pub group: AbelianGroup,
    pub mus: Vec<GroupHom>,
}

impl UniversalityEntry {
    pub fn exists(&self) -> bool {
        !self.mus.is_empty()
    }

    pub fn unique(&self) -> bool {
        self.mus.len() == 1
    }
}

#[derive(Clone, Debug, Default)]
pub struct UniversalityReport {
    pub entries: Vec<UniversalityEntry>,
}

impl UniversalityReport {
    pub fn all_exist(&self) -> bool {
        self.entries.iter().all(UniversalityEntry::exists)
    }

    pub fn all_unique(&self) -> bool {
        self.entries.iter().all(UniversalityEntry::unique)
    }

    pub fn is_universal(&self) -> bool {
        self.all_exist() && self.all_unique()
    }
}

/// For each grading of the family, the group maps `u -> x` found by the
/// thin search, or else the one induced by the identity functor.
pub fn verify_universal_property(u: &Grading, family: &[Grading], b0: usize) -> Result<UniversalityReport, MorphError> {
    let mut entries = Vec::with_capacity(family.len());
    for x in family {
        let mus = if u.is_thin() && x.is_thin() {
            enumerate_thin_morphisms(u, x, b0)?.into_iter().map(|m| m.mu).collect()
        } else {
            let id = Functor::identity(u.category().clone());
            induced_hom(u, x, &id, b0).into_iter().collect()
        };
        entries.push(UniversalityEntry { group: x.group().clone(), mus });
    }
    Ok(UniversalityReport { entries })
}

/// A finite set of gradings of one category with morphisms among them.
#[derive(Clone, Debug, Default)]
pub struct GradingFamily {
    pub gradings: Vec<Grading>,
    /// `(source index, target index, morphism)`.
    pub morphisms: Vec<(usize, usize, GradingMorphism)>,
}

impl GradingFamily {
    pub fn new(gradings: Vec<Grading>) -> Self {
        GradingFamily { gradings, morphisms: Vec::new() }
    }

    pub fn add_morphism(&mut self, from: usize, to: usize, m: GradingMorphism) -> Result<(), MorphError> {
        if from >= self.gradings.len() || to >= self.gradings.len() {
            return Err(MorphError::Mismatch(format!("no grading {from} or {to} in the family")));
        }
        if m.source != self.gradings[from] || m.target != self.gradings[to] {
            return Err(MorphError::Mismatch("morphism endpoints differ from the family members".into()));
        }
        self.morphisms.push((from, to, m));
        Ok(())
    }
}

/// Families `(g_X)` with `mu(g_X) = g_Y` for every listed morphism.
pub fn coherent_family_group(family: &GradingFamily) -> Result<DiagramLimit, MorphError> {
    let nodes: Vec<AbelianGroup> = family.gradings.iter().map(|x| x.group().clone()).collect();
    let arrows: Vec<(usize, usize, GroupHom)> =
        family.morphisms.iter().map(|(a, b, m)| (*a, *b, m.mu.clone())).collect();
    Ok(diagram_limit(&nodes, &arrows)?)
}

/// Where the witness sends each homogeneous basis line, for reports.
pub fn describe_witness(m: &GradingMorphism) -> Vec<(String, String)> {
    m.source
        .basis_refs()
        .iter()
        .filter_map(|f| {
            homogeneous_image(&m.witness, &m.source, &m.target, f).ok().map(|(g, c)| {
                (m.source.label(f), format!("{} * {}", crate::linrep::format_scalar(&c), m.target.label(&g)))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrep::{build_category, FieldSpec, LinComb, Path, Quiver};

    fn q(x: i64) -> Scalar {
        Scalar::from_integer(x.into())
    }

    fn kronecker() -> Arc<PresentedCategory> {
        let quiver = Quiver::new(&["x", "y"], &[("alpha", "x", "y"), ("beta", "x", "y")]).unwrap();
        Arc::new(build_category(quiver, vec![], None, FieldSpec::Rationals).unwrap())
    }

    fn roundtrip() -> Arc<PresentedCategory> {
        let quiver = Quiver::new(&["x", "y"], &[("alpha", "x", "y"), ("beta", "y", "x")]).unwrap();
        let f = FieldSpec::Rationals;
        let ab = LinComb::new(&f, 1, 1, vec![(q(1), Path::from_ids(&quiver, &["alpha", "beta"]).unwrap())]).unwrap();
        let ba = LinComb::new(&f, 0, 0, vec![(q(1), Path::from_ids(&quiver, &["beta", "alpha"]).unwrap())]).unwrap();
        Arc::new(build_category(quiver, vec![ab, ba], Some(2), f).unwrap())
    }

    fn v() -> Grading {
        let z = AbelianGroup::free(1);
        Grading::from_arrow_degrees(kronecker(), z.clone(), &[z.element_i64(&[1]), z.zero()])
            .unwrap()
            .validated()
            .unwrap()
    }

    fn swap(c: &Arc<PresentedCategory>) -> Functor {
        Functor::from_arrow_images(c.clone(), c.clone(), &[c.basis_morphism(0, 1, 1), c.basis_morphism(0, 1, 0)])
            .unwrap()
    }

    #[test]
    fn permutations_in_order() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn kronecker_endomorphisms() {
        let v = v();
        let z = v.group().clone();
        let mus: Vec<GroupHom> = enumerate_thin_morphisms(&v, &v, 0).unwrap().into_iter().map(|m| m.mu).collect();
        assert_eq!(mus, vec![GroupHom::scalar(&z, -1), GroupHom::identity(&z)]);
        let m = verify_grading_morphism(&v, &v, &GroupHom::scalar(&z, -1), &swap(v.category()), 0).unwrap();
        assert!(m.compose(&m, 0).unwrap().mu.is_identity());
        assert!(matches!(
            verify_grading_morphism(&v, &v, &GroupHom::identity(&z), &swap(v.category()), 0),
            Err(MorphError::SquareFails { .. })
        ));
        assert!(compute_fix(&v, 0).unwrap().0.is_trivial());
        // re-rooting does not change the verdicts
        assert!(verify_grading_morphism(&v, &v, &GroupHom::scalar(&z, -1), &swap(v.category()), 1).is_ok());
    }

    #[test]
    fn roundtrip_has_only_the_identity() {
        let cat = roundtrip();
        let z = AbelianGroup::free(1);
        let u =
            Grading::from_arrow_degrees(cat, z.clone(), &[z.zero(), z.element_i64(&[1])]).unwrap().validated().unwrap();
        let mus: Vec<GroupHom> = enumerate_thin_morphisms(&u, &u, 0).unwrap().into_iter().map(|m| m.mu).collect();
        assert_eq!(mus, vec![GroupHom::identity(&z)]);
        assert_eq!(compute_fix(&u, 0).unwrap().0, z);
    }

    #[test]
    fn oracle_counts() {
        let c2 = AbelianGroup::cyclic(2);
        let rt = enumerate_constricted_gradings(&roundtrip(), &c2, 0, DEFAULT_GRADING_CAP).unwrap();
        assert_eq!(rt.len(), 2);
        let quiver = Quiver::new(&["x", "y"], &[("a", "x", "y")]).unwrap();
        let a2 = Arc::new(build_category(quiver, vec![], None, FieldSpec::Rationals).unwrap());
        assert!(enumerate_constricted_gradings(&a2, &c2, 0, DEFAULT_GRADING_CAP).unwrap().is_empty());
        assert!(matches!(
            enumerate_constricted_gradings(&roundtrip(), &c2, 0, 3),
            Err(MorphError::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn kronecker_is_versal_not_universal() {
        let v = v();
        let family: Vec<Grading> = (1..=6u64)
            .map(|n| {
                let c = AbelianGroup::cyclic(n);
                let pi = GroupHom::new(
                    v.group().clone(),
                    c.clone(),
                    vec![c.generators().first().cloned().unwrap_or(c.zero())],
                )
                .unwrap();
                crate::grading::quotient_grading(&v, &pi).unwrap()
            })
            .collect();
        let report = verify_universal_property(&v, &family, 0).unwrap();
        assert!(report.all_exist());
        assert!(!report.all_unique());
        assert!(report.entries[0].unique() && report.entries[1].unique());
        assert!(!report.entries[2].unique());
    }

    #[test]
    fn coherent_families() {
        let v = v();
        let z = v.group().clone();
        let mut fam = GradingFamily::new(vec![v.clone()]);
        for m in enumerate_thin_morphisms(&v, &v, 0).unwrap() {
            fam.add_morphism(0, 0, m).unwrap();
        }
        assert!(coherent_family_group(&fam).unwrap().group.is_trivial());
        let lonely = GradingFamily::new(vec![v]);
        assert_eq!(coherent_family_group(&lonely).unwrap().group, z);
    }
}
