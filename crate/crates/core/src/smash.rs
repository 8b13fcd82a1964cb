//! Smash products of a graded category by a finite structural group, their
//! covering and Galois checks, and covering morphisms induced by grading morphisms.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::grading::{map_walk, walk_degree, BasisRef, ConnectorFamily, Grading, GradingError};
use crate::grpkit::{GroupElement, GroupError, GroupHom};
use crate::linrep::{Functor, LinrepError, Morphism, Scalar};
use crate::morph::{induced_hom, MorphError};

pub const DEFAULT_GROUP_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmashError {
    #[error("structural group {0} is infinite; push the grading to a finite quotient first")]
    InfiniteGroup(String),
    #[error("structural group has {size} elements, above the cap {cap}")]
    GroupTooLarge { size: String, cap: usize },
    #[error("grading is not valid: {0}")]
    InvalidGrading(String),
    #[error("connector to object {object} has degree {degree}, not zero")]
    BadConnector { object: String, degree: String },
    #[error("G∘H = J∘F fails at {0}")]
    DiagramFails(String),
    #[error("covering morphism is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linrep(#[from] LinrepError),
    #[error(transparent)]
    Morph(#[from] MorphError),
}

/// The smash product `B#X`: objects are pairs `(b, s)` and
/// `hom((b, s), (b', t))` is the degree `s - t` component of `hom(b, b')`.
///
/// Fields are public so that tests can build deliberately broken doubles.
#[derive(Clone, Debug)]
pub struct SmashCategory {
    pub grading: Grading,
    pub elements: Vec<GroupElement>,
    /// `(base object, element index)`, base-object major.
    pub objects: Vec<(usize, usize)>,
    /// Per object pair (row-major), the homogeneous basis elements spanning it.
    pub homs: Vec<Vec<BasisRef>>,
}

pub fn build_smash(x: &Grading) -> Result<SmashCategory, SmashError> {
    build_smash_capped(x, DEFAULT_GROUP_CAP)
}

pub fn build_smash_capped(x: &Grading, cap: usize) -> Result<SmashCategory, SmashError> {
    let g = x.group();
    if !g.is_finite() {
        return Err(SmashError::InfiniteGroup(g.to_string()));
    }
    if !x.is_validated() {
        x.clone().validated().map_err(|e| SmashError::InvalidGrading(e.to_string()))?;
    }
    let elements = g
        .elements(cap)
        .map_err(|_| SmashError::GroupTooLarge { size: g.order().map(|o| o.to_string()).unwrap_or_default(), cap })?;
    let cat = x.category();
    let objects: Vec<(usize, usize)> =
        (0..cat.num_objects()).flat_map(|b| (0..elements.len()).map(move |s| (b, s))).collect();
    let mut homs = Vec::with_capacity(objects.len() * objects.len());
    for &(b, s) in &objects {
        for &(c, t) in &objects {
            let d = g.sub(&elements[s], &elements[t]);
            homs.push((0..x.dim(b, c)).map(|i| BasisRef::new(b, c, i)).filter(|f| x.degree(f) == &d).collect());
        }
    }
    Ok(SmashCategory { grading: x.clone(), elements, objects, homs })
}

impl SmashCategory {
    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, b: usize, s: &GroupElement) -> Option<usize> {
        let k = self.elements.iter().position(|e| e == s)?;
        Some(b * self.elements.len() + k)
    }

    pub fn hom(&self, o1: usize, o2: usize) -> &[BasisRef] {
        &self.homs[o1 * self.objects.len() + o2]
    }

    pub fn dim(&self, o1: usize, o2: usize) -> usize {
        self.hom(o1, o2).len()
    }

    pub fn total_dimension(&self) -> usize {
        self.homs.iter().map(Vec::len).sum()
    }

    pub fn object_label(&self, o: usize) -> String {
        let (b, s) = self.objects[o];
        format!("({}, {})", self.grading.category().object_name(b), self.elements[s])
    }

    /// Image under the projection functor of a morphism given by coordinates
    /// over `hom(o1, o2)`.
    pub fn project(&self, o1: usize, o2: usize, coords: &[Scalar]) -> Morphism {
        let x = &self.grading;
        let cat = x.category();
        let f = cat.field();
        let (b, _) = self.objects[o1];
        let (c, _) = self.objects[o2];
        let mut out = cat.zero(b, c);
        for (r, k) in self.hom(o1, o2).iter().zip(coords) {
            for (o, e) in out.coords.iter_mut().zip(x.element(r).coords) {
                *o = f.add(o, &f.mul(k, &e));
            }
        }
        out
    }

    /// `f ∘ g` for `g` in `hom(o1, o2)` and `f` in `hom(o2, o3)`; composition
    /// is inherited from the base.
    pub fn compose(
        &self,
        o1: usize,
        o2: usize,
        o3: usize,
        f: &[Scalar],
        g: &[Scalar],
    ) -> Result<Vec<Scalar>, SmashError> {
        let cat = self.grading.category();
        let comp = cat.compose(&self.project(o2, o3, f), &self.project(o1, o2, g))?;
        let homog = self.grading.to_homogeneous(&comp);
        let allowed = self.hom(o1, o3);
        let (b, _) = self.objects[o1];
        let (d, _) = self.objects[o3];
        for (k, c) in homog.iter().enumerate() {
            if !c.is_zero() && !allowed.contains(&BasisRef::new(b, d, k)) {
                return Err(SmashError::InvalidGrading(format!(
                    "composite leaves hom({}, {})",
                    self.object_label(o1),
                    self.object_label(o3)
                )));
            }
        }
        Ok(allowed.iter().map(|r| homog[r.index].clone()).collect())
    }
}

/// Star comparison between a smash category and its base.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoveringReport {
    pub mismatches: Vec<String>,
}

impl CoveringReport {
    pub fn is_covering(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for CoveringReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mismatches.is_empty() {
            write!(f, "stars match")
        } else {
            write!(f, "{}", self.mismatches.join("; "))
        }
    }
}

/// For every object `(b, s)` and base object `c`, the morphisms out of and
/// into `(b, s)` over `c` project bijectively onto the basis of `hom(b, c)`
/// and `hom(c, b)`, and every listed basis element has the right degree.
pub fn verify_covering(s: &SmashCategory) -> CoveringReport {
    let x = &s.grading;
    let g = x.group();
    let cat = x.category();
    let mut mismatches = Vec::new();
    for (o, &(b, _)) in s.objects.iter().enumerate() {
        for c in 0..cat.num_objects() {
            let fibre: Vec<usize> = (0..s.num_objects()).filter(|&p| s.objects[p].0 == c).collect();
            for outgoing in [true, false] {
                let mut seen: Vec<usize> = Vec::new();
                for &p in &fibre {
                    let (src, tgt) = if outgoing { (o, p) } else { (p, o) };
                    for r in s.hom(src, tgt) {
                        let (sb, tb) = (s.objects[src], s.objects[tgt]);
                        let want = g.sub(&s.elements[sb.1], &s.elements[tb.1]);
                        if r.src != sb.0 || r.tgt != tb.0 || x.degree(r) != &want {
                            mismatches.push(format!(
                                "{} is listed in hom({}, {}) with the wrong endpoints or degree",
                                x.label(r),
                                s.object_label(src),
                                s.object_label(tgt)
                            ));
                        }
                        seen.push(r.index);
                    }
                }
                seen.sort_unstable();
                let (bb, cc) = if outgoing { (b, c) } else { (c, b) };
                let want: Vec<usize> = (0..cat.dim(bb, cc)).collect();
                if seen != want {
                    mismatches.push(format!(
                        "{} star of {} over {}: dimension {} against {} in the base",
                        if outgoing { "outgoing" } else { "incoming" },
                        s.object_label(o),
                        cat.object_name(c),
                        seen.len(),
                        want.len()
                    ));
                }
            }
        }
    }
    CoveringReport { mismatches }
}

/// The deck transformation `(b, t) -> (b, s + t)`, acting as the identity on
/// morphism coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckTransformation {
    pub shift: GroupElement,
    pub object_map: Vec<usize>,
}

pub fn group_action(s: &SmashCategory, shift: &GroupElement) -> Result<DeckTransformation, SmashError> {
    let g = s.grading.group();
    if !g.contains(shift) {
        return Err(SmashError::Mismatch(format!("{shift} is not an element of {g}")));
    }
    let object_map = s
        .objects
        .iter()
        .map(|&(b, t)| s.object_index(b, &g.add(shift, &s.elements[t])).expect("closed under addition"))
        .collect();
    Ok(DeckTransformation { shift: shift.clone(), object_map })
}

impl DeckTransformation {
    /// Whether the map is a functor: it carries each hom-space onto the
    /// hom-space between the image objects with the same basis.
    pub fn is_functor(&self, s: &SmashCategory) -> bool {
        let n = s.num_objects();
        (0..n).all(|a| (0..n).all(|b| s.hom(a, b) == s.hom(self.object_map[a], self.object_map[b])))
    }

    pub fn is_identity(&self) -> bool {
        self.object_map.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// Galois checks over all deck transformations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisReport {
    pub functorial: bool,
    pub free: bool,
    pub fibre_transitive: bool,
}

impl GaloisReport {
    pub fn is_galois(&self) -> bool {
        self.functorial && self.free && self.fibre_transitive
    }
}

pub fn galois_report(s: &SmashCategory) -> Result<GaloisReport, SmashError> {
    let actions = s.elements.iter().map(|e| group_action(s, e)).collect::<Result<Vec<_>, _>>()?;
    let functorial = actions.iter().all(|a| a.is_functor(s));
    let free =
        actions.iter().filter(|a| !a.shift.is_zero()).all(|a| a.object_map.iter().enumerate().all(|(i, &j)| i != j));
    let n_base = s.grading.category().num_objects();
    let fibre_transitive = (0..n_base).all(|b| {
        let start = s.object_index(b, &s.grading.group().zero()).expect("zero is an element");
        let mut orbit: Vec<usize> = actions.iter().map(|a| a.object_map[start]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        let fibre: Vec<usize> = (0..s.num_objects()).filter(|&o| s.objects[o].0 == b).collect();
        orbit == fibre
    });
    Ok(GaloisReport { functorial, free, fibre_transitive })
}

/// A `J`-morphism of smash products `(b, s) -> (b, mu(s) + h_b)` whose action
/// on morphisms is `J`.
#[derive(Clone, Debug)]
pub struct CoveringMorphism {
    pub source: SmashCategory,
    pub target: SmashCategory,
    pub functor: Functor,
    pub mu: GroupHom,
    pub offsets: Vec<GroupElement>,
    pub object_map: Vec<usize>,
}

impl CoveringMorphism {
    fn new(
        source: SmashCategory,
        target: SmashCategory,
        functor: Functor,
        mu: GroupHom,
        offsets: Vec<GroupElement>,
    ) -> Result<CoveringMorphism, SmashError> {
        let gy = target.grading.group();
        let object_map = source
            .objects
            .iter()
            .map(|&(b, s)| {
                let t = gy.add(&mu.apply(&source.elements[s]), &offsets[b]);
                target.object_index(b, &t).expect("target group element")
            })
            .collect();
        let m = CoveringMorphism { source, target, functor, mu, offsets, object_map };
        m.verify()?;
        Ok(m)
    }

    /// Checks `F_Y ∘ H = J ∘ F_X`: each basis morphism of the source smash is
    /// sent by `J` into the hom-space between the image objects.
    pub fn verify(&self) -> Result<(), SmashError> {
        let (sx, sy) = (&self.source, &self.target);
        let n = sx.num_objects();
        for o1 in 0..n {
            for o2 in 0..n {
                for r in sx.hom(o1, o2) {
                    let image = sy.grading.to_homogeneous(&self.functor.apply(&sx.grading.element(r)));
                    let allowed = sy.hom(self.object_map[o1], self.object_map[o2]);
                    let escapes = image
                        .iter()
                        .enumerate()
                        .any(|(k, c)| !c.is_zero() && !allowed.contains(&BasisRef::new(r.src, r.tgt, k)));
                    if escapes {
                        return Err(SmashError::DiagramFails(format!(
                            "{} in hom({}, {})",
                            sx.grading.label(r),
                            sx.object_label(o1),
                            sx.object_label(o2)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `H_b(s)`.
    pub fn fibre_map(&self, b: usize, s: &GroupElement) -> GroupElement {
        self.target.grading.group().add(&self.mu.apply(s), &self.offsets[b])
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &CoveringMorphism) -> Result<CoveringMorphism, SmashError> {
        let functor = self.functor.compose(&first.functor)?;
        let mu = self.mu.compose(&first.mu)?;
        let gz = self.target.grading.group();
        let offsets = first.offsets.iter().zip(&self.offsets).map(|(h1, h2)| gz.add(&self.mu.apply(h1), h2)).collect();
        CoveringMorphism::new(first.source.clone(), self.target.clone(), functor, mu, offsets)
    }
}

/// Builds the covering morphism realizing a grading morphism `(mu, J)` with
/// offsets `h_b = -deg_Y(J(v_b))` from connectors of degree zero.
pub fn covering_morphism_from_grading_morphism(
    sx: &SmashCategory,
    sy: &SmashCategory,
    mu: &GroupHom,
    j: &Functor,
    connectors: &ConnectorFamily,
) -> Result<CoveringMorphism, SmashError> {
    let (x, y) = (&sx.grading, &sy.grading);
    if mu.source() != x.group() || mu.target() != y.group() {
        return Err(SmashError::Mismatch("group map endpoints differ from the structural groups".into()));
    }
    let cat = x.category();
    if connectors.walks.len() != cat.num_objects() {
        return Err(SmashError::Mismatch("one connector per object is required".into()));
    }
    let mut offsets = Vec::with_capacity(connectors.walks.len());
    for (b, v) in connectors.walks.iter().enumerate() {
        if v.src() != connectors.root || v.tgt() != b {
            return Err(SmashError::Mismatch(format!("connector {b} does not run from the base object to it")));
        }
        let d = walk_degree(x, v)?;
        if !d.is_zero() {
            return Err(SmashError::BadConnector { object: cat.object_name(b).to_string(), degree: d.to_string() });
        }
        let image = map_walk(j, v, x, y)?;
        offsets.push(y.group().neg(&walk_degree(y, &image.walk)?));
    }
    CoveringMorphism::new(sx.clone(), sy.clone(), j.clone(), mu.clone(), offsets)
}

/// The deck-group map of a covering morphism and the check that it agrees
/// with the grading morphism induced by `J`.
#[derive(Clone, Debug)]
pub struct LambdaReport {
    pub lambda: GroupHom,
    pub mu_j: GroupHom,
    pub equation_holds: bool,
}

/// The unique `lambda` with `H ∘ f_s = f_lambda(s) ∘ H` for every deck
/// transformation `f_s`, plus `mu_J` computed from walk degrees.
pub fn lambda_map(m: &CoveringMorphism, b0: usize) -> Result<LambdaReport, SmashError> {
    let (x, y) = (&m.source.grading, &m.target.grading);
    let (gx, gy) = (x.group(), y.group());
    let base = m.fibre_map(b0, &gx.zero());
    let images: Vec<GroupElement> = gx.generators().iter().map(|s| gy.sub(&m.fibre_map(b0, s), &base)).collect();
    let lambda = GroupHom::new(gx.clone(), gy.clone(), images)
        .map_err(|e| SmashError::NotEquivariant(format!("deck map is not a homomorphism: {e}")))?;
    for (b, _) in x.category().quiver().vertices().iter().enumerate() {
        for s in &m.source.elements {
            for t in &m.source.elements {
                let lhs = m.fibre_map(b, &gx.add(s, t));
                let rhs = gy.add(&lambda.apply(s), &m.fibre_map(b, t));
                if lhs != rhs {
                    return Err(SmashError::NotEquivariant(format!(
                        "object {}, shift {s}, element {t}",
                        x.category().object_name(b)
                    )));
                }
            }
        }
    }
    let mu_j = induced_hom(x, y, &m.functor, b0)?;
    let equation_holds = mu_j == lambda;
    Ok(LambdaReport { lambda, mu_j, equation_holds })
}

/// Number of group elements, for reports.
pub fn group_size(s: &SmashCategory) -> usize {
    s.grading.group().order().and_then(|o| o.to_usize()).unwrap_or(s.elements.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::quotient_grading;
    use crate::grpkit::AbelianGroup;
    use crate::linrep::{build_category, FieldSpec, LinComb, Path, PresentedCategory, Quiver};
    use std::sync::Arc;

    fn q(x: i64) -> Scalar {
        Scalar::from_integer(x.into())
    }

    fn dual_numbers() -> Arc<PresentedCategory> {
        let quiver = Quiver::new(&["o"], &[("x", "o", "o")]).unwrap();
        let f = FieldSpec::Rationals;
        let x2 = LinComb::new(&f, 0, 0, vec![(q(1), Path::new(&quiver, vec![0, 0]).unwrap())]).unwrap();
        Arc::new(build_category(quiver, vec![x2], Some(2), f).unwrap())
    }

    fn roundtrip() -> Arc<PresentedCategory> {
        let quiver = Quiver::new(&["x", "y"], &[("alpha", "x", "y"), ("beta", "y", "x")]).unwrap();
        let f = FieldSpec::Rationals;
        let ab = LinComb::new(&f, 1, 1, vec![(q(1), Path::from_ids(&quiver, &["alpha", "beta"]).unwrap())]).unwrap();
        let ba = LinComb::new(&f, 0, 0, vec![(q(1), Path::from_ids(&quiver, &["beta", "alpha"]).unwrap())]).unwrap();
        Arc::new(build_category(quiver, vec![ab, ba], Some(2), f).unwrap())
    }

    fn c2_grading(cat: Arc<PresentedCategory>, arrow_degrees: &[i64]) -> Grading {
        let c2 = AbelianGroup::cyclic(2);
        let d: Vec<_> = arrow_degrees.iter().map(|&k| c2.element_i64(&[k])).collect();
        Grading::from_arrow_degrees(cat, c2, &d).unwrap().validated().unwrap()
    }

    #[test]
    fn trivial_smash_is_the_base() {
        let cat = roundtrip();
        let s = build_smash(&Grading::trivial(cat.clone())).unwrap();
        assert_eq!(s.num_objects(), 2);
        assert_eq!(s.total_dimension(), cat.total_dimension());
        assert!(verify_covering(&s).is_covering());
        assert!(galois_report(&s).unwrap().is_galois());
    }

    #[test]
    fn dual_numbers_smash() {
        let s = build_smash(&c2_grading(dual_numbers(), &[1])).unwrap();
        assert_eq!(s.num_objects(), 2);
        assert_eq!(s.total_dimension(), 4);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(s.dim(a, b), 1);
            }
        }
        assert!(verify_covering(&s).is_covering());
        let g = s.grading.group().element_i64(&[1]);
        let act = group_action(&s, &g).unwrap();
        assert_eq!(act.object_map, vec![1, 0]);
        assert!(galois_report(&s).unwrap().is_galois());
        // x from (o,1) to (o,0) composed with x from (o,0) to (o,1) vanishes
        assert_eq!(s.compose(0, 1, 0, &[q(1)], &[q(1)]).unwrap(), vec![q(0)]);
    }

    #[test]
    fn roundtrip_smash() {
        let s = build_smash(&c2_grading(roundtrip(), &[1, 0])).unwrap();
        assert_eq!(s.num_objects(), 4);
        let g = s.grading.group().clone();
        let x0 = s.object_index(0, &g.zero()).unwrap();
        let y0 = s.object_index(1, &g.zero()).unwrap();
        let y1 = s.object_index(1, &g.element_i64(&[1])).unwrap();
        assert_eq!(s.dim(x0, y1), 1);
        assert_eq!(s.dim(x0, y0), 0);
        assert!(verify_covering(&s).is_covering());
        assert!(galois_report(&s).unwrap().is_galois());
    }

    #[test]
    fn deleted_morphism_is_detected() {
        let mut s = build_smash(&c2_grading(dual_numbers(), &[1])).unwrap();
        s.homs[1].clear();
        let report = verify_covering(&s);
        assert!(!report.is_covering());
        assert!(report.mismatches[0].contains("star"));
    }

    #[test]
    fn infinite_group_rejected() {
        let z = AbelianGroup::free(1);
        let x = Grading::from_arrow_degrees(dual_numbers(), z.clone(), &[z.element_i64(&[1])]).unwrap();
        assert!(matches!(build_smash(&x), Err(SmashError::InfiniteGroup(_))));
    }

    #[test]
    fn kronecker_swap_covering() {
        let quiver = Quiver::new(&["x", "y"], &[("alpha", "x", "y"), ("beta", "x", "y")]).unwrap();
        let cat = Arc::new(build_category(quiver, vec![], None, FieldSpec::Rationals).unwrap());
        let z = AbelianGroup::free(1);
        let v = Grading::from_arrow_degrees(cat.clone(), z.clone(), &[z.element_i64(&[1]), z.zero()]).unwrap();
        let c2 = AbelianGroup::cyclic(2);
        let pi = GroupHom::new(z, c2.clone(), vec![c2.element_i64(&[1])]).unwrap();
        let v2 = quotient_grading(&v.validated().unwrap(), &pi).unwrap();
        let s = build_smash(&v2).unwrap();
        let swap = Functor::from_arrow_images(
            cat.clone(),
            cat.clone(),
            &[cat.basis_morphism(0, 1, 1), cat.basis_morphism(0, 1, 0)],
        )
        .unwrap();
        let conn = ConnectorFamily::trivial_degree(&v2, 0).unwrap();
        let mu = GroupHom::identity(&c2);
        let m = covering_morphism_from_grading_morphism(&s, &s, &mu, &swap, &conn).unwrap();
        let lam = lambda_map(&m, 0).unwrap();
        assert!(lam.lambda.is_identity());
        assert!(lam.equation_holds);
        let mm = m.compose(&m).unwrap();
        let lam2 = lambda_map(&mm, 0).unwrap();
        assert_eq!(lam2.lambda, lam.lambda.compose(&lam.lambda).unwrap());

        let id = Functor::identity(cat);
        let idm = covering_morphism_from_grading_morphism(&s, &s, &mu, &id, &conn).unwrap();
        assert!(idm.object_map.iter().enumerate().all(|(i, &j)| i == j));
        // the swap with the zero map on C2 does not make the diagram commute
        let zero = GroupHom::zero(&c2, &c2);
        assert!(matches!(
            covering_morphism_from_grading_morphism(&s, &s, &zero, &swap, &conn),
            Err(SmashError::DiagramFails(_))
        ));
    }
}
