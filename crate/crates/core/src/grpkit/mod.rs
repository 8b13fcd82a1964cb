//! Finitely generated abelian groups, homomorphisms between them, group
//! presentations, and limits of finite diagrams of groups.
//!
//! Groups are kept in invariant-factor form `Z/d1 ⊕ ... ⊕ Z/dk ⊕ Z^r` with
//! `d1 | d2 | ... | dk` and every `di >= 2`, so two groups are isomorphic
//! exactly when their [`AbelianGroup`] values are equal. Internally an element
//! is a row vector over the canonical generators: torsion coordinates first,
//! then free coordinates.

mod intmat;
mod lattice;
mod limit;
mod presentation;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use intmat::IntMatrix;
pub use lattice::{cokernel, kernel_lattice, left_kernel, solve_left, subgroup, Cokernel, Presentation};
pub use limit::{diagram_limit, hom_space, DiagramLimit, HomGroup};
pub use presentation::{abelianize, Abelianization, GroupPresentation, Letter, Word};
pub use snf::{smith_normal_form, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid invariant factors {0:?}: each must be >= 2 and divide the next")]
    InvalidInvariants(Vec<String>),
    #[error("element has shape ({free}, {torsion}) but the group needs ({want_free}, {want_torsion})")]
    ElementShape { free: usize, torsion: usize, want_free: usize, want_torsion: usize },
    #[error("homomorphism is not well defined: generator {generator} has order {order} but its image does not")]
    NotWellDefined { generator: usize, order: String },
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("group {0} is infinite")]
    Infinite(String),
    #[error("enumeration of {size} elements exceeds the cap {cap}")]
    TooLarge { size: String, cap: usize },
    #[error("element is not in the subgroup")]
    NotInSubgroup,
    #[error("homomorphism endpoints do not match")]
    Mismatch,
    #[error("relator mentions undeclared generator `{0}`")]
    UnknownGenerator(String),
    #[error("arrow {arrow} refers to node {node}, but only {nodes} nodes were declared")]
    BadArrow { arrow: usize, node: usize, nodes: usize },
}

/// A finitely generated abelian group in invariant-factor form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

/// An element of an [`AbelianGroup`]; torsion residues are kept in `[0, d)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new<T: Into<BigInt>>(rank: usize, torsion: Vec<T>) -> Result<Self, GroupError> {
        let torsion: Vec<BigInt> = torsion.into_iter().map(Into::into).collect();
        let bad =
            torsion.iter().any(|d| d < &BigInt::from(2)) || torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0]));
        if bad {
            return Err(GroupError::InvalidInvariants(torsion.iter().map(|d| d.to_string()).collect()));
        }
        Ok(AbelianGroup { rank, torsion })
    }

    pub(crate) fn from_invariants_unchecked(rank: usize, torsion: Vec<BigInt>) -> Self {
        debug_assert!(torsion.iter().all(|d| d > &BigInt::one()));
        AbelianGroup { rank, torsion }
    }

    pub fn trivial() -> Self {
        AbelianGroup { rank: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: vec![] }
    }

    /// `Z/n`; `cyclic(1)` is trivial and `cyclic(0)` is `Z`.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => AbelianGroup { rank: 0, torsion: vec![BigInt::from(n)] },
        }
    }

    /// Canonical form of an arbitrary direct sum `Z^rank ⊕ Z/n1 ⊕ Z/n2 ...`.
    pub fn from_orders(rank: usize, orders: &[u64]) -> Self {
        let n = orders.len();
        let mut rel = IntMatrix::zeros(n, n + rank);
        for (i, &d) in orders.iter().enumerate() {
            rel[(i, i)] = BigInt::from(d);
        }
        cokernel(&Presentation::new(n + rank, rel)).group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn num_generators(&self) -> usize {
        self.torsion.len() + self.rank
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of the i-th canonical generator; `None` for free generators.
    pub fn generator_order(&self, i: usize) -> Option<&BigInt> {
        self.torsion.get(i)
    }

    pub fn presentation(&self) -> Presentation {
        let n = self.num_generators();
        let mut rel = IntMatrix::zeros(self.torsion.len(), n);
        for (i, d) in self.torsion.iter().enumerate() {
            rel[(i, i)] = d.clone();
        }
        Presentation::new(n, rel)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { free: vec![BigInt::zero(); self.rank], torsion: vec![BigInt::zero(); self.torsion.len()] }
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut v = vec![BigInt::zero(); self.num_generators()];
        v[i] = BigInt::one();
        self.reduce(&v)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.num_generators()).map(|i| self.generator(i)).collect()
    }

    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<GroupElement, GroupError> {
        if free.len() != self.rank || torsion.len() != self.torsion.len() {
            return Err(GroupError::ElementShape {
                free: free.len(),
                torsion: torsion.len(),
                want_free: self.rank,
                want_torsion: self.torsion.len(),
            });
        }
        let mut v = torsion;
        v.extend(free);
        Ok(self.reduce(&v))
    }

    /// Element from small integer coordinates (torsion first, then free).
    pub fn element_i64(&self, coords: &[i64]) -> GroupElement {
        assert_eq!(coords.len(), self.num_generators());
        self.reduce(&coords.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    /// Element from a coordinate vector over the canonical generators.
    pub fn reduce(&self, v: &[BigInt]) -> GroupElement {
        assert_eq!(v.len(), self.num_generators(), "coordinate vector has the wrong length");
        let t = self.torsion.len();
        GroupElement {
            torsion: v[..t].iter().zip(&self.torsion).map(|(x, d)| x.mod_floor(d)).collect(),
            free: v[t..].to_vec(),
        }
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        e.free.len() == self.rank
            && e.torsion.len() == self.torsion.len()
            && e.torsion.iter().zip(&self.torsion).all(|(x, d)| !x.is_negative() && x < d)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let v: Vec<BigInt> = a.coords().iter().zip(b.coords()).map(|(x, y)| x + y).collect();
        self.reduce(&v)
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let v: Vec<BigInt> = a.coords().iter().map(|x| -x).collect();
        self.reduce(&v)
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: &BigInt, a: &GroupElement) -> GroupElement {
        let v: Vec<BigInt> = a.coords().iter().map(|x| x * k).collect();
        self.reduce(&v)
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Every element, in lexicographic order of torsion coordinates.
    pub fn elements(&self, cap: usize) -> Result<Vec<GroupElement>, GroupError> {
        let order = self.order().ok_or_else(|| GroupError::Infinite(self.to_string()))?;
        if order > BigInt::from(cap) {
            return Err(GroupError::TooLarge { size: order.to_string(), cap });
        }
        let mut out = vec![self.zero()];
        for (i, d) in self.torsion.iter().enumerate() {
            let d = d.to_usize().expect("bounded by cap");
            let mut next = Vec::with_capacity(out.len() * d);
            for e in &out {
                for k in 0..d {
                    let mut f = e.clone();
                    f.torsion[i] = BigInt::from(k);
                    next.push(f);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Order of an element, `None` if infinite.
    pub fn element_order(&self, e: &GroupElement) -> Option<BigInt> {
        if e.free.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(e.torsion.iter().zip(&self.torsion).fold(BigInt::one(), |acc, (x, d)| {
            let o = d / x.gcd(d);
            acc.lcm(&o)
        }))
    }
}

impl GroupElement {
    /// Coordinates over the canonical generators (torsion first).
    pub fn coords(&self) -> Vec<BigInt> {
        let mut v = self.torsion.clone();
        v.extend(self.free.iter().cloned());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({self})")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords().iter().map(|x| x.to_string()).collect();
        write!(f, "({})", c.join(","))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A homomorphism between canonical groups, given by generator images.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: AbelianGroup,
    target: AbelianGroup,
    /// `source.num_generators() x target.num_generators()`, rows reduced.
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source: AbelianGroup, target: AbelianGroup, images: Vec<GroupElement>) -> Result<Self, GroupError> {
        if images.len() != source.num_generators() {
            return Err(GroupError::ImageCount { expected: source.num_generators(), got: images.len() });
        }
        for img in &images {
            if !target.contains(img) {
                return Err(GroupError::ElementShape {
                    free: img.free.len(),
                    torsion: img.torsion.len(),
                    want_free: target.rank(),
                    want_torsion: target.torsion().len(),
                });
            }
        }
        let rows: Vec<Vec<BigInt>> = images.iter().map(GroupElement::coords).collect();
        let matrix = IntMatrix::from_rows(rows, target.num_generators());
        Self::from_matrix(source, target, &matrix)
    }

    /// Homomorphism from an integer matrix whose rows are (unreduced) images
    /// of the source generators.
    pub fn from_matrix(source: AbelianGroup, target: AbelianGroup, matrix: &IntMatrix) -> Result<Self, GroupError> {
        assert_eq!(matrix.rows(), source.num_generators());
        assert_eq!(matrix.cols(), target.num_generators());
        let rows: Vec<Vec<BigInt>> = (0..matrix.rows()).map(|i| target.reduce(matrix.row(i)).coords()).collect();
        let matrix = IntMatrix::from_rows(rows, target.num_generators());
        for (i, d) in source.torsion().iter().enumerate() {
            let img = target.reduce(matrix.row(i));
            if !target.scale(d, &img).is_zero() {
                return Err(GroupError::NotWellDefined { generator: i, order: d.to_string() });
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn identity(g: &AbelianGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), matrix: IntMatrix::identity(g.num_generators()) }
    }

    pub fn zero(source: &AbelianGroup, target: &AbelianGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(source.num_generators(), target.num_generators()),
        }
    }

    /// Multiplication by `k` on `g`.
    pub fn scalar(g: &AbelianGroup, k: i64) -> Self {
        let mut m = IntMatrix::identity(g.num_generators());
        for i in 0..g.num_generators() {
            m[(i, i)] = BigInt::from(k);
        }
        Self::from_matrix(g.clone(), g.clone(), &m).expect("scalar maps are well defined")
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn images(&self) -> Vec<GroupElement> {
        (0..self.matrix.rows()).map(|i| self.target.reduce(self.matrix.row(i))).collect()
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        self.target.reduce(&self.matrix.left_apply(&x.coords()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupHom) -> Result<GroupHom, GroupError> {
        if other.target != self.source {
            return Err(GroupError::Mismatch);
        }
        GroupHom::from_matrix(other.source.clone(), self.target.clone(), &other.matrix.mul(&self.matrix))
    }

    /// Pointwise difference `self - other`.
    pub fn sub(&self, other: &GroupHom) -> Result<GroupHom, GroupError> {
        if self.source != other.source || self.target != other.target {
            return Err(GroupError::Mismatch);
        }
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] -= &other.matrix[(i, j)];
            }
        }
        GroupHom::from_matrix(self.source.clone(), self.target.clone(), &m)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == GroupHom::identity(&self.source)
    }

    /// The image subgroup's cokernel `target / im(self)`.
    pub fn cokernel(&self) -> AbelianGroup {
        subgroup_quotient(&self.target, &self.images()).quotient
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    /// Kernel as an abstract group with its inclusion into the source.
    pub fn kernel(&self) -> (AbelianGroup, GroupHom) {
        let src = self.source.presentation();
        let gens = kernel_lattice(&src, &self.target.presentation(), &self.matrix);
        let (k, incl) = subgroup(&src, &gens);
        let incl = GroupHom::from_matrix(k.clone(), self.source.clone(), &incl).expect("inclusion is well defined");
        (k, incl)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    /// Some preimage of `y`, if `y` lies in the image.
    pub fn preimage(&self, y: &GroupElement) -> Option<GroupElement> {
        let stacked = self.matrix.vstack(&self.target.presentation().relations);
        let x = solve_left(&stacked, &y.coords())?;
        Some(self.source.reduce(&x[..self.source.num_generators()]))
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.images().iter().map(|e| e.to_string()).collect();
        write!(f, "GroupHom({} -> {}: [{}])", self.source, self.target, imgs.join(", "))
    }
}

/// Result of [`subgroup_quotient`].
#[derive(Clone, Debug)]
pub struct SubgroupQuotient {
    pub is_full: bool,
    pub quotient: AbelianGroup,
    pub projection: GroupHom,
}

/// `G / <gens>` in canonical form; `is_full` iff the quotient is trivial.
pub fn subgroup_quotient(g: &AbelianGroup, gens: &[GroupElement]) -> SubgroupQuotient {
    let n = g.num_generators();
    let extra = IntMatrix::from_rows(gens.iter().map(GroupElement::coords).collect(), n);
    let p = Presentation::new(n, g.presentation().relations.vstack(&extra));
    let cok = cokernel(&p);
    let projection = GroupHom::from_matrix(g.clone(), cok.group.clone(), &cok.projection)
        .expect("quotient projection is well defined");
    SubgroupQuotient { is_full: cok.group.is_trivial(), quotient: cok.group, projection }
}

/// The subgroup generated by `gens` as an abstract group, with its inclusion.
pub fn generated_subgroup(g: &AbelianGroup, gens: &[GroupElement]) -> (AbelianGroup, GroupHom) {
    let n = g.num_generators();
    let m = IntMatrix::from_rows(gens.iter().map(GroupElement::coords).collect(), n);
    let (h, incl) = subgroup(&g.presentation(), &m);
    let incl = GroupHom::from_matrix(h.clone(), g.clone(), &incl).expect("inclusion is well defined");
    (h, incl)
}

/// Integer coefficients expressing `target` as a combination of `gens` in `g`.
pub fn express_in_generators(g: &AbelianGroup, gens: &[GroupElement], target: &GroupElement) -> Option<Vec<BigInt>> {
    let n = g.num_generators();
    let m = IntMatrix::from_rows(gens.iter().map(GroupElement::coords).collect(), n);
    let stacked = m.vstack(&g.presentation().relations);
    let x = solve_left(&stacked, &target.coords())?;
    Some(x[..gens.len()].to_vec())
}
