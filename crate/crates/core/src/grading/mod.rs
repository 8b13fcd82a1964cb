//! Group gradings of presented categories, given by a homogeneous basis of
//! every hom-space and a degree for each basis element.

mod ops;
mod tree;
mod walk;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::grpkit::{AbelianGroup, GroupElement, GroupError};
use crate::linrep::{LinrepError, Matrix, Morphism, PresentedCategory, Scalar};

pub use ops::{check_homogeneous, homogeneous_image, map_walk, quotient_grading, restrict_to_image, MappedWalk};
pub use tree::{closed_walk_subgroup, is_connected_grading, spanning_tree, ConnectorFamily, SpanningTree};
pub use walk::{walk_degree, BasisRef, Walk};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("base change for hom({0}) is not invertible")]
    NotInvertible(String),
    #[error("invalid grading: {0}")]
    Invalid(ValidationReport),
    #[error("no homogeneous basis element {0}")]
    BadReference(String),
    #[error("walk steps are not concatenable: {0}")]
    NotConcatenable(String),
    #[error("object {0} is not reachable from the base object")]
    Disconnected(String),
    #[error("grading is not connected: {0}")]
    NotConnected(String),
    #[error("functor is not homogeneous: image of {0} mixes degrees")]
    NotHomogeneous(String),
    #[error("group map is not surjective")]
    NotSurjective,
    #[error("degree of {0} lies outside the closed-walk subgroup")]
    DegreeOutsideImage(String),
    #[error("functor and gradings live on different categories")]
    CategoryMismatch,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linrep(#[from] LinrepError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct HomGrading {
    base_change: Matrix,
    inverse: Matrix,
    degrees: Vec<GroupElement>,
}

/// A grading of a presented category by a finitely generated abelian group.
///
/// Each hom-space carries an invertible base-change matrix whose columns are
/// the homogeneous basis elements in quotient-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    category: Arc<PresentedCategory>,
    group: AbelianGroup,
    spaces: Vec<HomGrading>,
    validated: bool,
}

impl Grading {
    /// Per hom-space (row-major over object pairs) base changes and degrees.
    pub fn new(
        category: Arc<PresentedCategory>,
        group: AbelianGroup,
        base_changes: Vec<Matrix>,
        degrees: Vec<Vec<GroupElement>>,
    ) -> Result<Grading, GradingError> {
        let n = category.num_objects();
        if base_changes.len() != n * n || degrees.len() != n * n {
            return Err(GradingError::Shape(format!("expected {} hom-spaces", n * n)));
        }
        let f = *category.field();
        let mut spaces = Vec::with_capacity(n * n);
        for (((x, y), base_change), degrees) in category.hom_pairs().zip(base_changes).zip(degrees) {
            let d = category.dim(x, y);
            let label = format!("{}, {}", category.object_name(x), category.object_name(y));
            if base_change.rows() != d || base_change.cols() != d || degrees.len() != d {
                return Err(GradingError::Shape(format!("hom({label}) has dimension {d}")));
            }
            if let Some(e) = degrees.iter().find(|e| !group.contains(e)) {
                return Err(GradingError::Shape(format!("degree {e} in hom({label}) is not an element of {group}")));
            }
            let inverse = base_change.inverse(&f).ok_or(GradingError::NotInvertible(label))?;
            spaces.push(HomGrading { base_change, inverse, degrees });
        }
        Ok(Grading { category, group, spaces, validated: false })
    }

    /// Grading in which the quotient path basis is homogeneous.
    pub fn path_basis(
        category: Arc<PresentedCategory>,
        group: AbelianGroup,
        degrees: Vec<Vec<GroupElement>>,
    ) -> Result<Grading, GradingError> {
        let bases = category.hom_pairs().map(|(x, y)| Matrix::identity(category.dim(x, y))).collect();
        Self::new(category, group, bases, degrees)
    }

    /// Path-basis grading where each basis path gets the sum of its arrow degrees.
    pub fn from_arrow_degrees(
        category: Arc<PresentedCategory>,
        group: AbelianGroup,
        arrow_degrees: &[GroupElement],
    ) -> Result<Grading, GradingError> {
        if arrow_degrees.len() != category.quiver().arrows().len() {
            return Err(GradingError::Shape(format!(
                "expected {} arrow degrees, got {}",
                category.quiver().arrows().len(),
                arrow_degrees.len()
            )));
        }
        let degrees = category
            .hom_pairs()
            .map(|(x, y)| {
                let h = category.hom(x, y);
                (0..h.dim()).map(|i| group.sum(h.basis_path(i).arrows().iter().map(|&a| &arrow_degrees[a]))).collect()
            })
            .collect();
        Self::path_basis(category, group, degrees)
    }

    /// The grading by the trivial group.
    pub fn trivial(category: Arc<PresentedCategory>) -> Grading {
        let g = AbelianGroup::trivial();
        let degrees = category.hom_pairs().map(|(x, y)| vec![g.zero(); category.dim(x, y)]).collect();
        let mut x = Self::path_basis(category, g, degrees).expect("shapes match");
        x.validated = true;
        x
    }

    /// Runs [`validate_grading`] and marks the grading as valid.
    pub fn validated(mut self) -> Result<Grading, GradingError> {
        let report = validate_grading(&self);
        if !report.is_valid() {
            return Err(GradingError::Invalid(report));
        }
        self.validated = true;
        Ok(self)
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn category(&self) -> &Arc<PresentedCategory> {
        &self.category
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    fn space(&self, x: usize, y: usize) -> &HomGrading {
        &self.spaces[x * self.category.num_objects() + y]
    }

    pub fn base_change(&self, x: usize, y: usize) -> &Matrix {
        &self.space(x, y).base_change
    }

    /// Inverse of [`Grading::base_change`]: quotient coordinates to homogeneous ones.
    pub fn inverse_base_change(&self, x: usize, y: usize) -> &Matrix {
        &self.space(x, y).inverse
    }

    pub fn degrees(&self, x: usize, y: usize) -> &[GroupElement] {
        &self.space(x, y).degrees
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.category.dim(x, y)
    }

    pub fn check_ref(&self, f: &BasisRef) -> Result<(), GradingError> {
        let n = self.category.num_objects();
        if f.src >= n || f.tgt >= n || f.index >= self.dim(f.src, f.tgt) {
            return Err(GradingError::BadReference(format!("{}->{}#{}", f.src, f.tgt, f.index)));
        }
        Ok(())
    }

    pub fn degree(&self, f: &BasisRef) -> &GroupElement {
        &self.space(f.src, f.tgt).degrees[f.index]
    }

    /// All homogeneous basis elements, by object pair and then index.
    pub fn basis_refs(&self) -> Vec<BasisRef> {
        self.category
            .hom_pairs()
            .flat_map(|(x, y)| (0..self.dim(x, y)).map(move |index| BasisRef { src: x, tgt: y, index }))
            .collect()
    }

    /// `x->y#i` with object names.
    pub fn label(&self, f: &BasisRef) -> String {
        format!("{}->{}#{}", self.category.object_name(f.src), self.category.object_name(f.tgt), f.index)
    }

    /// A homogeneous basis element in quotient-basis coordinates.
    pub fn element(&self, f: &BasisRef) -> Morphism {
        Morphism { src: f.src, tgt: f.tgt, coords: self.base_change(f.src, f.tgt).column(f.index) }
    }

    /// Coordinates of a morphism over the homogeneous basis.
    pub fn to_homogeneous(&self, m: &Morphism) -> Vec<Scalar> {
        self.space(m.src, m.tgt).inverse.apply(self.category.field(), &m.coords)
    }

    /// Whether every homogeneous component has dimension at most one.
    pub fn is_thin(&self) -> bool {
        self.spaces.iter().all(|s| {
            let mut d = s.degrees.clone();
            d.sort();
            d.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Whether the basis element is a scalar multiple of an identity.
    pub fn is_identity_multiple(&self, f: &BasisRef) -> bool {
        if f.src != f.tgt {
            return false;
        }
        let fl = self.category.field();
        let e = self.element(f).coords;
        let id = self.category.identity(f.src).coords;
        // e and id are dependent iff every 2x2 minor vanishes
        (0..e.len()).all(|i| (0..e.len()).all(|j| fl.mul(&e[i], &id[j]) == fl.mul(&e[j], &id[i])))
    }

    /// Same decomposition with new degrees in another group.
    pub(crate) fn regraded(&self, group: AbelianGroup, degree: impl Fn(&GroupElement) -> GroupElement) -> Grading {
        let spaces = self
            .spaces
            .iter()
            .map(|s| HomGrading {
                base_change: s.base_change.clone(),
                inverse: s.inverse.clone(),
                degrees: s.degrees.iter().map(&degree).collect(),
            })
            .collect();
        Grading { category: self.category.clone(), group, spaces, validated: false }
    }
}

/// One failure of the grading axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The identity of an object has components outside degree zero.
    Identity { object: String, degrees: Vec<GroupElement> },
    /// `second ∘ first` has a component of the wrong degree.
    Composition { first: String, second: String, expected: GroupElement, found: GroupElement, component: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Identity { object, degrees } => {
                let d: Vec<String> = degrees.iter().map(ToString::to_string).collect();
                write!(f, "identity of {object} has components of degree {}", d.join(", "))
            }
            Violation::Composition { first, second, expected, found, component } => {
                write!(f, "{second} ∘ {first} has component {component} of degree {found}, expected {expected}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let v: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", v.join("; "))
    }
}

/// Checks that identities have degree zero and that the composite of
/// homogeneous elements of degrees `s` and `t` is homogeneous of degree `s + t`.
pub fn validate_grading(x: &Grading) -> ValidationReport {
    let cat = &x.category;
    let g = &x.group;
    let mut violations = Vec::new();
    for b in 0..cat.num_objects() {
        let coords = x.to_homogeneous(&cat.identity(b));
        let degrees: Vec<GroupElement> = coords
            .iter()
            .zip(x.degrees(b, b))
            .filter(|(c, d)| !c.is_zero() && !d.is_zero())
            .map(|(_, d)| d.clone())
            .collect();
        if !degrees.is_empty() {
            violations.push(Violation::Identity { object: cat.object_name(b).to_string(), degrees });
        }
    }
    let n = cat.num_objects();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for j in 0..x.dim(a, b) {
                    let first = BasisRef { src: a, tgt: b, index: j };
                    let gm = x.element(&first);
                    for i in 0..x.dim(b, c) {
                        let second = BasisRef { src: b, tgt: c, index: i };
                        let fm = x.element(&second);
                        let expected = g.add(x.degree(&second), x.degree(&first));
                        let comp = cat.compose(&fm, &gm).expect("chained by construction");
                        for (k, coef) in x.to_homogeneous(&comp).iter().enumerate() {
                            let found = &x.degrees(a, c)[k];
                            if !coef.is_zero() && *found != expected {
                                violations.push(Violation::Composition {
                                    first: x.label(&first),
                                    second: x.label(&second),
                                    expected: expected.clone(),
                                    found: found.clone(),
                                    component: x.label(&BasisRef { src: a, tgt: c, index: k }),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    ValidationReport { violations }
}
