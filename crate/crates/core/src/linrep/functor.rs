use std::sync::Arc;

use super::category::{Morphism, PresentedCategory};
use super::linalg::Matrix;
use super::quiver::Path;
use super::LinrepError;

/// An identity-on-objects linear functor between presented categories,
/// stored as one matrix per hom-space (columns are images of basis elements).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    source: Arc<PresentedCategory>,
    target: Arc<PresentedCategory>,
    matrices: Vec<Matrix>,
    invertible: Vec<bool>,
}

/// Checks shapes, identities and composition on every composable pair of
/// basis elements, then returns the functor.
pub fn build_functor(
    source: Arc<PresentedCategory>,
    target: Arc<PresentedCategory>,
    matrices: Vec<Matrix>,
) -> Result<Functor, LinrepError> {
    if source.quiver().vertices() != target.quiver().vertices() {
        return Err(LinrepError::DimensionMismatch("source and target have different objects".into()));
    }
    if source.field() != target.field() {
        return Err(LinrepError::DimensionMismatch(format!("fields {} and {} differ", source.field(), target.field())));
    }
    let n = source.num_objects();
    if matrices.len() != n * n {
        return Err(LinrepError::DimensionMismatch(format!("expected {} matrices, got {}", n * n, matrices.len())));
    }
    for (x, y) in source.hom_pairs() {
        let m = &matrices[x * n + y];
        if m.rows() != target.dim(x, y) || m.cols() != source.dim(x, y) {
            return Err(LinrepError::DimensionMismatch(format!(
                "hom({}, {}) needs a {}x{} matrix, got {}x{}",
                source.object_name(x),
                source.object_name(y),
                target.dim(x, y),
                source.dim(x, y),
                m.rows(),
                m.cols()
            )));
        }
    }
    let f = *source.field();
    let invertible = matrices.iter().map(|m| m.inverse(&f).is_some()).collect();
    let func = Functor { source, target, matrices, invertible };
    func.check_laws()?;
    Ok(func)
}

impl Functor {
    /// Functor determined by the images of the arrows; fails unless the
    /// relations and all paths of bound length are sent to zero.
    pub fn from_arrow_images(
        source: Arc<PresentedCategory>,
        target: Arc<PresentedCategory>,
        images: &[Morphism],
    ) -> Result<Functor, LinrepError> {
        let q = source.quiver();
        if images.len() != q.arrows().len() {
            return Err(LinrepError::DimensionMismatch(format!(
                "expected {} arrow images, got {}",
                q.arrows().len(),
                images.len()
            )));
        }
        for (a, img) in q.arrows().iter().zip(images) {
            if img.src != a.src || img.tgt != a.tgt || img.coords.len() != target.dim(a.src, a.tgt) {
                return Err(LinrepError::DimensionMismatch(format!("image of arrow {} has the wrong shape", a.id)));
            }
        }
        let image_of = |p: &Path| -> Result<Morphism, LinrepError> {
            let mut m = target.identity(p.src());
            for &a in p.arrows().iter().rev() {
                m = target.compose(&images[a], &m)?;
            }
            Ok(m)
        };
        let f = *source.field();
        let n = source.num_objects();
        let mut matrices = Vec::with_capacity(n * n);
        for (x, y) in source.hom_pairs() {
            let h = source.hom(x, y);
            let path_images = h.paths().iter().map(image_of).collect::<Result<Vec<_>, _>>()?;
            let cols: Vec<Vec<_>> = h.basis_indices().iter().map(|&k| path_images[k].coords.clone()).collect();
            // every path must map to the image of its normal form
            for (k, p) in h.paths().iter().enumerate() {
                let mut expect = target.zero(x, y).coords;
                for (c, col) in h.path_coords(k).iter().zip(&cols) {
                    for (e, v) in expect.iter_mut().zip(col) {
                        *e = f.add(e, &f.mul(c, v));
                    }
                }
                if expect != path_images[k].coords {
                    return Err(LinrepError::NotFunctorial(format!("the ideal is not preserved at {}", p.display(q))));
                }
            }
            for p in super::quiver::enumerate_paths(q, x, y, source.bound() + 1) {
                if p.len() == source.bound() && !image_of(&p)?.is_zero() {
                    return Err(LinrepError::NotFunctorial(format!(
                        "{} lies in the ideal but its image does not vanish",
                        p.display(q)
                    )));
                }
            }
            matrices.push(Matrix::from_columns(cols, target.dim(x, y)));
        }
        build_functor(source, target, matrices)
    }

    pub fn identity(cat: Arc<PresentedCategory>) -> Functor {
        let matrices = cat.hom_pairs().map(|(x, y)| Matrix::identity(cat.dim(x, y))).collect();
        build_functor(cat.clone(), cat, matrices).expect("identity is a functor")
    }

    pub fn source(&self) -> &Arc<PresentedCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PresentedCategory> {
        &self.target
    }

    pub fn matrix(&self, x: usize, y: usize) -> &Matrix {
        &self.matrices[x * self.source.num_objects() + y]
    }

    pub fn is_invertible_at(&self, x: usize, y: usize) -> bool {
        self.invertible[x * self.source.num_objects() + y]
    }

    pub fn is_isomorphism(&self) -> bool {
        self.invertible.iter().all(|&b| b)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.matrices.iter().all(Matrix::is_identity)
    }

    pub fn apply(&self, m: &Morphism) -> Morphism {
        let coords = self.matrix(m.src, m.tgt).apply(self.source.field(), &m.coords);
        Morphism { src: m.src, tgt: m.tgt, coords }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Functor) -> Result<Functor, LinrepError> {
        if *other.target != *self.source {
            return Err(LinrepError::DimensionMismatch("functors do not chain".into()));
        }
        let f = *self.source.field();
        let matrices = self.matrices.iter().zip(&other.matrices).map(|(a, b)| a.mul(&f, b)).collect();
        build_functor(other.source.clone(), self.target.clone(), matrices)
    }

    pub fn inverse(&self) -> Option<Functor> {
        let f = *self.source.field();
        let matrices = self.matrices.iter().map(|m| m.inverse(&f)).collect::<Option<Vec<_>>>()?;
        Some(
            build_functor(self.target.clone(), self.source.clone(), matrices)
                .expect("inverse of a functor is a functor"),
        )
    }

    fn check_laws(&self) -> Result<(), LinrepError> {
        let (s, t) = (&*self.source, &*self.target);
        let name = |x: usize| s.object_name(x);
        for x in 0..s.num_objects() {
            if self.apply(&s.identity(x)) != t.identity(x) {
                return Err(LinrepError::NotFunctorial(format!("identity of {} is not preserved", name(x))));
            }
        }
        let n = s.num_objects();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for j in 0..s.dim(x, y) {
                        let g = s.basis_morphism(x, y, j);
                        let fg_img = self.apply(&g);
                        for i in 0..s.dim(y, z) {
                            let f = s.basis_morphism(y, z, i);
                            let lhs = self.apply(&s.compose(&f, &g)?);
                            let rhs = t.compose(&self.apply(&f), &fg_img)?;
                            if lhs != rhs {
                                return Err(LinrepError::NotFunctorial(format!(
                                    "composition fails on the pair ({} , {})",
                                    s.hom(y, z).basis_path(i).display(s.quiver()),
                                    s.hom(x, y).basis_path(j).display(s.quiver())
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrep::{build_category, FieldSpec, LinComb, Quiver, Scalar};

    fn q(x: i64) -> Scalar {
        Scalar::from_integer(x.into())
    }

    fn bq(qv: i64) -> Arc<PresentedCategory> {
        let quiver = Quiver::new(
            &["x", "y", "z", "z'"],
            &[("alpha", "x", "y"), ("beta", "y", "z"), ("gamma", "x", "z"), ("delta", "z", "z'")],
        )
        .unwrap();
        let f = FieldSpec::Rationals;
        let rel = LinComb::new(
            &f,
            0,
            3,
            vec![
                (q(1), Path::from_ids(&quiver, &["delta", "gamma"]).unwrap()),
                (q(-qv), Path::from_ids(&quiver, &["delta", "beta", "alpha"]).unwrap()),
            ],
        )
        .unwrap();
        Arc::new(build_category(quiver, vec![rel], None, f).unwrap())
    }

    fn arrow_images(src: &PresentedCategory, tgt: &PresentedCategory, gamma_shift: i64) -> Vec<Morphism> {
        let quiver = src.quiver();
        let f = src.field();
        (0..quiver.arrows().len())
            .map(|a| {
                let mut m = tgt.path_morphism(&Path::arrow(quiver, a));
                if quiver.arrows()[a].id == "gamma" {
                    let ba = tgt.path_morphism(&Path::from_ids(quiver, &["beta", "alpha"]).unwrap());
                    for (c, d) in m.coords.iter_mut().zip(&ba.coords) {
                        *c = f.add(c, &f.mul(&q(gamma_shift), d));
                    }
                }
                m
            })
            .collect()
    }

    #[test]
    fn bq_isomorphisms() {
        for (a, b) in [(0, 1), (1, 2), (2, 0), (1, 1)] {
            let (s, t) = (bq(a), bq(b));
            let func = Functor::from_arrow_images(s.clone(), t.clone(), &arrow_images(&s, &t, a - b)).unwrap();
            assert!(func.is_isomorphism());
            let inv = func.inverse().unwrap();
            assert!(inv.compose(&func).unwrap().is_identity());
            assert!(func.compose(&inv).unwrap().is_identity());
        }
    }

    #[test]
    fn wrong_shift_breaks_the_ideal() {
        let (s, t) = (bq(0), bq(1));
        assert!(matches!(
            Functor::from_arrow_images(s.clone(), t.clone(), &arrow_images(&s, &t, 0)),
            Err(LinrepError::NotFunctorial(_))
        ));
    }

    #[test]
    fn identity_functor() {
        let c = bq(2);
        let id = Functor::identity(c.clone());
        assert!(id.is_identity());
        let m = c.basis_morphism(0, 2, 1);
        assert_eq!(id.apply(&m), m);
    }

    #[test]
    fn kronecker_swap() {
        let quiver = Quiver::new(&["x", "y"], &[("alpha", "x", "y"), ("beta", "x", "y")]).unwrap();
        let c = Arc::new(build_category(quiver, vec![], None, FieldSpec::Rationals).unwrap());
        let swap = vec![c.basis_morphism(0, 1, 1), c.basis_morphism(0, 1, 0)];
        let j = Functor::from_arrow_images(c.clone(), c.clone(), &swap).unwrap();
        assert!(j.is_isomorphism());
        assert!(!j.is_identity());
        assert!(j.compose(&j).unwrap().is_identity());
    }

    #[test]
    fn shape_and_law_errors() {
        let c = bq(1);
        let mut ms: Vec<Matrix> = c.hom_pairs().map(|(x, y)| Matrix::identity(c.dim(x, y))).collect();
        ms[2] = Matrix::identity(1);
        assert!(matches!(build_functor(c.clone(), c.clone(), ms), Err(LinrepError::DimensionMismatch(_))));
        // scaling the identity of x by 2 breaks the identity law
        let mut ms: Vec<Matrix> = c.hom_pairs().map(|(x, y)| Matrix::identity(c.dim(x, y))).collect();
        ms[0] = Matrix::from_rows(vec![vec![q(2)]], 1);
        assert!(matches!(build_functor(c.clone(), c.clone(), ms), Err(LinrepError::NotFunctorial(_))));
    }
}
