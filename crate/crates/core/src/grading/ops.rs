use std::sync::Arc;

use num_traits::Zero;

use super::tree::closed_walk_subgroup;
use super::walk::{BasisRef, Walk};
use super::{Grading, GradingError};
use crate::grpkit::{generated_subgroup, GroupHom};
use crate::linrep::{Functor, Scalar};

/// Image of one homogeneous element of `x` under `j`, as the leading `y`
/// basis element of its component together with that coefficient.
pub fn homogeneous_image(
    j: &Functor,
    x: &Grading,
    y: &Grading,
    f: &BasisRef,
) -> Result<(BasisRef, Scalar), GradingError> {
    if !same(j.source(), x.category()) || !same(j.target(), y.category()) {
        return Err(GradingError::CategoryMismatch);
    }
    x.check_ref(f)?;
    let image = y.to_homogeneous(&j.apply(&x.element(f)));
    let mut support = image.iter().enumerate().filter(|(_, c)| !c.is_zero());
    let Some((lead, coef)) = support.next() else {
        return Err(GradingError::NotHomogeneous(format!("{} (sent to zero)", x.label(f))));
    };
    let degree = &y.degrees(f.src, f.tgt)[lead];
    if support.any(|(k, _)| &y.degrees(f.src, f.tgt)[k] != degree) {
        return Err(GradingError::NotHomogeneous(x.label(f)));
    }
    Ok((BasisRef { src: f.src, tgt: f.tgt, index: lead }, coef.clone()))
}

/// Checks that `j` sends every homogeneous basis element of `x` into a single
/// component of `y`.
pub fn check_homogeneous(j: &Functor, x: &Grading, y: &Grading) -> Result<(), GradingError> {
    for f in x.basis_refs() {
        homogeneous_image(j, x, y, &f)?;
    }
    Ok(())
}

/// A walk transported along a functor, with the scalar each step picked up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappedWalk {
    pub walk: Walk,
    pub scalars: Vec<Scalar>,
}

/// Replaces each step `(f, e)` by `(J(f), e)`.
pub fn map_walk(j: &Functor, w: &Walk, x: &Grading, y: &Grading) -> Result<MappedWalk, GradingError> {
    if w.is_empty() {
        if !same(j.source(), x.category()) || !same(j.target(), y.category()) {
            return Err(GradingError::CategoryMismatch);
        }
        return Ok(MappedWalk { walk: w.clone(), scalars: Vec::new() });
    }
    let mut steps = Vec::with_capacity(w.len());
    let mut scalars = Vec::with_capacity(w.len());
    for (f, s) in w.steps() {
        let (g, c) = homogeneous_image(j, x, y, f)?;
        steps.push((g, *s));
        scalars.push(c);
    }
    Ok(MappedWalk { walk: Walk::new(steps)?, scalars })
}

/// Pushes the degrees of `x` forward along a surjection of groups.
pub fn quotient_grading(x: &Grading, pi: &GroupHom) -> Result<Grading, GradingError> {
    if pi.source() != x.group() {
        return Err(GradingError::Shape(format!("map starts at {} but the grading is by {}", pi.source(), x.group())));
    }
    if !pi.is_surjective() {
        return Err(GradingError::NotSurjective);
    }
    let out = x.regraded(pi.target().clone(), |d| pi.apply(d));
    if x.is_validated() {
        out.validated()
    } else {
        Ok(out)
    }
}

/// Replaces the structural group by the subgroup of closed-walk degrees at `b0`.
pub fn restrict_to_image(x: &Grading, b0: usize) -> Result<Grading, GradingError> {
    let gens = closed_walk_subgroup(x, b0)?;
    let (h, incl) = generated_subgroup(x.group(), &gens);
    for f in x.basis_refs() {
        if incl.preimage(x.degree(&f)).is_none() {
            return Err(GradingError::DegreeOutsideImage(x.label(&f)));
        }
    }
    let out = x.regraded(h, |d| incl.preimage(d).expect("checked above"));
    if x.is_validated() {
        out.validated()
    } else {
        Ok(out)
    }
}

fn same<T: PartialEq>(a: &Arc<T>, b: &Arc<T>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::super::tests::*;
    use super::super::tree::is_connected_grading;
    use super::super::validate_grading;
    use super::*;
    use crate::grpkit::AbelianGroup;
    use crate::linrep::{build_category, FieldSpec, LinComb, Path, Quiver};

    fn swap() -> Functor {
        let c = kronecker();
        let imgs = vec![c.basis_morphism(0, 1, 1), c.basis_morphism(0, 1, 0)];
        Functor::from_arrow_images(c.clone(), c, &imgs).unwrap()
    }

    fn v() -> Grading {
        let z = AbelianGroup::free(1);
        Grading::from_arrow_degrees(kronecker(), z.clone(), &[z.element_i64(&[1]), z.zero()]).unwrap()
    }

    #[test]
    fn swap_exchanges_the_arrows() {
        let (x, j) = (v(), swap());
        let alpha = BasisRef::new(0, 1, 0);
        let beta = BasisRef::new(0, 1, 1);
        let w = Walk::new(vec![(beta, -1), (alpha, 1)]).unwrap();
        let m = map_walk(&j, &w, &x, &x).unwrap();
        assert_eq!(m.walk, Walk::new(vec![(alpha, -1), (beta, 1)]).unwrap());
        let id = Functor::identity(x.category().clone());
        assert_eq!(map_walk(&id, &w, &x, &x).unwrap().walk, w);
    }

    #[test]
    fn scaling_functor_keeps_references() {
        let c = bq(1);
        // alpha, beta, gamma, delta scaled by 3, 1, 3, 2 keeps the relation
        let imgs: Vec<_> = [3, 1, 3, 2]
            .iter()
            .enumerate()
            .map(|(a, &k)| {
                let mut m = c.path_morphism(&Path::arrow(c.quiver(), a));
                for v in m.coords.iter_mut() {
                    *v *= q(k);
                }
                m
            })
            .collect();
        let j = Functor::from_arrow_images(c.clone(), c.clone(), &imgs).unwrap();
        let x = bq_u(1);
        let alpha = BasisRef::new(0, 1, 0);
        let beta = BasisRef::new(1, 2, 0);
        let w = Walk::new(vec![(beta, 1), (alpha, 1)]).unwrap();
        let m = map_walk(&j, &w, &x, &x).unwrap();
        assert_eq!(m.walk, w);
        assert_eq!(m.scalars, vec![q(1), q(3)]);
    }

    #[test]
    fn non_homogeneous_functor() {
        // alpha -> alpha + beta mixes the degrees of V
        let c = kronecker();
        let mut sum = c.basis_morphism(0, 1, 0);
        sum.coords[1] = q(1);
        let j = Functor::from_arrow_images(c.clone(), c.clone(), &[sum, c.basis_morphism(0, 1, 1)]).unwrap();
        let w = Walk::step(BasisRef::new(0, 1, 0), 1);
        assert!(matches!(map_walk(&j, &w, &v(), &v()), Err(GradingError::NotHomogeneous(_))));
    }

    #[test]
    fn quotients() {
        let x = v().validated().unwrap();
        let z = x.group().clone();
        let id = GroupHom::identity(&z);
        assert_eq!(quotient_grading(&x, &id).unwrap(), x);
        let c2 = AbelianGroup::cyclic(2);
        let pi = GroupHom::new(z.clone(), c2.clone(), vec![c2.element_i64(&[1])]).unwrap();
        let x2 = quotient_grading(&x, &pi).unwrap();
        assert!(x2.is_validated());
        assert!(is_connected_grading(&x2, 0).unwrap());
        let zero = GroupHom::zero(&z, &c2);
        assert!(matches!(quotient_grading(&x, &zero), Err(GradingError::NotSurjective)));
    }

    #[test]
    fn truncated_polynomial_quotient() {
        let quiver = Quiver::new(&["o"], &[("x", "o", "o")]).unwrap();
        let f = FieldSpec::Rationals;
        let x3 = LinComb::new(&f, 0, 0, vec![(q(1), Path::new(&quiver, vec![0; 3]).unwrap())]).unwrap();
        let cat = Arc::new(build_category(quiver, vec![x3], Some(3), f).unwrap());
        let z = AbelianGroup::free(1);
        let maximal = Grading::from_arrow_degrees(cat, z.clone(), &[z.element_i64(&[1])]).unwrap().validated().unwrap();
        assert!(is_connected_grading(&maximal, 0).unwrap());
        let c3 = AbelianGroup::cyclic(3);
        let pi = GroupHom::new(z, c3.clone(), vec![c3.element_i64(&[1])]).unwrap();
        let graded = quotient_grading(&maximal, &pi).unwrap();
        assert!(validate_grading(&graded).is_valid());
        assert!(is_connected_grading(&graded, 0).unwrap());
    }

    #[test]
    fn restriction() {
        let cat = roundtrip();
        let z2 = AbelianGroup::free(2);
        let x = Grading::from_arrow_degrees(cat.clone(), z2.clone(), &[z2.zero(), z2.element_i64(&[1, 0])])
            .unwrap()
            .validated()
            .unwrap();
        assert!(!is_connected_grading(&x, 0).unwrap());
        let r = restrict_to_image(&x, 0).unwrap();
        assert_eq!(r.group(), &AbelianGroup::free(1));
        assert!(is_connected_grading(&r, 0).unwrap());

        // cycle degree (1,0) + (-1,0) = 0 leaves nothing to restrict to
        let y =
            Grading::from_arrow_degrees(cat, z2.clone(), &[z2.element_i64(&[1, 0]), z2.element_i64(&[-1, 0])]).unwrap();
        assert!(matches!(restrict_to_image(&y, 0), Err(GradingError::DegreeOutsideImage(_))));

        let z = AbelianGroup::free(1);
        let t = z.element_i64(&[1]);
        let k = Grading::from_arrow_degrees(kronecker(), z, &[t.clone(), t]).unwrap();
        assert!(matches!(restrict_to_image(&k, 0), Err(GradingError::DegreeOutsideImage(_))));

        let u = bq_u(2);
        assert_eq!(restrict_to_image(&u, 0).unwrap().group(), u.group());
    }
}
