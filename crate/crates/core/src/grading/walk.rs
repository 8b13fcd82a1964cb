use num_bigint::BigInt;

use super::{Grading, GradingError};
use crate::grpkit::GroupElement;

/// The `index`-th homogeneous basis element of `hom(src, tgt)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisRef {
    pub src: usize,
    pub tgt: usize,
    pub index: usize,
}

impl BasisRef {
    pub fn new(src: usize, tgt: usize, index: usize) -> Self {
        BasisRef { src, tgt, index }
    }
}

/// A walk of homogeneous basis elements and their formal inverses.
///
/// Steps are stored in written order: `steps[0]` is traversed last. A step
/// `(f, -1)` goes from the target of `f` back to its source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    src: usize,
    tgt: usize,
    steps: Vec<(BasisRef, i8)>,
}

fn step_ends(f: &BasisRef, sign: i8) -> (usize, usize) {
    if sign > 0 {
        (f.src, f.tgt)
    } else {
        (f.tgt, f.src)
    }
}

impl Walk {
    pub fn empty(b: usize) -> Walk {
        Walk { src: b, tgt: b, steps: Vec::new() }
    }

    pub fn step(f: BasisRef, sign: i8) -> Walk {
        Self::new(vec![(f, sign)]).expect("single step")
    }

    /// Walk from nonempty written-order steps with signs `±1`.
    pub fn new(steps: Vec<(BasisRef, i8)>) -> Result<Walk, GradingError> {
        if steps.is_empty() {
            return Err(GradingError::NotConcatenable("a nonempty walk needs at least one step".into()));
        }
        if let Some((f, s)) = steps.iter().find(|(_, s)| *s != 1 && *s != -1) {
            return Err(GradingError::NotConcatenable(format!("sign {s} on {f:?}")));
        }
        for (k, w) in steps.windows(2).enumerate() {
            let later_src = step_ends(&w[0].0, w[0].1).0;
            let earlier_tgt = step_ends(&w[1].0, w[1].1).1;
            if later_src != earlier_tgt {
                return Err(GradingError::NotConcatenable(format!(
                    "step {} ends at object {} but step {} starts at object {}",
                    k + 1,
                    earlier_tgt,
                    k,
                    later_src
                )));
            }
        }
        let src = {
            let (f, s) = steps.last().expect("nonempty");
            step_ends(f, *s).0
        };
        let tgt = step_ends(&steps[0].0, steps[0].1).1;
        Ok(Walk { src, tgt, steps })
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn steps(&self) -> &[(BasisRef, i8)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.src == self.tgt
    }

    pub fn inverse(&self) -> Walk {
        let steps = self.steps.iter().rev().map(|(f, s)| (*f, -s)).collect();
        Walk { src: self.tgt, tgt: self.src, steps }
    }

    /// `self ∘ first`: traverse `first`, then `self`.
    pub fn after(&self, first: &Walk) -> Result<Walk, GradingError> {
        if first.tgt != self.src {
            return Err(GradingError::NotConcatenable(format!(
                "walk ends at object {} but the next starts at object {}",
                first.tgt, self.src
            )));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&first.steps);
        Ok(Walk { src: first.src, tgt: self.tgt, steps })
    }

    /// `k`-fold power of a closed walk; negative powers use the inverse.
    pub fn power(&self, k: &BigInt) -> Result<Walk, GradingError> {
        if !self.is_closed() {
            return Err(GradingError::NotConcatenable("only closed walks have powers".into()));
        }
        let base = if k.sign() == num_bigint::Sign::Minus { self.inverse() } else { self.clone() };
        let n: usize =
            k.magnitude().try_into().map_err(|_| GradingError::NotConcatenable(format!("power {k} too large")))?;
        let mut steps = Vec::with_capacity(base.steps.len() * n);
        for _ in 0..n {
            steps.extend_from_slice(&base.steps);
        }
        Ok(Walk { src: self.src, tgt: self.tgt, steps })
    }

    pub fn display(&self, x: &Grading) -> String {
        if self.steps.is_empty() {
            return format!("e_{}", x.category().object_name(self.src));
        }
        let parts: Vec<String> = self.steps.iter().map(|(f, s)| format!("({},{})", x.label(f), s)).collect();
        parts.join("")
    }
}

/// Signed sum of the degrees of the steps.
pub fn walk_degree(x: &Grading, w: &Walk) -> Result<GroupElement, GradingError> {
    let g = x.group();
    let mut total = g.zero();
    for (f, s) in w.steps() {
        x.check_ref(f)?;
        let d = x.degree(f);
        total = if *s > 0 { g.add(&total, d) } else { g.sub(&total, d) };
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::super::tests::*;
    use super::*;
    use crate::grpkit::AbelianGroup;

    fn kronecker_v() -> Grading {
        let z = AbelianGroup::free(1);
        let t = z.element_i64(&[1]);
        Grading::from_arrow_degrees(kronecker(), z.clone(), &[t, z.zero()]).unwrap()
    }

    #[test]
    fn kronecker_cycle_has_degree_t() {
        let v = kronecker_v();
        let alpha = BasisRef::new(0, 1, 0);
        let beta = BasisRef::new(0, 1, 1);
        let w = Walk::new(vec![(beta, -1), (alpha, 1)]).unwrap();
        assert_eq!((w.src(), w.tgt()), (0, 0));
        assert_eq!(walk_degree(&v, &w).unwrap(), v.group().element_i64(&[1]));
        assert_eq!(walk_degree(&v, &Walk::empty(1)).unwrap(), v.group().zero());
        let back_and_forth = Walk::new(vec![(alpha, -1), (alpha, 1)]).unwrap();
        assert!(walk_degree(&v, &back_and_forth).unwrap().is_zero());
        assert_eq!(walk_degree(&v, &w.power(&BigInt::from(-3)).unwrap()).unwrap(), v.group().element_i64(&[-3]));
    }

    #[test]
    fn concatenation_checks() {
        let alpha = BasisRef::new(0, 1, 0);
        assert!(Walk::new(vec![(alpha, 1), (alpha, 1)]).is_err());
        assert!(Walk::new(vec![]).is_err());
        assert!(Walk::new(vec![(alpha, 2)]).is_err());
        let a = Walk::step(alpha, 1);
        assert!(a.after(&a).is_err());
        assert_eq!(a.inverse().after(&a).unwrap().len(), 2);
    }

    #[test]
    fn bad_reference() {
        let v = kronecker_v();
        let w = Walk::step(BasisRef::new(0, 1, 5), 1);
        assert!(matches!(walk_degree(&v, &w), Err(GradingError::BadReference(_))));
    }
}
