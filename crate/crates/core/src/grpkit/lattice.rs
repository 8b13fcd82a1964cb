//! Integer lattice computations underlying the abelian group operations.
//!
//! A [`Presentation`] is the group `Z^n / rowspace(relations)`. Everything
//! else in `grpkit` is reduced to cokernels, left kernels and linear solves
//! over such presentations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::intmat::IntMatrix;
use super::snf::smith_normal_form;
use super::AbelianGroup;

/// `Z^gens` modulo the row span of `relations`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub gens: usize,
    pub relations: IntMatrix,
}

impl Presentation {
    pub fn new(gens: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.cols(), gens);
        Presentation { gens, relations }
    }

    pub fn free(gens: usize) -> Self {
        Presentation { gens, relations: IntMatrix::zeros(0, gens) }
    }

    /// Direct sum of presentations, generators concatenated in order.
    pub fn direct_sum(parts: &[Presentation]) -> Self {
        let gens = parts.iter().map(|p| p.gens).sum();
        let relations = IntMatrix::block_diag(&parts.iter().map(|p| p.relations.clone()).collect::<Vec<_>>());
        Presentation { gens, relations }
    }
}

/// Canonical form of a presented group together with coordinate changes.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: AbelianGroup,
    /// `gens x group.num_generators()`: maps presentation coordinates to
    /// (unreduced) canonical coordinates.
    pub projection: IntMatrix,
    /// `group.num_generators() x gens`: a lift of each canonical generator.
    pub section: IntMatrix,
}

pub fn cokernel(p: &Presentation) -> Cokernel {
    let snf = smith_normal_form(&p.relations);
    let n = p.gens;
    let diag: Vec<BigInt> = snf.invariants();
    let mut kept = Vec::new();
    let mut torsion = Vec::new();
    for (j, d) in diag.iter().enumerate() {
        if !d.is_one() {
            kept.push(j);
            torsion.push(d.clone());
        }
    }
    let rank = n - diag.len();
    kept.extend(diag.len()..n);
    let group = AbelianGroup::from_invariants_unchecked(rank, torsion);
    let mut projection = IntMatrix::zeros(n, kept.len());
    for (c, &j) in kept.iter().enumerate() {
        for i in 0..n {
            projection[(i, c)] = snf.v[(i, j)].clone();
        }
    }
    let section = snf.v_inv.select_rows(&kept);
    Cokernel { group, projection, section }
}

/// Rows generate the lattice `{x : x * m = 0}`.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let idx: Vec<usize> = (r..m.rows()).collect();
    snf.u.select_rows(&idx)
}

/// Some integer `x` with `x * m == target`, if one exists.
pub fn solve_left(m: &IntMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(target.len(), m.cols());
    let snf = smith_normal_form(m);
    let r = snf.rank();
    // x U^{-1} D = target V
    let tv = snf.v.left_apply(target);
    let mut y = vec![BigInt::zero(); m.rows()];
    for (j, t) in tv.iter().enumerate() {
        if j < r {
            let d = &snf.d[(j, j)];
            let (q, rem) = t.div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            y[j] = q;
        } else if !t.is_zero() {
            return None;
        }
    }
    Some(snf.u.left_apply(&y))
}

/// Generators (in `Z^src.gens`) of the kernel of the map `src -> tgt` given
/// by `map` (`src.gens x tgt.gens`, rows are images of generators).
pub fn kernel_lattice(src: &Presentation, tgt: &Presentation, map: &IntMatrix) -> IntMatrix {
    assert_eq!(map.rows(), src.gens);
    assert_eq!(map.cols(), tgt.gens);
    let stacked = map.vstack(&tgt.relations);
    left_kernel(&stacked).column_range(0, src.gens)
}

/// The subgroup of `p` generated by the rows of `gens`, as an abstract group
/// in canonical form, with the inclusion given as lifts of its canonical
/// generators in `Z^p.gens`.
pub fn subgroup(p: &Presentation, gens: &IntMatrix) -> (AbelianGroup, IntMatrix) {
    assert_eq!(gens.cols(), p.gens);
    let k = gens.rows();
    let stacked = gens.vstack(&p.relations);
    let rel = left_kernel(&stacked).column_range(0, k);
    let cok = cokernel(&Presentation::new(k, rel));
    let inclusion = cok.section.mul(gens);
    (cok.group, inclusion)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cokernel_of_diagonal() {
        let p = Presentation::new(3, IntMatrix::from_i64(&[&[2, 0, 0], &[0, 3, 0]]));
        let c = cokernel(&p);
        assert_eq!(c.group, AbelianGroup::new(1, vec![6]).unwrap());
    }

    #[test]
    fn solve_left_finds_combination() {
        let m = IntMatrix::from_i64(&[&[2], &[3]]);
        let x = solve_left(&m, &bi(&[1])).unwrap();
        assert_eq!(m.left_apply(&x), bi(&[1]));
        let m = IntMatrix::from_i64(&[&[2], &[4]]);
        assert!(solve_left(&m, &bi(&[1])).is_none());
    }

    #[test]
    fn left_kernel_rows_annihilate() {
        let m = IntMatrix::from_i64(&[&[1, 2], &[2, 4], &[3, 6]]);
        let k = left_kernel(&m);
        assert_eq!(k.rows(), 2);
        assert!(k.mul(&m).is_zero());
    }

    #[test]
    fn subgroup_of_z_by_two() {
        let (g, incl) = subgroup(&Presentation::free(1), &IntMatrix::from_i64(&[&[2]]));
        assert_eq!(g, AbelianGroup::free(1));
        assert_eq!(num_traits::Signed::abs(&incl[(0, 0)]), BigInt::from(2));
    }
}
