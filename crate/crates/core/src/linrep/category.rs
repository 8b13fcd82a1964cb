use std::collections::HashMap;

use num_traits::Zero;

use super::field::{FieldSpec, Scalar};
use super::linalg::Echelon;
use super::quiver::{enumerate_paths, LinComb, Path, Quiver};
use super::LinrepError;

/// One hom-space `hom(src, tgt)` of a presented category: the paths of
/// length below the bound, the ideal inside their span, and the quotient
/// basis (non-pivot paths of the echelonized ideal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub src: usize,
    pub tgt: usize,
    paths: Vec<Path>,
    path_index: HashMap<Vec<usize>, usize>,
    ideal: Echelon,
    basis: Vec<usize>,
    path_coords: Vec<Vec<Scalar>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn ideal(&self) -> &Echelon {
        &self.ideal
    }

    /// Indices into [`HomSpace::paths`] of the quotient basis.
    pub fn basis_indices(&self) -> &[usize] {
        &self.basis
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.paths[self.basis[i]]
    }

    pub fn path_position(&self, p: &Path) -> Option<usize> {
        self.path_index.get(p.arrows()).copied()
    }

    /// Quotient coordinates of the `k`-th path.
    pub fn path_coords(&self, k: usize) -> &[Scalar] {
        &self.path_coords[k]
    }

    /// Quotient coordinates of a vector over all paths.
    pub fn reduce(&self, f: &FieldSpec, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.ideal.reduce(f, v);
        self.basis.iter().map(|&k| r[k].clone()).collect()
    }
}

/// A morphism given by coordinates over the quotient basis of its hom-space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub src: usize,
    pub tgt: usize,
    pub coords: Vec<Scalar>,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// `kQ/I` with every hom-space materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedCategory {
    quiver: Quiver,
    field: FieldSpec,
    relations: Vec<LinComb>,
    bound: usize,
    homs: Vec<HomSpace>,
}

impl PresentedCategory {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn relations(&self) -> &[LinComb] {
        &self.relations
    }

    /// Paths of this length or longer lie in the ideal.
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn num_objects(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn object_name(&self, v: usize) -> &str {
        self.quiver.vertex_name(v)
    }

    pub fn hom(&self, src: usize, tgt: usize) -> &HomSpace {
        &self.homs[src * self.num_objects() + tgt]
    }

    pub fn dim(&self, src: usize, tgt: usize) -> usize {
        self.hom(src, tgt).dim()
    }

    pub fn total_dimension(&self) -> usize {
        self.homs.iter().map(HomSpace::dim).sum()
    }

    /// `(src, tgt)` pairs in row-major order.
    pub fn hom_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.num_objects();
        (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
    }

    pub fn zero(&self, src: usize, tgt: usize) -> Morphism {
        Morphism { src, tgt, coords: vec![Scalar::zero(); self.dim(src, tgt)] }
    }

    pub fn identity(&self, v: usize) -> Morphism {
        self.path_morphism(&Path::trivial(v))
    }

    pub fn basis_morphism(&self, src: usize, tgt: usize, i: usize) -> Morphism {
        let mut m = self.zero(src, tgt);
        m.coords[i] = self.field.one();
        m
    }

    /// Image of a path in the quotient (zero once its length reaches the bound).
    pub fn path_morphism(&self, p: &Path) -> Morphism {
        let h = self.hom(p.src(), p.tgt());
        match h.path_position(p) {
            Some(k) => Morphism { src: p.src(), tgt: p.tgt(), coords: h.path_coords(k).to_vec() },
            None => self.zero(p.src(), p.tgt()),
        }
    }

    pub fn lincomb_morphism(&self, v: &LinComb) -> Morphism {
        let f = &self.field;
        let mut out = self.zero(v.src(), v.tgt());
        for (p, c) in v.terms() {
            let m = self.path_morphism(p);
            for (o, x) in out.coords.iter_mut().zip(&m.coords) {
                *o = f.add(o, &f.mul(c, x));
            }
        }
        out
    }

    /// Product of the `i`-th basis element of `hom(y, z)` with the `j`-th
    /// basis element of `hom(x, y)`, in coordinates of `hom(x, z)`.
    pub fn basis_product(&self, x: usize, y: usize, z: usize, i: usize, j: usize) -> Vec<Scalar> {
        let p = self.hom(y, z).basis_path(i);
        let q = self.hom(x, y).basis_path(j);
        self.path_morphism(&p.after(q).expect("basis paths chain")).coords
    }

    /// `f ∘ g`.
    pub fn compose(&self, f: &Morphism, g: &Morphism) -> Result<Morphism, LinrepError> {
        if g.tgt != f.src {
            return Err(LinrepError::NotComposable {
                first: format!("{}->{}", self.object_name(g.src), self.object_name(g.tgt)),
                second: format!("{}->{}", self.object_name(f.src), self.object_name(f.tgt)),
            });
        }
        Ok(Morphism { src: g.src, tgt: f.tgt, coords: self.compose_coords(g.src, f.src, f.tgt, &f.coords, &g.coords) })
    }

    /// Coordinates of `f ∘ g` for `f` in `hom(y, z)`, `g` in `hom(x, y)`.
    pub fn compose_coords(&self, x: usize, y: usize, z: usize, f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        let fl = &self.field;
        let mut out = vec![Scalar::zero(); self.dim(x, z)];
        for (i, a) in f.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = fl.mul(a, b);
                for (o, c) in out.iter_mut().zip(self.basis_product(x, y, z, i, j)) {
                    if !c.is_zero() {
                        *o = fl.add(o, &fl.mul(&ab, &c));
                    }
                }
            }
        }
        out
    }

    /// Whether `v` lies in the ideal.
    pub fn ideal_membership(&self, v: &LinComb) -> bool {
        self.lincomb_morphism(v).is_zero()
    }
}

/// Builds `kQ/I` for the ideal generated by `relations`. Acyclic quivers may
/// omit `bound`; cyclic ones must give `N` such that all paths of length `N`
/// lie in the ideal.
pub fn build_category(
    quiver: Quiver,
    relations: Vec<LinComb>,
    bound: Option<usize>,
    field: FieldSpec,
) -> Result<PresentedCategory, LinrepError> {
    field.validate()?;
    for (k, r) in relations.iter().enumerate() {
        if let Some((p, _)) = r.terms().find(|(p, _)| p.len() < 2) {
            return Err(LinrepError::NonAdmissible {
                relation: k,
                detail: format!("term {} has length {}", p.display(&quiver), p.len()),
            });
        }
    }
    let bound = match (quiver.longest_path(), bound) {
        (_, Some(n)) => n,
        (Some(longest), None) => longest + 1,
        (None, None) => return Err(LinrepError::BoundRequired),
    };
    let n = quiver.num_vertices();

    // Translates u * r * s of each relation with at least one term below the
    // bound; terms at or beyond it are dropped (they lie in the ideal once the
    // bound check passes).
    let mut translates: Vec<Vec<LinComb>> = vec![Vec::new(); n * n];
    let mut exact: Vec<Vec<LinComb>> = vec![Vec::new(); n * n];
    for r in relations.iter().filter(|r| !r.is_zero()) {
        let min_len = r.terms().map(|(p, _)| p.len()).min().expect("nonzero");
        let max_len = r.terms().map(|(p, _)| p.len()).max().expect("nonzero");
        if min_len > bound {
            continue;
        }
        for x in 0..n {
            for s in enumerate_paths(&quiver, x, r.src(), bound + 1 - min_len) {
                for y in 0..n {
                    for u in enumerate_paths(&quiver, r.tgt(), y, bound + 1 - min_len - s.len()) {
                        let mut t = LinComb::zero(x, y);
                        for (p, c) in r.terms() {
                            let full = u.after(&p.after(&s).expect("chains")).expect("chains");
                            t.add_term(&field, c.clone(), full)?;
                        }
                        let extra = u.len() + s.len();
                        if extra + max_len <= bound {
                            exact[x * n + y].push(t.clone());
                        }
                        if extra + min_len < bound {
                            translates[x * n + y].push(t);
                        }
                    }
                }
            }
        }
    }

    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let all = enumerate_paths(&quiver, x, y, bound + 1);
            let long: Vec<&Path> = all.iter().filter(|p| p.len() == bound).collect();
            if !long.is_empty() {
                let idx: HashMap<&Path, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
                let span =
                    Echelon::new(&field, exact[x * n + y].iter().map(|t| dense(&field, t, &idx, all.len())), all.len());
                for p in long {
                    let mut e = vec![Scalar::zero(); all.len()];
                    e[idx[p]] = field.one();
                    if !span.contains(&field, &e) {
                        return Err(LinrepError::BadBound { bound, path: p.display(&quiver) });
                    }
                }
            }
            let paths: Vec<Path> = all.into_iter().filter(|p| p.len() < bound).collect();
            let idx: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let ideal = Echelon::new(
                &field,
                translates[x * n + y].iter().map(|t| dense(&field, t, &idx, paths.len())),
                paths.len(),
            );
            let basis = ideal.non_pivots();
            let path_coords = (0..paths.len())
                .map(|k| {
                    let mut e = vec![Scalar::zero(); paths.len()];
                    e[k] = field.one();
                    let r = ideal.reduce(&field, &e);
                    basis.iter().map(|&b| r[b].clone()).collect()
                })
                .collect();
            let path_index = paths.iter().enumerate().map(|(i, p)| (p.arrows().to_vec(), i)).collect();
            homs.push(HomSpace { src: x, tgt: y, paths, path_index, ideal, basis, path_coords });
        }
    }
    Ok(PresentedCategory { quiver, field, relations, bound, homs })
}

/// Dense coordinates of a combination over an indexed path list; terms
/// outside the list are dropped.
fn dense(f: &FieldSpec, t: &LinComb, idx: &HashMap<&Path, usize>, len: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); len];
    for (p, c) in t.terms() {
        if let Some(&k) = idx.get(p) {
            v[k] = f.add(&v[k], c);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Scalar {
        Scalar::from_integer(x.into())
    }

    pub(crate) fn bq(qv: i64) -> PresentedCategory {
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
        build_category(quiver, vec![rel], None, f).unwrap()
    }

    fn truncated_loop(p: usize) -> PresentedCategory {
        let quiver = Quiver::new(&["o"], &[("x", "o", "o")]).unwrap();
        let f = FieldSpec::Prime(p as u64);
        let xp = Path::new(&quiver, vec![0; p]).unwrap();
        let rel = LinComb::new(&f, 0, 0, vec![(q(1), xp)]).unwrap();
        build_category(quiver, vec![rel], Some(p), f).unwrap()
    }

    #[test]
    fn bq_dimensions() {
        for qv in [0, 1, 2] {
            let c = bq(qv);
            assert_eq!(c.dim(0, 2), 2);
            assert_eq!(c.dim(0, 3), 1);
            assert_eq!(c.dim(1, 3), 1);
            assert_eq!(c.dim(3, 0), 0);
        }
    }

    #[test]
    fn truncated_polynomial_dimension() {
        let c = truncated_loop(3);
        assert_eq!(c.dim(0, 0), 3);
        let shown: Vec<String> = (0..3).map(|i| c.hom(0, 0).basis_path(i).display(c.quiver())).collect();
        assert_eq!(shown, vec!["e_o", "x", "x*x"]);
        let x = c.path_morphism(&Path::arrow(c.quiver(), 0));
        let x2 = c.compose(&x, &x).unwrap();
        assert!(!x2.is_zero());
        assert!(c.compose(&x2, &x).unwrap().is_zero());
    }

    #[test]
    fn a2_without_relations() {
        let quiver = Quiver::new(&["x", "y"], &[("a", "x", "y")]).unwrap();
        let c = build_category(quiver, vec![], None, FieldSpec::Rationals).unwrap();
        assert_eq!((c.dim(0, 0), c.dim(1, 1), c.dim(0, 1), c.dim(1, 0)), (1, 1, 1, 0));
    }

    #[test]
    fn composition_in_bq_kills_the_relation() {
        let c = bq(2);
        let quiver = c.quiver();
        let gamma = c.path_morphism(&Path::from_ids(quiver, &["gamma"]).unwrap());
        let ba = c.path_morphism(&Path::from_ids(quiver, &["beta", "alpha"]).unwrap());
        let f = c.field();
        let coords: Vec<Scalar> =
            gamma.coords.iter().zip(&ba.coords).map(|(a, b)| f.sub(a, &f.mul(&q(2), b))).collect();
        let hom = Morphism { src: 0, tgt: 2, coords };
        let delta = c.path_morphism(&Path::from_ids(quiver, &["delta"]).unwrap());
        assert!(c.compose(&delta, &hom).unwrap().is_zero());
        assert!(c.compose(&hom, &delta).is_err());
        let id = c.identity(0);
        assert_eq!(c.compose(&hom, &id).unwrap(), hom);
    }

    #[test]
    fn membership() {
        let c = bq(1);
        let quiver = c.quiver();
        let f = *c.field();
        assert!(c.ideal_membership(&c.relations()[0]));
        let dg = LinComb::new(&f, 0, 3, vec![(q(1), Path::from_ids(quiver, &["delta", "gamma"]).unwrap())]).unwrap();
        assert!(!c.ideal_membership(&dg));
        assert!(c.ideal_membership(&LinComb::zero(0, 3)));
    }

    #[test]
    fn construction_errors() {
        let quiver = Quiver::new(&["x", "y"], &[("a", "x", "y")]).unwrap();
        let f = FieldSpec::Rationals;
        let rel = LinComb::new(&f, 0, 1, vec![(q(1), Path::arrow(&quiver, 0))]).unwrap();
        assert!(matches!(build_category(quiver.clone(), vec![rel], None, f), Err(LinrepError::NonAdmissible { .. })));
        assert!(matches!(build_category(quiver, vec![], None, FieldSpec::Prime(6)), Err(LinrepError::NotPrime(6))));

        let lp = Quiver::new(&["o"], &[("x", "o", "o")]).unwrap();
        assert!(matches!(build_category(lp.clone(), vec![], None, f), Err(LinrepError::BoundRequired)));
        let x3 = LinComb::new(&f, 0, 0, vec![(q(1), Path::new(&lp, vec![0; 3]).unwrap())]).unwrap();
        assert!(matches!(build_category(lp, vec![x3], Some(2), f), Err(LinrepError::BadBound { .. })));
    }
}
