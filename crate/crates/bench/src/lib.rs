//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use kgrad::grpkit::IntMatrix;
use kgrad::linrep::{build_category, FieldSpec, LinComb, Path, PresentedCategory, Quiver, Scalar};

/// Quiver x -> y -> z with `a` and `b` parallel arrows and the relation
/// summing all composites.
pub fn layered(a: usize, b: usize) -> Arc<PresentedCategory> {
    let names: Vec<String> = (0..a).map(|i| format!("a{i}")).chain((0..b).map(|j| format!("b{j}"))).collect();
    let arrows: Vec<(&str, &str, &str)> = names
        .iter()
        .enumerate()
        .map(|(i, n)| if i < a { (n.as_str(), "x", "y") } else { (n.as_str(), "y", "z") })
        .collect();
    let quiver = Quiver::new(&["x", "y", "z"], &arrows).unwrap();
    let f = FieldSpec::Rationals;
    let terms = (0..b)
        .flat_map(|j| (0..a).map(move |i| (i, j)))
        .map(|(i, j)| (Scalar::from_integer(1.into()), Path::new(&quiver, vec![a + j, i]).unwrap()))
        .collect();
    let rel = LinComb::new(&f, 0, 2, terms).unwrap();
    Arc::new(build_category(quiver, vec![rel], None, f).unwrap())
}

/// An oriented cycle of `n` arrows with every composite of two arrows zero.
pub fn cycle(n: usize) -> Arc<PresentedCategory> {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let arrow_ids: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let arrows: Vec<(&str, &str, &str)> =
        (0..n).map(|i| (arrow_ids[i].as_str(), names[i].as_str(), names[(i + 1) % n].as_str())).collect();
    let vertices: Vec<&str> = names.iter().map(String::as_str).collect();
    let quiver = Quiver::new(&vertices, &arrows).unwrap();
    let f = FieldSpec::Rationals;
    let rels = (0..n)
        .map(|i| {
            let p = Path::new(&quiver, vec![(i + 1) % n, i]).unwrap();
            LinComb::new(&f, p.src(), p.tgt(), vec![(Scalar::from_integer(1.into()), p)]).unwrap()
        })
        .collect();
    Arc::new(build_category(quiver, rels, Some(2), f).unwrap())
}

/// A deterministic dense integer matrix.
pub fn matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| ((i * 7 + j * 13 + i * j) % 41) as i64 - 20).collect()).collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}
