use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::lattice::{kernel_lattice, subgroup, Presentation};
use super::{AbelianGroup, GroupElement, GroupError, GroupHom, IntMatrix};

/// Limit of a finite diagram of abelian groups: the group of families
/// `(g_i)` with `mu(g_a) = g_b` for every arrow `mu: a -> b`.
#[derive(Clone, Debug)]
pub struct DiagramLimit {
    pub group: AbelianGroup,
    /// One projection per node, from the limit to that node's group.
    pub projections: Vec<GroupHom>,
}

pub fn diagram_limit(nodes: &[AbelianGroup], arrows: &[(usize, usize, GroupHom)]) -> Result<DiagramLimit, GroupError> {
    for (k, (a, b, mu)) in arrows.iter().enumerate() {
        for &node in [a, b] {
            if node >= nodes.len() {
                return Err(GroupError::BadArrow { arrow: k, node, nodes: nodes.len() });
            }
        }
        if mu.source() != &nodes[*a] || mu.target() != &nodes[*b] {
            return Err(GroupError::Mismatch);
        }
    }
    let offsets: Vec<usize> = nodes
        .iter()
        .scan(0, |acc, g| {
            let o = *acc;
            *acc += g.num_generators();
            Some(o)
        })
        .collect();
    let src = Presentation::direct_sum(&nodes.iter().map(AbelianGroup::presentation).collect::<Vec<_>>());
    let tgt = Presentation::direct_sum(&arrows.iter().map(|(_, b, _)| nodes[*b].presentation()).collect::<Vec<_>>());

    // (g_i) -> (mu(g_a) - g_b) per arrow
    let mut map = IntMatrix::zeros(src.gens, tgt.gens);
    let mut col = 0;
    for (a, b, mu) in arrows {
        let width = nodes[*b].num_generators();
        let m = mu.matrix();
        for i in 0..m.rows() {
            for j in 0..width {
                map[(offsets[*a] + i, col + j)] += &m[(i, j)];
            }
        }
        for j in 0..width {
            map[(offsets[*b] + j, col + j)] -= BigInt::from(1);
        }
        col += width;
    }
    let gens = kernel_lattice(&src, &tgt, &map);
    let (group, inclusion) = subgroup(&src, &gens);
    let projections = nodes
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let block = inclusion.column_range(offsets[i], offsets[i] + g.num_generators());
            GroupHom::from_matrix(group.clone(), g.clone(), &block)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DiagramLimit { group, projections })
}

/// `Hom(G, H)` as a group, with a way back from its elements to homomorphisms.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub source: AbelianGroup,
    pub target: AbelianGroup,
    pub group: AbelianGroup,
    /// Lift of each canonical generator of `group` as a concatenation of
    /// generator images in `H^n`.
    embedding: IntMatrix,
}

impl HomGroup {
    pub fn to_hom(&self, e: &GroupElement) -> GroupHom {
        let flat = self.embedding.left_apply(&e.coords());
        let w = self.target.num_generators();
        let n = self.source.num_generators();
        let rows: Vec<Vec<BigInt>> = (0..n).map(|i| flat[i * w..(i + 1) * w].to_vec()).collect();
        GroupHom::from_matrix(self.source.clone(), self.target.clone(), &IntMatrix::from_rows(rows, w))
            .expect("elements of Hom are well defined")
    }

    /// Homomorphisms corresponding to the canonical generators of `group`.
    pub fn generators(&self) -> Vec<GroupHom> {
        self.group.generators().iter().map(|g| self.to_hom(g)).collect()
    }

    /// All homomorphisms, when there are finitely many.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<GroupHom>, GroupError> {
        Ok(self.group.elements(cap)?.iter().map(|e| self.to_hom(e)).collect())
    }

    /// Number of homomorphisms, `None` when infinite or too large for `usize`.
    pub fn count(&self) -> Option<usize> {
        self.group.order().and_then(|o| o.to_usize())
    }
}

/// All homomorphisms `G -> H`: tuples of images `(h_i)` in `H` with
/// `d_i * h_i = 0` for each torsion generator of order `d_i`.
pub fn hom_space(g: &AbelianGroup, h: &AbelianGroup) -> HomGroup {
    let n = g.num_generators();
    let w = h.num_generators();
    let src = Presentation::direct_sum(&vec![h.presentation(); n]);
    let t = g.torsion().len();
    let tgt = Presentation::direct_sum(&vec![h.presentation(); t]);
    let mut map = IntMatrix::zeros(n * w, t * w);
    for (i, d) in g.torsion().iter().enumerate() {
        for j in 0..w {
            map[(i * w + j, i * w + j)] = d.clone();
        }
    }
    let gens = kernel_lattice(&src, &tgt, &map);
    let (group, embedding) = subgroup(&src, &gens);
    HomGroup { source: g.clone(), target: h.clone(), group, embedding }
}
