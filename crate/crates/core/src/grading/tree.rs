use std::collections::{BTreeSet, VecDeque};

use super::walk::{walk_degree, BasisRef, Walk};
use super::{Grading, GradingError};
use crate::grpkit::{express_in_generators, subgroup_quotient, GroupElement};

/// Breadth-first spanning tree of the graph with one edge per homogeneous
/// basis element (identity multiples excluded), rooted at a base object.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    root: usize,
    connectors: Vec<Walk>,
    edges: Vec<BasisRef>,
    tree_edges: BTreeSet<BasisRef>,
}

pub fn spanning_tree(x: &Grading, root: usize) -> Result<SpanningTree, GradingError> {
    let cat = x.category();
    let n = cat.num_objects();
    if root >= n {
        return Err(GradingError::BadReference(format!("object {root}")));
    }
    let edges: Vec<BasisRef> = x.basis_refs().into_iter().filter(|f| !x.is_identity_multiple(f)).collect();
    let mut connectors: Vec<Option<Walk>> = vec![None; n];
    connectors[root] = Some(Walk::empty(root));
    let mut tree_edges = BTreeSet::new();
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for f in &edges {
            let (other, sign) = if f.src == v {
                (f.tgt, 1)
            } else if f.tgt == v {
                (f.src, -1)
            } else {
                continue;
            };
            if connectors[other].is_none() {
                let prev = connectors[v].as_ref().expect("visited");
                connectors[other] = Some(Walk::step(*f, sign).after(prev).expect("ends match"));
                tree_edges.insert(*f);
                queue.push_back(other);
            }
        }
    }
    let connectors = connectors
        .into_iter()
        .enumerate()
        .map(|(b, w)| w.ok_or_else(|| GradingError::Disconnected(cat.object_name(b).to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SpanningTree { root, connectors, edges, tree_edges })
}

impl SpanningTree {
    pub fn root(&self) -> usize {
        self.root
    }

    /// Tree path from the root to `b`.
    pub fn connector(&self, b: usize) -> &Walk {
        &self.connectors[b]
    }

    pub fn edges(&self) -> &[BasisRef] {
        &self.edges
    }

    pub fn is_tree_edge(&self, f: &BasisRef) -> bool {
        self.tree_edges.contains(f)
    }

    pub fn non_tree_edges(&self) -> Vec<BasisRef> {
        self.edges.iter().filter(|f| !self.is_tree_edge(f)).copied().collect()
    }

    /// The closed walk `v_tgt⁻¹ · (f, +1) · v_src` at the root.
    pub fn cycle(&self, f: &BasisRef) -> Walk {
        let there = Walk::step(*f, 1).after(&self.connectors[f.src]).expect("ends match");
        self.connectors[f.tgt].inverse().after(&there).expect("ends match")
    }

    /// One closed walk per non-tree edge; together they generate all closed
    /// walks at the root up to cancellation.
    pub fn fundamental_cycles(&self) -> Vec<Walk> {
        self.non_tree_edges().iter().map(|f| self.cycle(f)).collect()
    }
}

/// Degrees of the fundamental cycles at `b0`, without repetitions. They
/// generate the subgroup of degrees of closed walks at `b0`.
pub fn closed_walk_subgroup(x: &Grading, b0: usize) -> Result<Vec<GroupElement>, GradingError> {
    let tree = spanning_tree(x, b0)?;
    let mut out: Vec<GroupElement> = Vec::new();
    for w in tree.fundamental_cycles() {
        let d = walk_degree(x, &w)?;
        if !out.contains(&d) {
            out.push(d);
        }
    }
    Ok(out)
}

/// Whether closed walks at `b0` reach every degree.
pub fn is_connected_grading(x: &Grading, b0: usize) -> Result<bool, GradingError> {
    let gens = closed_walk_subgroup(x, b0)?;
    Ok(subgroup_quotient(x.group(), &gens).is_full)
}

/// Walks `v_b` from a base object to every object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectorFamily {
    pub root: usize,
    pub walks: Vec<Walk>,
}

impl ConnectorFamily {
    pub fn from_tree(tree: &SpanningTree) -> ConnectorFamily {
        ConnectorFamily { root: tree.root, walks: tree.connectors.clone() }
    }

    /// Connectors of degree zero, obtained from the tree paths by prepending
    /// closed walks at the root that cancel their degrees. Needs a connected
    /// grading.
    pub fn trivial_degree(x: &Grading, root: usize) -> Result<ConnectorFamily, GradingError> {
        let tree = spanning_tree(x, root)?;
        let cycles = tree.fundamental_cycles();
        let degrees = cycles.iter().map(|w| walk_degree(x, w)).collect::<Result<Vec<_>, _>>()?;
        let g = x.group();
        let mut walks = Vec::with_capacity(tree.connectors.len());
        for (b, v) in tree.connectors.iter().enumerate() {
            let d = walk_degree(x, v)?;
            if d.is_zero() {
                walks.push(v.clone());
                continue;
            }
            let coeffs = express_in_generators(g, &degrees, &g.neg(&d)).ok_or_else(|| {
                GradingError::NotConnected(format!("no closed walk cancels the degree {d} of the path to object {b}"))
            })?;
            let mut fix = Walk::empty(root);
            for (c, k) in cycles.iter().zip(&coeffs) {
                fix = c.power(k)?.after(&fix)?;
            }
            walks.push(v.after(&fix)?);
        }
        Ok(ConnectorFamily { root, walks })
    }

    pub fn walk(&self, b: usize) -> &Walk {
        &self.walks[b]
    }
}
