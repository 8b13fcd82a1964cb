//! Schurian morphisms, Schurian-generated closure, homogeneity partitions of
//! relation ideals, and the universal grading of constricted Schurian-generated
//! presentations.

use std::collections::VecDeque;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::grading::{is_connected_grading, Grading, GradingError};
use crate::grpkit::{abelianize, Abelianization, GroupError, GroupPresentation, Letter, Word};
use crate::linrep::{Echelon, Path, PresentedCategory, Scalar};

pub const DEFAULT_PATH_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchurError {
    #[error("category is not Schurian generated: hom({0}) is not covered")]
    NotSG(String),
    #[error("presentation is not constricted: path {path} is parallel to arrow {arrow} and nonzero")]
    NotConstricted { arrow: String, path: String },
    #[error("hom({hom}) has {paths} paths in the ideal's support, above the cap {cap}")]
    TooManyPaths { hom: String, paths: usize, cap: usize },
    #[error("quiver is not connected: {0} is unreachable")]
    Disconnected(String),
    #[error("internal consistency failure: {0}")]
    NotConnectedResult(String),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Object pairs whose hom-space is one-dimensional.
pub fn schurian_morphisms(cat: &PresentedCategory) -> Vec<(usize, usize)> {
    cat.hom_pairs().filter(|&(x, y)| cat.dim(x, y) == 1).collect()
}

/// The subcategory generated by identities and Schurian morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SGClosure {
    /// Per object pair (row-major), a subspace in quotient-basis coordinates.
    pub spaces: Vec<Echelon>,
    pub is_sg: bool,
    /// Nonzero hom-spaces the closure does not fill.
    pub uncovered: Vec<(usize, usize)>,
    pub rounds: usize,
}

impl SGClosure {
    pub fn space(&self, cat: &PresentedCategory, x: usize, y: usize) -> &Echelon {
        &self.spaces[x * cat.num_objects() + y]
    }

    pub fn contains(&self, cat: &PresentedCategory, x: usize, y: usize, coords: &[Scalar]) -> bool {
        self.space(cat, x, y).contains(cat.field(), coords)
    }
}

pub fn sg_closure(cat: &PresentedCategory) -> SGClosure {
    let f = cat.field();
    let n = cat.num_objects();
    let mut spaces: Vec<Echelon> = cat
        .hom_pairs()
        .map(|(x, y)| {
            let d = cat.dim(x, y);
            if d == 1 {
                Echelon::new(f, [vec![f.one()]], 1)
            } else if x == y {
                Echelon::new(f, [cat.identity(x).coords], d)
            } else {
                Echelon::empty(d)
            }
        })
        .collect();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut grew = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let products: Vec<Vec<Scalar>> = spaces[y * n + z]
                        .rows()
                        .iter()
                        .flat_map(|a| spaces[x * n + y].rows().iter().map(move |b| (a, b)))
                        .map(|(a, b)| cat.compose_coords(x, y, z, a, b))
                        .collect();
                    for p in products {
                        grew |= spaces[x * n + z].insert(f, p);
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let uncovered: Vec<(usize, usize)> =
        cat.hom_pairs().filter(|&(x, y)| spaces[x * n + y].rank() < cat.dim(x, y)).collect();
    SGClosure { spaces, is_sg: uncovered.is_empty(), uncovered, rounds }
}

/// Result of [`is_constricted`]: the first arrow with a nonzero parallel path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constriction {
    pub constricted: bool,
    pub witness: Option<(String, String)>,
}

/// Whether every path strictly parallel to an arrow vanishes in the quotient.
pub fn is_constricted(cat: &PresentedCategory) -> Constriction {
    let q = cat.quiver();
    for (a, arrow) in q.arrows().iter().enumerate() {
        for p in cat.hom(arrow.src, arrow.tgt).paths() {
            if p.arrows() != [a] && !cat.path_morphism(p).is_zero() {
                return Constriction { constricted: false, witness: Some((arrow.id.clone(), p.display(q))) };
            }
        }
    }
    Constriction { constricted: true, witness: None }
}

/// Finest partition of the paths of one hom-space (indices into
/// `HomSpace::paths`) such that the ideal splits along the blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneityPartition {
    pub src: usize,
    pub tgt: usize,
    pub blocks: Vec<Vec<usize>>,
    /// Supports of the minimal relations, as sorted path indices.
    pub circuits: Vec<Vec<usize>>,
}

pub fn homogeneity_partition(
    cat: &PresentedCategory,
    x: usize,
    y: usize,
    cap: usize,
) -> Result<HomogeneityPartition, SchurError> {
    let f = cat.field();
    let h = cat.hom(x, y);
    let m = h.paths().len();
    let ideal = h.ideal();
    let r = ideal.rank();
    let support: Vec<usize> = (0..m).filter(|&k| ideal.rows().iter().any(|row| !row[k].is_zero())).collect();
    if support.len() > cap.min(63) {
        return Err(SchurError::TooManyPaths {
            hom: format!("{}, {}", cat.object_name(x), cat.object_name(y)),
            paths: support.len(),
            cap,
        });
    }
    // dim(I ∩ span S) = r - rank of the ideal rows restricted to the complement of S
    let meets = |mask: u64| -> bool {
        let cols: Vec<usize> = (0..m).filter(|&k| !in_mask(&support, mask, k)).collect();
        let rows = ideal.rows().iter().map(|row| cols.iter().map(|&k| row[k].clone()).collect::<Vec<_>>());
        Echelon::new(f, rows, cols.len()).rank() < r
    };
    let s = support.len();
    let mut circuits: Vec<u64> = Vec::new();
    // a minimal support of an r-dimensional subspace has at most s - r + 1 elements
    for size in 1..=(s + 1).saturating_sub(r) {
        for mask in masks_of_size(s, size) {
            if circuits.iter().any(|c| c & !mask == 0) {
                continue;
            }
            if meets(mask) {
                circuits.push(mask);
            }
        }
    }
    // blocks: connected components of the union of circuit supports
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let circuit_sets: Vec<Vec<usize>> =
        circuits.iter().map(|&c| (0..s).filter(|&i| c >> i & 1 == 1).map(|i| support[i]).collect()).collect();
    for c in &circuit_sets {
        for w in c.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![usize::MAX; m];
    for k in 0..m {
        let root = find(&mut parent, k);
        if block_of[root] == usize::MAX {
            block_of[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of[root]].push(k);
    }
    // the ideal must split along the blocks
    for row in ideal.rows() {
        for b in &blocks {
            let proj: Vec<Scalar> = (0..m).map(|k| if b.contains(&k) { row[k].clone() } else { f.zero() }).collect();
            if !ideal.contains(f, &proj) {
                return Err(SchurError::NotConnectedResult(format!(
                    "ideal of hom({}, {}) does not split along the computed blocks",
                    cat.object_name(x),
                    cat.object_name(y)
                )));
            }
        }
    }
    Ok(HomogeneityPartition { src: x, tgt: y, blocks, circuits: circuit_sets })
}

fn in_mask(support: &[usize], mask: u64, k: usize) -> bool {
    support.iter().position(|&s| s == k).is_some_and(|i| mask >> i & 1 == 1)
}

/// Bitmasks over `n` elements with exactly `k` bits set, in increasing order.
fn masks_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut next = if k == 0 { Some(0) } else { Some((1u64 << k) - 1) };
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur)
    })
}

/// The group of a presentation: generators are the arrows outside a
/// breadth-first spanning tree of the quiver, relators identify paths that
/// share a block of a homogeneity partition.
#[derive(Clone, Debug)]
pub struct PresentationGroup {
    pub presentation: GroupPresentation,
    pub abelianization: Abelianization,
    /// Arrow index of each generator.
    pub chords: Vec<usize>,
    pub tree_arrows: Vec<usize>,
}

impl PresentationGroup {
    /// Word of a path in traversal order (first arrow first).
    pub fn word(&self, p: &Path) -> Word {
        path_word(&self.chords, p)
    }
}

pub fn presentation_group(cat: &PresentedCategory, b0: usize, cap: usize) -> Result<PresentationGroup, SchurError> {
    let q = cat.quiver();
    let n = q.num_vertices();
    let mut seen = vec![false; n];
    seen[b0] = true;
    let mut tree_arrows = Vec::new();
    let mut queue = VecDeque::from([b0]);
    while let Some(v) = queue.pop_front() {
        for (a, ar) in q.arrows().iter().enumerate() {
            let other = if ar.src == v {
                ar.tgt
            } else if ar.tgt == v {
                ar.src
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                tree_arrows.push(a);
                queue.push_back(other);
            }
        }
    }
    if let Some(b) = seen.iter().position(|s| !s) {
        return Err(SchurError::Disconnected(q.vertex_name(b).to_string()));
    }
    tree_arrows.sort_unstable();
    let chords: Vec<usize> = (0..q.arrows().len()).filter(|a| tree_arrows.binary_search(a).is_err()).collect();
    let generators: Vec<String> = chords.iter().map(|&a| q.arrows()[a].id.clone()).collect();
    let mut relators: Vec<Word> = Vec::new();
    for (x, y) in cat.hom_pairs() {
        let part = homogeneity_partition(cat, x, y, cap)?;
        let paths = cat.hom(x, y).paths();
        for block in part.blocks.iter().filter(|b| b.len() > 1) {
            let first = path_word(&chords, &paths[block[0]]);
            for &k in &block[1..] {
                let mut w = first.clone();
                w.extend(
                    path_word(&chords, &paths[k])
                        .iter()
                        .rev()
                        .map(|l| Letter { generator: l.generator, inverse: !l.inverse }),
                );
                relators.push(w);
            }
        }
    }
    let reduced = GroupPresentation::new(generators.clone(), relators)?;
    let mut unique: Vec<Word> = Vec::new();
    for w in reduced.relators().iter().filter(|w| !w.is_empty()) {
        if !unique.contains(w) {
            unique.push(w.clone());
        }
    }
    let presentation = GroupPresentation::new(generators, unique)?;
    let abelianization = abelianize(&presentation);
    Ok(PresentationGroup { presentation, abelianization, chords, tree_arrows })
}

fn path_word(chords: &[usize], p: &Path) -> Word {
    p.arrows()
        .iter()
        .rev()
        .filter_map(|a| chords.iter().position(|c| c == a))
        .map(|g| Letter { generator: g, inverse: false })
        .collect()
}

/// The universal grading of a constricted Schurian-generated presentation.
#[derive(Clone, Debug)]
pub struct UniversalGrading {
    pub group: PresentationGroup,
    pub grading: Grading,
}

pub fn universal_grading(cat: &Arc<PresentedCategory>, b0: usize) -> Result<UniversalGrading, SchurError> {
    let closure = sg_closure(cat);
    if let Some(&(x, y)) = closure.uncovered.first() {
        return Err(SchurError::NotSG(format!("{}, {}", cat.object_name(x), cat.object_name(y))));
    }
    let c = is_constricted(cat);
    if let Some((arrow, path)) = c.witness {
        return Err(SchurError::NotConstricted { arrow, path });
    }
    let group = presentation_group(cat, b0, DEFAULT_PATH_CAP)?;
    let grading = path_grading(cat, &group)?;
    let grading = grading
        .validated()
        .map_err(|e| SchurError::NotConnectedResult(format!("constructed grading is invalid: {e}")))?;
    if !is_connected_grading(&grading, b0)? {
        return Err(SchurError::NotConnectedResult("constructed grading is not connected".into()));
    }
    Ok(UniversalGrading { group, grading })
}

/// Path-basis grading with each arrow in degree of its generator class.
pub fn path_grading(cat: &Arc<PresentedCategory>, group: &PresentationGroup) -> Result<Grading, SchurError> {
    let ab = &group.abelianization;
    let degrees: Vec<_> = (0..cat.quiver().arrows().len())
        .map(|a| match group.chords.iter().position(|&c| c == a) {
            Some(g) => ab.generator_class(g),
            None => ab.group.zero(),
        })
        .collect();
    Ok(Grading::from_arrow_degrees(cat.clone(), ab.group.clone(), &degrees)?)
}
