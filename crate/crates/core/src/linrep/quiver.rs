use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::field::{FieldSpec, Scalar};
use super::LinrepError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite quiver with named vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self, LinrepError> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.as_ref().to_string(), i).is_some() {
                return Err(LinrepError::DuplicateId(v.as_ref().to_string()));
            }
        }
        let mut arrow_index = HashMap::new();
        let mut list = Vec::new();
        for (i, (id, s, t)) in arrows.iter().enumerate() {
            let src = *vertex_index.get(s.as_ref()).ok_or_else(|| LinrepError::UnknownVertex(s.as_ref().into()))?;
            let tgt = *vertex_index.get(t.as_ref()).ok_or_else(|| LinrepError::UnknownVertex(t.as_ref().into()))?;
            if arrow_index.insert(id.as_ref().to_string(), i).is_some() || vertex_index.contains_key(id.as_ref()) {
                return Err(LinrepError::DuplicateId(id.as_ref().to_string()));
            }
            list.push(Arrow { id: id.as_ref().to_string(), src, tgt });
        }
        Ok(Quiver {
            vertices: vertices.iter().map(|v| v.as_ref().to_string()).collect(),
            arrows: list,
            vertex_index,
            arrow_index,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex(&self, name: &str) -> Result<usize, LinrepError> {
        self.vertex_index.get(name).copied().ok_or_else(|| LinrepError::UnknownVertex(name.into()))
    }

    pub fn arrow(&self, id: &str) -> Result<usize, LinrepError> {
        self.arrow_index.get(id).copied().ok_or_else(|| LinrepError::UnknownArrow(id.into()))
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    /// Length of the longest path, or `None` if there is an oriented cycle.
    pub fn longest_path(&self) -> Option<usize> {
        // Kahn's algorithm; longest[v] = longest path ending at v
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.tgt] += 1;
        }
        let mut longest = vec![0usize; n];
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.src == v) {
                longest[a.tgt] = longest[a.tgt].max(longest[v] + 1);
                indeg[a.tgt] -= 1;
                if indeg[a.tgt] == 0 {
                    queue.push(a.tgt);
                }
            }
        }
        (seen == n).then(|| longest.into_iter().max().unwrap_or(0))
    }

    pub fn has_oriented_cycle(&self) -> bool {
        self.longest_path().is_none()
    }
}

/// A path in a quiver. Arrows are stored in written order: `arrows[0]` is
/// applied last, so `delta*beta*alpha` is stored as `[delta, beta, alpha]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    src: usize,
    tgt: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { src: v, tgt: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let ar = &q.arrows()[a];
        Path { src: ar.src, tgt: ar.tgt, arrows: vec![a] }
    }

    /// Path from arrows in written order (last applied first).
    pub fn new(q: &Quiver, arrows: Vec<usize>) -> Result<Self, LinrepError> {
        let Some(&last) = arrows.first() else {
            return Err(LinrepError::NotConcatenable("empty arrow list without a vertex".into()));
        };
        for w in arrows.windows(2) {
            if q.arrows()[w[1]].tgt != q.arrows()[w[0]].src {
                return Err(LinrepError::NotConcatenable(format!(
                    "{} then {}",
                    q.arrows()[w[1]].id,
                    q.arrows()[w[0]].id
                )));
            }
        }
        let first = *arrows.last().expect("nonempty");
        Ok(Path { src: q.arrows()[first].src, tgt: q.arrows()[last].tgt, arrows })
    }

    pub fn from_ids(q: &Quiver, ids: &[&str]) -> Result<Self, LinrepError> {
        let arrows = ids.iter().map(|id| q.arrow(id)).collect::<Result<Vec<_>, _>>()?;
        Self::new(q, arrows)
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn after(&self, other: &Path) -> Option<Path> {
        if other.tgt != self.src {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { src: other.src, tgt: self.tgt, arrows })
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertex_name(self.src))
        } else {
            self.arrows.iter().map(|&a| q.arrows()[a].id.as_str()).collect::<Vec<_>>().join("*")
        }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.arrows.len(), &self.arrows, self.src, self.tgt).cmp(&(
            other.arrows.len(),
            &other.arrows,
            other.src,
            other.tgt,
        ))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All paths `from -> to` of length `< max_len`, ordered by length and then
/// lexicographically by arrow declaration index (written order).
pub fn enumerate_paths(q: &Quiver, from: usize, to: usize, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut layer = vec![Path::trivial(from)];
    for _ in 0..max_len {
        out.extend(layer.iter().filter(|p| p.tgt == to).cloned());
        let mut next = Vec::new();
        for p in &layer {
            for (a, ar) in q.arrows().iter().enumerate() {
                if ar.src == p.tgt {
                    next.push(Path::arrow(q, a).after(p).expect("concatenable by construction"));
                }
            }
        }
        layer = next;
    }
    out.sort();
    out
}

/// A linear combination of parallel paths with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb {
    src: usize,
    tgt: usize,
    terms: BTreeMap<Path, Scalar>,
}

impl LinComb {
    pub fn zero(src: usize, tgt: usize) -> Self {
        LinComb { src, tgt, terms: BTreeMap::new() }
    }

    pub fn new(f: &FieldSpec, src: usize, tgt: usize, terms: Vec<(Scalar, Path)>) -> Result<Self, LinrepError> {
        let mut lc = Self::zero(src, tgt);
        for (c, p) in terms {
            lc.add_term(f, c, p)?;
        }
        Ok(lc)
    }

    pub fn add_term(&mut self, f: &FieldSpec, c: Scalar, p: Path) -> Result<(), LinrepError> {
        if p.src != self.src || p.tgt != self.tgt {
            return Err(LinrepError::EndpointMismatch(format!(
                "path from {} to {} in a combination from {} to {}",
                p.src, p.tgt, self.src, self.tgt
            )));
        }
        let entry = self.terms.entry(p).or_insert_with(Scalar::zero);
        *entry = f.add(entry, &c);
        self.terms.retain(|_, c| !c.is_zero());
        Ok(())
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(p, c)| format!("{}*{}", super::field::format_scalar(c), p.display(q)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
