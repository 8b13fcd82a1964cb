use std::fmt;

use num_bigint::BigInt;

use super::lattice::{cokernel, Presentation};
use super::{AbelianGroup, GroupElement, GroupError, IntMatrix};

/// A generator index with exponent `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

pub type Word = Vec<Letter>;

/// A group presentation `<generators | relators>`; relators are freely reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        for w in &relators {
            if let Some(l) = w.iter().find(|l| l.generator >= generators.len()) {
                return Err(GroupError::UnknownGenerator(format!("#{}", l.generator)));
            }
        }
        let relators = relators.into_iter().map(free_reduce).collect();
        Ok(GroupPresentation { generators, relators })
    }

    /// Builds a presentation from named letters, e.g. `[("a", 1), ("b", -1)]`.
    pub fn from_names(generators: &[&str], relators: &[Vec<(&str, i32)>]) -> Result<Self, GroupError> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let mut words = Vec::new();
        for r in relators {
            let mut w = Word::new();
            for &(name, e) in r {
                let g = gens
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| GroupError::UnknownGenerator(name.to_string()))?;
                w.push(Letter { generator: g, inverse: e < 0 });
            }
            words.push(w);
        }
        Self::new(gens, words)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let n = self.generators.len();
        let mut m = IntMatrix::zeros(self.relators.len(), n);
        for (i, w) in self.relators.iter().enumerate() {
            for l in w {
                m[(i, l.generator)] += BigInt::from(if l.inverse { -1 } else { 1 });
            }
        }
        m
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let e = (j - i) as i64 * if w[i].inverse { -1 } else { 1 };
            let name = &self.generators[w[i].generator];
            parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|w| self.format_word(w)).collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

fn free_reduce(w: Word) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for l in w {
        match out.last() {
            Some(prev) if prev.generator == l.generator && prev.inverse != l.inverse => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// Abelianization of a presentation, with the class map on words.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub group: AbelianGroup,
    /// `generators x group.num_generators()`.
    projection: IntMatrix,
}

impl Abelianization {
    pub fn generator_class(&self, g: usize) -> GroupElement {
        self.group.reduce(self.projection.row(g))
    }

    pub fn word_class(&self, w: &[Letter]) -> GroupElement {
        let mut v = vec![BigInt::from(0); self.projection.cols()];
        for l in w {
            let sign = BigInt::from(if l.inverse { -1 } else { 1 });
            for (j, x) in v.iter_mut().enumerate() {
                *x += &sign * &self.projection[(l.generator, j)];
            }
        }
        self.group.reduce(&v)
    }
}

pub fn abelianize(p: &GroupPresentation) -> Abelianization {
    let cok = cokernel(&Presentation::new(p.generators.len(), p.exponent_matrix()));
    Abelianization { group: cok.group, projection: cok.projection }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_free_generator() {
        let p = GroupPresentation::from_names(&["t"], &[]).unwrap();
        assert_eq!(abelianize(&p).group, AbelianGroup::free(1));
    }

    #[test]
    fn commutator_and_power() {
        let p = GroupPresentation::from_names(
            &["a", "b"],
            &[vec![("a", 1), ("b", 1), ("a", -1), ("b", -1)], vec![("a", 1), ("a", 1), ("a", 1)]],
        )
        .unwrap();
        let ab = abelianize(&p);
        assert_eq!(ab.group, AbelianGroup::new(1, vec![3]).unwrap());
        assert_eq!(ab.group.element_order(&ab.generator_class(0)), Some(BigInt::from(3)));
    }

    #[test]
    fn killed_generator() {
        let p = GroupPresentation::from_names(&["g"], &[vec![("g", 1)]]).unwrap();
        assert!(abelianize(&p).group.is_trivial());
    }

    #[test]
    fn free_reduction_and_display() {
        let p = GroupPresentation::from_names(&["a", "b"], &[vec![("a", 1), ("b", 1), ("b", -1), ("a", 1)]]).unwrap();
        assert_eq!(p.relators()[0].len(), 2);
        assert_eq!(p.to_string(), "<a, b | a^2>");
        assert!(GroupPresentation::from_names(&["a"], &[vec![("c", 1)]]).is_err());
    }
}
