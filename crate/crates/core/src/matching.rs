use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::{canonical_triple, triple_set, Hypergraph3, Triple};
use crate::vertex_set::VertexSet;

/// Pairwise disjoint triples together with the vertices they cover.
///
/// Edges keep their insertion order; the covered set is the disjointness
/// certificate and always holds exactly `3 * len()` vertices.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<Triple>,
    covered: VertexSet,
}

impl Matching {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(edges: impl IntoIterator<Item = Triple>) -> Result<Self> {
        let mut m = Self::empty();
        for t in edges {
            m.push(t)?;
        }
        Ok(m)
    }

    /// Adds a triple, sorting it first. Fails when it touches a covered vertex.
    pub fn push(&mut self, raw: Triple) -> Result<()> {
        let mut t = raw;
        t.sort_unstable();
        if t[0] == 0 {
            return Err(Error::VertexOutOfRange { vertex: 0, n: t[2] });
        }
        if t[0] == t[1] || t[1] == t[2] {
            return Err(Error::RepeatedVertex(raw));
        }
        let set = triple_set(&t);
        if !set.is_disjoint(&self.covered) {
            let clash = self
                .edges
                .iter()
                .find(|e| e.iter().any(|v| set.contains(*v)))
                .copied()
                .unwrap_or(t);
            return Err(Error::NotDisjoint(clash, t));
        }
        self.covered.union_with(&set);
        self.edges.push(t);
        Ok(())
    }

    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    pub fn covered(&self) -> &VertexSet {
        &self.covered
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The first `k` edges.
    pub fn truncated(&self, k: usize) -> Self {
        Self::new(self.edges.iter().take(k).copied()).expect("prefix of a matching is a matching")
    }

    /// Drops the edge at `index`.
    pub fn without(&self, index: usize) -> Self {
        Self::new(
            self.edges
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != index)
                .map(|(_, t)| *t),
        )
        .expect("subset of a matching is a matching")
    }

    /// Re-derives the disjointness certificate from scratch.
    pub fn check_invariants(&self) -> bool {
        let mut seen = VertexSet::new();
        for t in &self.edges {
            if !(t[0] < t[1] && t[1] < t[2] && t[0] >= 1) {
                return false;
            }
            for &v in t {
                if !seen.insert(v) {
                    return false;
                }
            }
        }
        seen == self.covered && seen.len() == 3 * self.edges.len()
    }

    /// Checks the invariants and that every triple is an edge of `h`.
    pub fn validate_in(&self, h: &Hypergraph3) -> Result<()> {
        if !self.check_invariants() {
            return Err(Error::Parameters("matching certificate is inconsistent".into()));
        }
        for t in &self.edges {
            canonical_triple(h.n(), *t)?;
            if !h.contains_edge(*t) {
                return Err(Error::NotAnEdge(*t));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.edges.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_overlap() {
        let mut m = Matching::new([[1, 2, 3]]).unwrap();
        assert_eq!(m.push([3, 4, 5]).unwrap_err(), Error::NotDisjoint([1, 2, 3], [3, 4, 5]));
        m.push([6, 5, 4]).unwrap();
        assert_eq!(m.edges(), &[[1, 2, 3], [4, 5, 6]]);
        assert_eq!(m.covered().len(), 6);
        assert!(m.check_invariants());
    }

    #[test]
    fn validates_against_hypergraph() {
        let h = Hypergraph3::new(6, [[1, 2, 3]]).unwrap();
        assert!(Matching::new([[1, 2, 3]]).unwrap().validate_in(&h).is_ok());
        assert_eq!(
            Matching::new([[4, 5, 6]]).unwrap().validate_in(&h).unwrap_err(),
            Error::NotAnEdge([4, 5, 6])
        );
        assert!(Matching::new([[4, 5, 9]]).unwrap().validate_in(&h).is_err());
    }

    #[test]
    fn truncation_and_removal() {
        let m = Matching::new([[1, 2, 3], [4, 5, 6], [7, 8, 9]]).unwrap();
        assert_eq!(m.truncated(2).len(), 2);
        assert_eq!(m.without(0).edges(), &[[4, 5, 6], [7, 8, 9]]);
        assert!(!m.without(1).covered().contains(5));
    }
}
