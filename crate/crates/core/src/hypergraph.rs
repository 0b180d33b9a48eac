//! The 3-uniform hypergraph model and its degree, codegree and link queries.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// A strictly increasing vertex triple.
pub type Triple = [usize; 3];

/// Above this many vertices the triple-membership bitmap gives way to a hash set.
const DENSE_MEMBERSHIP_MAX_N: usize = 64;

/// Sorts and range-checks a raw triple.
pub fn canonical_triple(n: usize, raw: [usize; 3]) -> Result<Triple> {
    for &v in &raw {
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    let mut t = raw;
    t.sort_unstable();
    if t[0] == t[1] || t[1] == t[2] {
        return Err(Error::RepeatedVertex(raw));
    }
    Ok(t)
}

pub fn triple_set(t: &Triple) -> VertexSet {
    t.iter().copied().collect()
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Position of a canonical triple in the colexicographic order of all triples.
fn triple_rank(t: &Triple) -> usize {
    let (a, b, c) = (t[0] - 1, t[1] - 1, t[2] - 1);
    a + binom(b, 2) + binom(c, 3)
}

#[derive(Clone)]
enum Membership {
    Dense(Vec<u64>),
    Sparse(HashSet<Triple>),
}

impl Membership {
    fn build(n: usize, edges: &[Triple]) -> Self {
        if n <= DENSE_MEMBERSHIP_MAX_N {
            let bits = binom(n, 3);
            let mut words = vec![0u64; bits.div_ceil(64)];
            for t in edges {
                let r = triple_rank(t);
                words[r / 64] |= 1 << (r % 64);
            }
            Membership::Dense(words)
        } else {
            Membership::Sparse(edges.iter().copied().collect())
        }
    }

    fn contains(&self, t: &Triple) -> bool {
        match self {
            Membership::Dense(words) => {
                let r = triple_rank(t);
                words.get(r / 64).is_some_and(|w| w & (1 << (r % 64)) != 0)
            }
            Membership::Sparse(set) => set.contains(t),
        }
    }
}

/// Minimum degree sum over adjacent vertex pairs.
///
/// `Undefined` is returned for hypergraphs without edges, where no pair of
/// vertices is adjacent. It never compares numerically against a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sigma2 {
    Undefined,
    Value(usize),
}

impl Sigma2 {
    pub fn value(self) -> Option<usize> {
        match self {
            Sigma2::Undefined => None,
            Sigma2::Value(v) => Some(v),
        }
    }

    /// True only for a defined value strictly above `bound`.
    pub fn exceeds(self, bound: usize) -> bool {
        matches!(self, Sigma2::Value(v) if v > bound)
    }
}

impl fmt::Display for Sigma2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma2::Undefined => f.write_str("undefined"),
            Sigma2::Value(v) => write!(f, "{v}"),
        }
    }
}

/// A 2-graph living inside a declared vertex universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGraph {
    universe: VertexSet,
    edges: Vec<(usize, usize)>,
}

impl LinkGraph {
    /// Pairs are normalized to `(min, max)`, sorted and deduplicated.
    pub fn new(universe: VertexSet, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::SameVertex(a));
            }
            for v in [a, b] {
                if !universe.contains(v) {
                    return Err(Error::Parameters(format!(
                        "pair ({a},{b}) leaves the link universe"
                    )));
                }
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self { universe, edges })
    }

    pub fn universe(&self) -> &VertexSet {
        &self.universe
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, u: usize, w: usize) -> bool {
        self.edges.binary_search(&(u.min(w), u.max(w))).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }
}

/// An immutable 3-uniform hypergraph on vertices `1..=n`.
///
/// Edges are canonical triples kept in lexicographic order; every index is
/// derived from that list at construction.
#[derive(Clone)]
pub struct Hypergraph3 {
    n: usize,
    edges: Vec<Triple>,
    edge_sets: Vec<VertexSet>,
    /// `incidence[v]` lists edge indices containing `v`, ascending. Slot 0 is unused.
    incidence: Vec<Vec<usize>>,
    /// Codegree neighbourhoods for each unordered pair, triangular layout.
    pairs: Vec<VertexSet>,
    membership: Membership,
}

fn pair_slot(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    // pairs (a,b) with 1 <= a < b, grouped by b
    binom(b - 1, 2) + (a - 1)
}

impl Hypergraph3 {
    pub fn new(n: usize, triples: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let mut edges = triples
            .into_iter()
            .map(|t| canonical_triple(n, t))
            .collect::<Result<Vec<_>>>()?;
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_canonical(n, edges))
    }

    /// Builds indices for an already sorted, deduplicated, in-range edge list.
    fn from_canonical(n: usize, edges: Vec<Triple>) -> Self {
        let mut incidence = vec![Vec::new(); n + 1];
        let mut pairs = vec![VertexSet::new(); binom(n, 2)];
        let mut edge_sets = Vec::with_capacity(edges.len());
        for (i, t) in edges.iter().enumerate() {
            let [a, b, c] = *t;
            incidence[a].push(i);
            incidence[b].push(i);
            incidence[c].push(i);
            pairs[pair_slot(a, b)].insert(c);
            pairs[pair_slot(a, c)].insert(b);
            pairs[pair_slot(b, c)].insert(a);
            edge_sets.push(triple_set(t));
        }
        let membership = Membership::build(n, &edges);
        Self {
            n,
            edges,
            edge_sets,
            incidence,
            pairs,
            membership,
        }
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    /// The complete 3-graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, all_triples(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_set(&self, index: usize) -> &VertexSet {
        &self.edge_sets[index]
    }

    /// Indices of edges containing `v`, ascending. Panics if `v` is out of range.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn contains_edge(&self, raw: [usize; 3]) -> bool {
        match canonical_triple(self.n, raw) {
            Ok(t) => self.membership.contains(&t),
            Err(_) => false,
        }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        Ok(())
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.incidence[v].len())
    }

    /// Degrees indexed by label; slot 0 is always 0.
    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    /// `N(u,v)`: all `w` with `{u,v,w}` an edge.
    pub fn codegree_set(&self, u: usize, v: usize) -> Result<VertexSet> {
        self.check_pair(u, v)?;
        Ok(self.pairs[pair_slot(u, v)].clone())
    }

    pub fn codegree(&self, u: usize, v: usize) -> Result<usize> {
        self.check_pair(u, v)?;
        Ok(self.pairs[pair_slot(u, v)].len())
    }

    pub fn adjacent(&self, u: usize, v: usize) -> Result<bool> {
        self.check_pair(u, v)?;
        Ok(!self.pairs[pair_slot(u, v)].is_empty())
    }

    /// Vertices sharing at least one edge with `v`.
    pub fn neighbourhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut out = VertexSet::new();
        for &e in &self.incidence[v] {
            out.union_with(&self.edge_sets[e]);
        }
        out.remove(v);
        Ok(out)
    }

    /// Two vertices are adjacent exactly when they share an edge, so the
    /// minimum runs over the three pairs inside each edge.
    pub fn sigma2(&self) -> Sigma2 {
        self.edges
            .iter()
            .map(|t| {
                let mut d = t.map(|v| self.incidence[v].len());
                d.sort_unstable();
                d[0] + d[1]
            })
            .min()
            .map_or(Sigma2::Undefined, Sigma2::Value)
    }

    /// `δ_ℓ` for `ℓ ∈ {1, 2}`.
    pub fn delta(&self, ell: usize) -> Result<usize> {
        match ell {
            1 => Ok((1..=self.n).map(|v| self.incidence[v].len()).min().unwrap_or(0)),
            2 => {
                if self.n < 2 {
                    return Err(Error::Parameters("δ₂ needs at least two vertices".into()));
                }
                Ok(self.pairs.iter().map(VertexSet::len).min().unwrap_or(0))
            }
            other => Err(Error::BadDegreeOrder(other)),
        }
    }

    /// `L_v(A)`: pairs `uw` inside `A` with `{u,v,w}` an edge.
    pub fn link(&self, v: usize, a: &VertexSet) -> Result<LinkGraph> {
        self.check_vertex(v)?;
        if a.contains(v) {
            return Err(Error::LinkVertexInSet(v));
        }
        for u in a {
            self.check_vertex(u)?;
        }
        let pairs = self.incidence[v].iter().filter_map(|&e| {
            let others: Vec<usize> = self.edges[e].iter().copied().filter(|&x| x != v).collect();
            (a.contains(others[0]) && a.contains(others[1])).then(|| (others[0], others[1]))
        });
        LinkGraph::new(a.clone(), pairs)
    }

    /// `L_v(A,B)`: pairs `uw` with `u ∈ A`, `w ∈ B` and `{u,v,w}` an edge.
    pub fn link_bipartite(&self, v: usize, a: &VertexSet, b: &VertexSet) -> Result<LinkGraph> {
        self.check_vertex(v)?;
        if a.contains(v) || b.contains(v) {
            return Err(Error::LinkVertexInSet(v));
        }
        if let Some(x) = a.intersection(b).first() {
            return Err(Error::OverlappingSets(x));
        }
        for u in a.union(b).iter() {
            self.check_vertex(u)?;
        }
        let pairs = self.incidence[v].iter().filter_map(|&e| {
            let others: Vec<usize> = self.edges[e].iter().copied().filter(|&x| x != v).collect();
            let (x, y) = (others[0], others[1]);
            if (a.contains(x) && b.contains(y)) || (a.contains(y) && b.contains(x)) {
                Some((x, y))
            } else {
                None
            }
        });
        LinkGraph::new(a.union(b), pairs)
    }

    /// Edges admitting an assignment `v_i ∈ V_i` of their three vertices.
    pub fn count_edges_of_type(&self, v1: &VertexSet, v2: &VertexSet, v3: &VertexSet) -> usize {
        self.edges
            .iter()
            .filter(|t| edge_has_type(t, v1, v2, v3))
            .count()
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        (1..=self.n).filter(|&v| self.incidence[v].is_empty()).collect()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (1..=self.n).any(|v| self.incidence[v].is_empty())
    }

    /// Vertices lying in at least one edge.
    pub fn support(&self) -> VertexSet {
        (1..=self.n).filter(|&v| !self.incidence[v].is_empty()).collect()
    }

    /// A copy with one more edge; adding an existing edge is a no-op.
    pub fn with_edge(&self, raw: [usize; 3]) -> Result<Self> {
        let t = canonical_triple(self.n, raw)?;
        if self.membership.contains(&t) {
            return Ok(self.clone());
        }
        let mut edges = self.edges.clone();
        let at = edges.binary_search(&t).unwrap_err();
        edges.insert(at, t);
        Ok(Self::from_canonical(self.n, edges))
    }

    /// Same vertex set, edges restricted to those inside `keep`.
    pub fn restrict_edges(&self, keep: impl Fn(&Triple) -> bool) -> Self {
        let edges = self.edges.iter().copied().filter(|t| keep(t)).collect();
        Self::from_canonical(self.n, edges)
    }
}

impl fmt::Debug for Hypergraph3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph3")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl PartialEq for Hypergraph3 {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph3 {}

pub(crate) fn edge_has_type(t: &Triple, v1: &VertexSet, v2: &VertexSet, v3: &VertexSet) -> bool {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    PERMS
        .iter()
        .any(|p| v1.contains(t[p[0]]) && v2.contains(t[p[1]]) && v3.contains(t[p[2]]))
}

/// All canonical triples on `1..=n` in lexicographic order.
pub fn all_triples(n: usize) -> Vec<Triple> {
    let mut out = Vec::with_capacity(binom(n, 3));
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    binom(n, k)
}
