//! Membership tests for the extremal families `H^ℓ_{n,s}` with checkable
//! `(S, T)` certificates.
//!
//! * `ℓ = 2` reduces to independent sets in the co-occurrence graph: `H`
//!   embeds in `H²_{n,s}` iff some `n − 2s + 1` vertices are pairwise
//!   non-adjacent in `H`.
//! * `ℓ = 1` is a transversal of size `s − 1`.
//! * `ℓ = 3` is a support of at most `3s − 1` vertices.

use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph3, LinkGraph};
use crate::vertex_set::VertexSet;

/// An `(S, T)` split of `1..=n` claiming every edge has at least `ℓ` vertices in `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCertificate {
    n: usize,
    ell: usize,
    s: usize,
    s_side: VertexSet,
    t_side: VertexSet,
}

impl PartitionCertificate {
    /// Builds the certificate from `T`; `S` is the complement.
    pub fn new(n: usize, ell: usize, s: usize, t_side: VertexSet) -> Result<Self> {
        let s_side = VertexSet::full(n).difference(&t_side);
        Self::from_parts(n, ell, s, s_side, t_side)
    }

    pub fn from_parts(n: usize, ell: usize, s: usize, s_side: VertexSet, t_side: VertexSet) -> Result<Self> {
        let malformed = |m: String| Err(Error::MalformedCertificate(m));
        if !(1..=3).contains(&ell) {
            return malformed(format!("ℓ = {ell} is not 1, 2 or 3"));
        }
        if s == 0 {
            return malformed("s must be positive".into());
        }
        let all = VertexSet::full(n);
        if !s_side.is_disjoint(&t_side) || s_side.union(&t_side) != all {
            return malformed(format!("S and T do not partition 1..={n}"));
        }
        if t_side.len() != s * ell - 1 {
            return malformed(format!("|T| = {} but sℓ − 1 = {}", t_side.len(), s * ell - 1));
        }
        Ok(Self {
            n,
            ell,
            s,
            s_side,
            t_side,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn s_side(&self) -> &VertexSet {
        &self.s_side
    }

    pub fn t_side(&self) -> &VertexSet {
        &self.t_side
    }

    /// `T: v v v`, the sidecar line written next to generated files.
    pub fn t_line(&self) -> String {
        format!("T: {}", self.t_side)
    }

    /// Reads a `T: …` line back into a certificate.
    pub fn parse_t_line(line: &str, n: usize, ell: usize, s: usize) -> Result<Self> {
        let body = line
            .trim()
            .strip_prefix("T:")
            .ok_or_else(|| Error::MalformedCertificate("line must start with `T:`".into()))?;
        let mut t = VertexSet::new();
        for tok in body.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::MalformedCertificate(format!("bad vertex {tok:?}")))?;
            if v == 0 || v > n {
                return Err(Error::MalformedCertificate(format!("vertex {v} outside 1..={n}")));
            }
            t.insert(v);
        }
        Self::new(n, ell, s, t)
    }
}

impl fmt::Display for PartitionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S: {}\nT: {}", self.s_side, self.t_side)
    }
}

/// True iff every edge has at least `ℓ` vertices in the certificate's `T`.
pub fn verify_certificate(h: &Hypergraph3, cert: &PartitionCertificate) -> Result<bool> {
    if cert.n != h.n() {
        return Err(Error::MalformedCertificate(format!(
            "certificate is for n = {}, hypergraph has n = {}",
            cert.n,
            h.n()
        )));
    }
    Ok(h.edges()
        .iter()
        .all(|t| t.iter().filter(|v| cert.t_side.contains(**v)).count() >= cert.ell))
}

/// `u ~ v` iff some edge contains both.
pub fn cooccurrence_graph(h: &Hypergraph3) -> LinkGraph {
    let mut pairs = Vec::with_capacity(3 * h.edge_count());
    for &[a, b, c] in h.edges() {
        pairs.extend([(a, b), (a, c), (b, c)]);
    }
    LinkGraph::new(h.vertices(), pairs).expect("edge pairs lie inside the vertex range")
}

fn adjacency_rows(h: &Hypergraph3) -> Vec<VertexSet> {
    let mut rows = vec![VertexSet::new(); h.n() + 1];
    for t in h.edges() {
        for &v in t {
            for &u in t {
                if u != v {
                    rows[v].insert(u);
                }
            }
        }
    }
    rows
}

/// Greedy clique cover of `cand`: an independent set picks at most one
/// vertex from each clique, so the number of cliques bounds it.
fn clique_cover_bound(adj: &[VertexSet], cand: &VertexSet) -> usize {
    let mut left = cand.clone();
    let mut cliques = 0;
    while let Some(v) = left.first() {
        cliques += 1;
        // grow a clique from v among the remaining candidates, ascending
        let mut pool = left.intersection(&adj[v]);
        left.remove(v);
        while let Some(u) = pool.first() {
            left.remove(u);
            pool = pool.intersection(&adj[u]);
        }
    }
    cliques
}

fn above(cand: &VertexSet, v: usize) -> VertexSet {
    cand.iter().filter(|&u| u > v).collect()
}

/// Lexicographically smallest independent set of exactly `k` vertices.
fn lex_first_independent(adj: &[VertexSet], all: &VertexSet, k: usize) -> Option<VertexSet> {
    fn dfs(adj: &[VertexSet], cand: &VertexSet, chosen: &mut Vec<usize>, k: usize) -> bool {
        if chosen.len() == k {
            return true;
        }
        if chosen.len() + clique_cover_bound(adj, cand) < k {
            return false;
        }
        for v in cand {
            let rest = above(cand, v);
            let next = rest.difference(&adj[v]);
            chosen.push(v);
            if dfs(adj, &next, chosen, k) {
                return true;
            }
            chosen.pop();
            if chosen.len() + clique_cover_bound(adj, &rest) < k {
                break;
            }
        }
        false
    }
    let mut chosen = Vec::new();
    dfs(adj, all, &mut chosen, k).then(|| chosen.into_iter().collect())
}

/// Independence number of the co-occurrence graph, by branch and bound
/// with the greedy clique-cover bound.
pub fn independence_number(h: &Hypergraph3) -> usize {
    fn bb(adj: &[VertexSet], cand: &VertexSet, size: usize, best: &mut usize) {
        if cand.is_empty() {
            *best = (*best).max(size);
            return;
        }
        if size + clique_cover_bound(adj, cand) <= *best {
            return;
        }
        for v in cand {
            let rest = above(cand, v);
            bb(adj, &rest.difference(&adj[v]), size + 1, best);
            if size + clique_cover_bound(adj, &rest) <= *best {
                break;
            }
        }
    }
    let adj = adjacency_rows(h);
    let mut best = 0;
    bb(&adj, &h.vertices(), 0, &mut best);
    best
}

fn check_theorem_range(h: &Hypergraph3, s: usize) -> Result<()> {
    if s == 0 || 3 * s > h.n() {
        return Err(Error::Parameters(format!(
            "need 1 ≤ s and 3s ≤ n, got s = {s}, n = {}",
            h.n()
        )));
    }
    Ok(())
}

/// A certificate for `H ⊆ H²_{n,s}`, with the lexicographically smallest `S`.
pub fn is_subgraph_of_h2(h: &Hypergraph3, s: usize) -> Result<Option<PartitionCertificate>> {
    check_theorem_range(h, s)?;
    let n = h.n();
    let k = n - 2 * s + 1;
    let adj = adjacency_rows(h);
    Ok(lex_first_independent(&adj, &h.vertices(), k).map(|s_side| {
        let t_side = h.vertices().difference(&s_side);
        PartitionCertificate::from_parts(n, 2, s, s_side, t_side).expect("sizes match by construction")
    }))
}

fn pad(t: VertexSet, n: usize, size: usize) -> VertexSet {
    let mut t = t;
    for v in 1..=n {
        if t.len() >= size {
            break;
        }
        t.insert(v);
    }
    t
}

/// A certificate for `H ⊆ H¹_{n,s}`: some `s − 1` vertices meet every edge.
pub fn is_subgraph_of_h1(h: &Hypergraph3, s: usize) -> Result<Option<PartitionCertificate>> {
    check_theorem_range(h, s)?;
    fn search(h: &Hypergraph3, t: &mut VertexSet, left: usize) -> bool {
        let missed = h.edges().iter().find(|e| e.iter().all(|v| !t.contains(*v)));
        match missed {
            None => true,
            Some(_) if left == 0 => false,
            Some(e) => {
                for &v in e {
                    t.insert(v);
                    if search(h, t, left - 1) {
                        return true;
                    }
                    t.remove(v);
                }
                false
            }
        }
    }
    let mut t = VertexSet::new();
    if !search(h, &mut t, s - 1) {
        return Ok(None);
    }
    let t = pad(t, h.n(), s - 1);
    PartitionCertificate::new(h.n(), 1, s, t).map(Some)
}

/// A certificate for `H ⊆ H³_{n,s}`: all edges live on at most `3s − 1` vertices.
pub fn is_subgraph_of_h3(h: &Hypergraph3, s: usize) -> Result<Option<PartitionCertificate>> {
    check_theorem_range(h, s)?;
    let support = h.support();
    if support.len() > 3 * s - 1 {
        return Ok(None);
    }
    let t = pad(support, h.n(), 3 * s - 1);
    PartitionCertificate::new(h.n(), 3, s, t).map(Some)
}

/// Dispatches on `ℓ`.
pub fn is_subgraph_of_family(h: &Hypergraph3, ell: usize, s: usize) -> Result<Option<PartitionCertificate>> {
    match ell {
        1 => is_subgraph_of_h1(h, s),
        2 => is_subgraph_of_h2(h, s),
        3 => is_subgraph_of_h3(h, s),
        other => Err(Error::Parameters(format!("family index must be 1, 2 or 3, got {other}"))),
    }
}
