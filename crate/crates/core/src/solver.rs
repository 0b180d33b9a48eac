//! Exact maximum matching (3-set packing).
//!
//! The search branches on one vertex of the residual hypergraph: either one
//! of its incident edges joins the matching, or the vertex is dropped for
//! good. Residual hypergraphs are identified by their active vertex set
//! (the union of the surviving edges), which determines them completely, so
//! solved residuals are memoized. Every node is bounded by
//! `min(⌊active/3⌋, greedy vertex cover)`.

use std::collections::HashMap;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;
use crate::matching::Matching;
use crate::vertex_set::VertexSet;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
const MEMO_CAP: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchRule {
    /// Residual vertex of maximum residual degree, smallest label on ties.
    #[default]
    MaxDegree,
    /// Smallest residual label.
    SmallestLabel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// `None` means unlimited.
    pub node_budget: Option<u64>,
    /// Stop as soon as a matching of this size is found.
    pub target: Option<usize>,
    pub branching: BranchRule,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            node_budget: Some(DEFAULT_NODE_BUDGET),
            target: None,
            branching: BranchRule::MaxDegree,
        }
    }
}

impl SolverConfig {
    pub fn with_budget(budget: u64) -> Result<Self> {
        if budget == 0 {
            return Err(Error::Parameters("node budget must be positive".into()));
        }
        Ok(Self {
            node_budget: Some(budget),
            ..Self::default()
        })
    }

    pub fn unlimited() -> Self {
        Self {
            node_budget: None,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub nodes: u64,
    pub prunes: u64,
    pub memo_hits: u64,
}

#[derive(Debug, Clone)]
pub struct SolverResult {
    /// Size of the witness. Equals the matching number when `proved_optimal`.
    pub optimum: usize,
    pub witness: Matching,
    pub proved_optimal: bool,
    pub stats: SolverStats,
}

/// Answer to "is there a matching of size `s`?".
#[derive(Debug, Clone)]
pub struct Decision {
    pub found: bool,
    pub witness: Option<Matching>,
    /// False only when the budget ran out before either outcome was certain.
    pub proved: bool,
    pub stats: SolverStats,
}

/// Persistent list of edge indices forming a residual's best matching.
struct Chain {
    edge: usize,
    rest: Option<Rc<Chain>>,
}

type Witness = Option<Rc<Chain>>;

fn chain_edges(mut w: &Witness, out: &mut Vec<usize>) {
    while let Some(node) = w {
        out.push(node.edge);
        w = &node.rest;
    }
}

struct Abort;

struct Search<'a> {
    h: &'a Hypergraph3,
    cfg: &'a SolverConfig,
    memo: HashMap<VertexSet, (usize, Witness)>,
    stats: SolverStats,
    path: Vec<usize>,
    best: Vec<usize>,
    found_target: Option<Vec<usize>>,
    budget_exhausted: bool,
}

fn active_set(h: &Hypergraph3, remaining: &[usize]) -> VertexSet {
    let mut a = VertexSet::new();
    for &e in remaining {
        a.union_with(h.edge_set(e));
    }
    a
}

/// Size of a greedy vertex cover: edges through a common vertex pairwise
/// intersect, so a matching uses at most one edge per cover vertex.
fn greedy_cover_bound(h: &Hypergraph3, remaining: &[usize]) -> usize {
    let mut count = vec![0usize; h.n() + 1];
    for &e in remaining {
        for &v in &h.edges()[e] {
            count[v] += 1;
        }
    }
    let mut alive = vec![true; remaining.len()];
    let mut left = remaining.len();
    let mut picks = 0;
    while left > 0 {
        let (v, _) = count
            .iter()
            .enumerate()
            .max_by_key(|&(v, &c)| (c, std::cmp::Reverse(v)))
            .expect("nonempty");
        picks += 1;
        for (i, &e) in remaining.iter().enumerate() {
            if alive[i] && h.edges()[e].contains(&v) {
                alive[i] = false;
                left -= 1;
                for &x in &h.edges()[e] {
                    count[x] -= 1;
                }
            }
        }
    }
    picks
}

fn node_bound(h: &Hypergraph3, remaining: &[usize], active: &VertexSet) -> usize {
    (active.len() / 3).min(greedy_cover_bound(h, remaining))
}

/// Matching-number bound for the sub-hypergraph formed by the listed edges.
pub(crate) fn residual_bound(h: &Hypergraph3, remaining: &[usize]) -> usize {
    node_bound(h, remaining, &active_set(h, remaining))
}

/// Upper bound on the matching number used at the search root.
pub fn upper_bound(h: &Hypergraph3) -> usize {
    let all: Vec<usize> = (0..h.edge_count()).collect();
    node_bound(h, &all, &active_set(h, &all))
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph3, cfg: &'a SolverConfig) -> Self {
        Self {
            h,
            cfg,
            memo: HashMap::new(),
            stats: SolverStats::default(),
            path: Vec::new(),
            best: Vec::new(),
            found_target: None,
            budget_exhausted: false,
        }
    }

    fn pick_vertex(&self, remaining: &[usize], active: &VertexSet) -> usize {
        match self.cfg.branching {
            BranchRule::SmallestLabel => active.first().expect("active set is nonempty"),
            BranchRule::MaxDegree => {
                let mut count = vec![0usize; self.h.n() + 1];
                for &e in remaining {
                    for &v in &self.h.edges()[e] {
                        count[v] += 1;
                    }
                }
                let mut best_v = 0;
                let mut best_c = 0;
                for v in active {
                    if count[v] > best_c {
                        best_c = count[v];
                        best_v = v;
                    }
                }
                best_v
            }
        }
    }

    /// Records `path + extra + chain` as a candidate and checks the target.
    fn offer(&mut self, extra: usize, chain: &Witness, size: usize) -> std::result::Result<(), Abort> {
        let total = self.path.len() + size;
        let hit_target = self.cfg.target.is_some_and(|t| total >= t);
        if total > self.best.len() || hit_target {
            let mut edges = self.path.clone();
            edges.push(extra);
            chain_edges(chain, &mut edges);
            if hit_target {
                self.found_target = Some(edges);
                return Err(Abort);
            }
            self.best = edges;
        }
        Ok(())
    }

    fn solve(&mut self, remaining: &[usize]) -> std::result::Result<(usize, Witness), Abort> {
        self.stats.nodes += 1;
        if self.cfg.node_budget.is_some_and(|b| self.stats.nodes > b) {
            self.budget_exhausted = true;
            return Err(Abort);
        }
        if remaining.is_empty() {
            return Ok((0, None));
        }
        let active = active_set(self.h, remaining);
        if let Some((value, w)) = self.memo.get(&active) {
            self.stats.memo_hits += 1;
            return Ok((*value, w.clone()));
        }
        let ub = node_bound(self.h, remaining, &active);
        let v = self.pick_vertex(remaining, &active);

        let mut best_value = 0;
        let mut best_witness: Witness = None;
        for &e in remaining.iter().filter(|&&e| self.h.edges()[e].contains(&v)) {
            if best_value == ub {
                break;
            }
            let eset = self.h.edge_set(e);
            let child: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&f| self.h.edge_set(f).is_disjoint(eset))
                .collect();
            let child_active_len = active.len() - 3;
            if child_active_len / 3 < best_value || child.len() < best_value {
                self.stats.prunes += 1;
                continue;
            }
            self.path.push(e);
            let outcome = self.solve(&child);
            self.path.pop();
            let (r, w) = outcome?;
            if 1 + r > best_value {
                best_value = 1 + r;
                best_witness = Some(Rc::new(Chain { edge: e, rest: w }));
                let chain = best_witness.as_ref().unwrap().rest.clone();
                self.offer(e, &chain, best_value)?;
            }
        }
        if best_value < ub {
            let child: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&f| !self.h.edges()[f].contains(&v))
                .collect();
            let cheap = active_set(self.h, &child).len() / 3;
            if cheap.min(child.len()) <= best_value {
                self.stats.prunes += 1;
            } else {
                let (r, w) = self.solve(&child)?;
                if r > best_value {
                    best_value = r;
                    best_witness = w;
                }
            }
        }
        if self.memo.len() < MEMO_CAP {
            self.memo.insert(active, (best_value, best_witness.clone()));
        }
        Ok((best_value, best_witness))
    }
}

fn to_matching(h: &Hypergraph3, edges: &[usize]) -> Matching {
    let mut sorted: Vec<_> = edges.iter().map(|&e| h.edges()[e]).collect();
    sorted.sort_unstable();
    Matching::new(sorted).expect("search only combines disjoint edges")
}

pub fn max_matching_exact(h: &Hypergraph3, cfg: &SolverConfig) -> SolverResult {
    let mut search = Search::new(h, cfg);
    let all: Vec<usize> = (0..h.edge_count()).collect();
    let root_ub = upper_bound(h);
    match search.solve(&all) {
        Ok((value, w)) => {
            let mut edges = Vec::new();
            chain_edges(&w, &mut edges);
            debug_assert_eq!(edges.len(), value);
            SolverResult {
                optimum: value,
                witness: to_matching(h, &edges),
                proved_optimal: true,
                stats: search.stats,
            }
        }
        Err(Abort) => {
            let edges = search.found_target.take().unwrap_or_else(|| search.best.clone());
            let witness = to_matching(h, &edges);
            SolverResult {
                optimum: witness.len(),
                proved_optimal: witness.len() >= root_ub,
                witness,
                stats: search.stats,
            }
        }
    }
}

/// Decides whether `h` has `s` disjoint edges, stopping at the first witness.
pub fn has_matching_of_size(h: &Hypergraph3, s: usize, cfg: &SolverConfig) -> Decision {
    if s == 0 {
        return Decision {
            found: true,
            witness: Some(Matching::empty()),
            proved: true,
            stats: SolverStats::default(),
        };
    }
    if upper_bound(h) < s {
        return Decision {
            found: false,
            witness: None,
            proved: true,
            stats: SolverStats::default(),
        };
    }
    let cfg = SolverConfig {
        target: Some(s),
        ..cfg.clone()
    };
    let r = max_matching_exact(h, &cfg);
    if r.optimum >= s {
        Decision {
            found: true,
            witness: Some(r.witness.truncated(s)),
            proved: true,
            stats: r.stats,
        }
    } else {
        Decision {
            found: false,
            witness: None,
            proved: r.proved_optimal,
            stats: r.stats,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteforceCap {
    pub max_edges: usize,
    pub max_vertices: usize,
}

impl Default for BruteforceCap {
    fn default() -> Self {
        Self {
            max_edges: 25,
            max_vertices: 9,
        }
    }
}

/// Exhaustive enumeration of every matching; the reference the solver is checked against.
pub fn max_matching_bruteforce(h: &Hypergraph3) -> Result<usize> {
    max_matching_bruteforce_capped(h, BruteforceCap::default())
}

pub fn max_matching_bruteforce_capped(h: &Hypergraph3, cap: BruteforceCap) -> Result<usize> {
    if h.edge_count() > cap.max_edges && h.n() > cap.max_vertices {
        return Err(Error::OverCap {
            n: h.n(),
            edges: h.edge_count(),
            cap: cap.max_edges,
        });
    }
    Ok(enumerate_matchings(h))
}

/// No cap; exponential in the number of matchings.
pub fn max_matching_bruteforce_uncapped(h: &Hypergraph3) -> usize {
    enumerate_matchings(h)
}

fn enumerate_matchings(h: &Hypergraph3) -> usize {
    fn rec(h: &Hypergraph3, start: usize, covered: &mut Vec<bool>, size: usize, best: &mut usize) {
        *best = (*best).max(size);
        for j in start..h.edge_count() {
            let t = h.edges()[j];
            if t.iter().all(|&v| !covered[v]) {
                for &v in &t {
                    covered[v] = true;
                }
                rec(h, j + 1, covered, size + 1, best);
                for &v in &t {
                    covered[v] = false;
                }
            }
        }
    }
    let mut covered = vec![false; h.n() + 1];
    let mut best = 0;
    rec(h, 0, &mut covered, 0, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_extremal, ExtremalSpec};
    use crate::hypergraph::all_triples;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_h(rng: &mut ChaCha8Rng, n: usize) -> Hypergraph3 {
        let p = rng.random_range(0.02..0.6);
        let edges: Vec<_> = all_triples(n).into_iter().filter(|_| rng.random_bool(p)).collect();
        Hypergraph3::new(n, edges).unwrap()
    }

    #[test]
    fn complete_graph_examples() {
        let cfg = SolverConfig::default();
        let k5 = Hypergraph3::complete(5).unwrap();
        let k6 = Hypergraph3::complete(6).unwrap();
        assert_eq!(max_matching_exact(&k5, &cfg).optimum, 1);
        let r = max_matching_exact(&k6, &cfg);
        assert_eq!(r.optimum, 2);
        assert!(r.proved_optimal);
        assert_eq!(max_matching_bruteforce(&k5).unwrap(), 1);
        assert_eq!(max_matching_bruteforce(&k6).unwrap(), 2);
    }

    #[test]
    fn extremal_h2_12_4() {
        let (h, _) = build_extremal(ExtremalSpec::new(2, 12, 4)).unwrap();
        let r = max_matching_exact(&h, &SolverConfig::default());
        assert!(r.proved_optimal);
        assert_eq!(r.optimum, 3);
        assert_eq!(max_matching_bruteforce_uncapped(&h), 3);
        r.witness.validate_in(&h).unwrap();
    }

    #[test]
    fn decision_examples() {
        let cfg = SolverConfig::default();
        let k6 = Hypergraph3::complete(6).unwrap();
        let d = has_matching_of_size(&k6, 2, &cfg);
        assert!(d.found && d.proved);
        assert_eq!(d.witness.unwrap().edges(), &[[1, 2, 3], [4, 5, 6]]);
        let (h2, _) = build_extremal(ExtremalSpec::new(2, 9, 3)).unwrap();
        let d = has_matching_of_size(&h2, 3, &cfg);
        assert!(!d.found && d.proved);
        let empty = Hypergraph3::empty(4).unwrap();
        let d = has_matching_of_size(&empty, 0, &cfg);
        assert!(d.found);
        assert!(d.witness.unwrap().is_empty());
    }

    #[test]
    fn bruteforce_cap() {
        let k10 = Hypergraph3::complete(10).unwrap();
        assert!(matches!(max_matching_bruteforce(&k10), Err(Error::OverCap { .. })));
        let k9 = Hypergraph3::complete(9).unwrap();
        assert_eq!(max_matching_bruteforce(&k9).unwrap(), 3);
    }

    #[test]
    fn budget_exhaustion_keeps_best_witness() {
        let (h, _) = build_extremal(ExtremalSpec::new(2, 15, 5)).unwrap();
        let cfg = SolverConfig::with_budget(5).unwrap();
        let r = max_matching_exact(&h, &cfg);
        assert!(!r.proved_optimal);
        r.witness.validate_in(&h).unwrap();
        assert!(SolverConfig::with_budget(0).is_err());
    }

    #[test]
    fn branch_rules_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = SolverConfig::default();
        let b = SolverConfig {
            branching: BranchRule::SmallestLabel,
            ..SolverConfig::default()
        };
        for _ in 0..200 {
            let n = rng.random_range(3..=10);
            let h = random_h(&mut rng, n);
            assert_eq!(max_matching_exact(&h, &a).optimum, max_matching_exact(&h, &b).optimum);
        }
    }

    #[test]
    fn oracle_equivalence_and_bound_soundness() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..400 {
            let n = rng.random_range(3..=9);
            let h = random_h(&mut rng, n);
            let truth = max_matching_bruteforce(&h).unwrap();
            let r = max_matching_exact(&h, &SolverConfig::default());
            assert!(r.proved_optimal);
            assert_eq!(r.optimum, truth, "{h:?}");
            assert!(r.witness.check_invariants());
            r.witness.validate_in(&h).unwrap();
            assert!(upper_bound(&h) >= truth);
            for s in 0..=n / 3 + 1 {
                let d = has_matching_of_size(&h, s, &SolverConfig::default());
                assert_eq!(d.found, truth >= s);
                if let Some(w) = d.witness {
                    assert_eq!(w.len(), s);
                    w.validate_in(&h).unwrap();
                }
            }
        }
    }

    #[test]
    fn adding_an_edge_never_lowers_the_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let cfg = SolverConfig::default();
        for _ in 0..200 {
            let n = rng.random_range(4..=10);
            let h = random_h(&mut rng, n);
            let t = all_triples(n)[rng.random_range(0..all_triples(n).len())];
            let g = h.with_edge(t).unwrap();
            assert!(max_matching_exact(&g, &cfg).optimum >= max_matching_exact(&h, &cfg).optimum);
        }
    }
}
