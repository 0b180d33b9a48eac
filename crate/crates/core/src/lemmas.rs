//! Brute-force and sampled checkers for five small extremal bounds used when
//! growing matchings:
//!
//! * `AH`: an `n`-balanced `k`-partite `k`-graph without `s` disjoint edges
//!   has at most `(s−1)·n^{k−1}` edges.
//! * `L2`: three graphs on `n ≥ 4` vertices, every `G₁` edge meeting every
//!   `G₂` and `G₃` edge: degree sum over any 3-set is at most `6(n−1)`.
//! * `L3`: as `L2` but pairwise for all three and `n ≥ 5`: at most `3(n+1)`.
//! * `L4k`: `k` pairwise cross-intersecting graphs on `n ≥ 4` vertices:
//!   degree sum over any 2-set is at most `k·n`.
//! * `L5`: graphs on `A ∪ B` with the isolation and disjointness conditions
//!   below: `deg(u₁)+deg(u₂)+deg(v₁)` summed over the three graphs is at most
//!   `max{4a+7, 3a+2b+5}`.
//!
//! Graphs here use labels `1..=n` with `n ≤ 63`.

use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;

const MAX_LABEL: usize = 63;
pub const SAMPLED_PROBES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaVariant {
    Ah,
    L2,
    L3,
    L4k,
    L5,
}

impl LemmaVariant {
    pub const ALL: [LemmaVariant; 5] = [Self::Ah, Self::L2, Self::L3, Self::L4k, Self::L5];
}

impl fmt::Display for LemmaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ah => "AH",
            Self::L2 => "L2",
            Self::L3 => "L3",
            Self::L4k => "L4k",
            Self::L5 => "L5",
        })
    }
}

impl FromStr for LemmaVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ah" => Ok(Self::Ah),
            "l2" => Ok(Self::L2),
            "l3" => Ok(Self::L3),
            "l4k" | "l4" => Ok(Self::L4k),
            "l5" => Ok(Self::L5),
            _ => Err(Error::Parameters(format!("unknown lemma variant {s:?} (expected AH, L2, L3, L4k or L5)"))),
        }
    }
}

/// An `n`-balanced `k`-partite `k`-graph. Part `i` holds labels
/// `i·n + 1 ..= (i+1)·n`; a tuple stores the offset `0..n` chosen in each part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPartiteKGraph {
    k: usize,
    n: usize,
    tuples: Vec<Vec<usize>>,
}

impl KPartiteKGraph {
    pub fn new(k: usize, n: usize, tuples: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::Parameters("k-partite graphs need k ≥ 1 and n ≥ 1".into()));
        }
        let mut tuples: Vec<Vec<usize>> = tuples.into_iter().collect();
        for t in &tuples {
            if t.len() != k || t.iter().any(|&x| x >= n) {
                return Err(Error::Parameters(format!("tuple {t:?} does not pick one of {n} vertices in each of {k} parts")));
            }
        }
        tuples.sort_unstable();
        tuples.dedup();
        Ok(Self { k, n, tuples })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.tuples.len()
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// Labels of a tuple, one per part block.
    pub fn labels(&self, tuple: &[usize]) -> Vec<usize> {
        tuple.iter().enumerate().map(|(i, x)| i * self.n + x + 1).collect()
    }

    /// Whether `s` pairwise disjoint tuples exist.
    pub fn has_disjoint(&self, s: usize) -> bool {
        fn rec(tuples: &[Vec<usize>], start: usize, used: &mut [u64], need: usize) -> bool {
            if need == 0 {
                return true;
            }
            for j in start..tuples.len() {
                if tuples.len() - j < need {
                    return false;
                }
                let t = &tuples[j];
                if t.iter().enumerate().all(|(i, &x)| used[i] & (1 << x) == 0) {
                    t.iter().enumerate().for_each(|(i, &x)| used[i] |= 1 << x);
                    let found = rec(tuples, j + 1, used, need - 1);
                    t.iter().enumerate().for_each(|(i, &x)| used[i] &= !(1 << x));
                    if found {
                        return true;
                    }
                }
            }
            false
        }
        if s > self.n {
            return false;
        }
        rec(&self.tuples, 0, &mut vec![0u64; self.k], s)
    }

    pub fn ah_bound(&self, s: usize) -> usize {
        s.saturating_sub(1) * self.n.pow(self.k as u32 - 1)
    }
}

/// True unless `g` violates the bound: it has `s` disjoint edges or `|F| ≤ (s−1)·n^{k−1}`.
pub fn check_ah_bound(g: &KPartiteKGraph, s: usize) -> bool {
    g.edge_count() <= g.ah_bound(s) || g.has_disjoint(s)
}

/// A simple graph on labels `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph2 {
    n: usize,
    adj: Vec<u64>,
}

impl Graph2 {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_LABEL {
            return Err(Error::Parameters(format!("graphs here hold at most {MAX_LABEL} vertices")));
        }
        Ok(Self { n, adj: vec![0; n + 1] })
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::new(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::SameVertex(u));
        }
        for x in [u, v] {
            if x == 0 || x > self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u, v)?;
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u <= self.n && v <= self.n {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u <= self.n && v <= self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.get(v).map_or(0, |m| m.count_ones() as usize)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.n)
            .flat_map(|u| (u + 1..=self.n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// The same edges on a larger vertex set.
    pub fn embedded(&self, n: usize) -> Result<Self> {
        if n < self.n {
            return Err(Error::Parameters("cannot embed into fewer vertices".into()));
        }
        Self::from_edges(n, self.edges())
    }
}

impl fmt::Debug for Graph2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}{:?}", self.n, self.edges())
    }
}

fn disjoint_pair_exists(g: &Graph2, h: &Graph2, accept: impl Fn((usize, usize), (usize, usize)) -> bool) -> bool {
    let he = h.edges();
    g.edges()
        .into_iter()
        .any(|e| he.iter().any(|&f| e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1 && accept(e, f)))
}

/// Whether every edge of `g` meets every edge of `h`.
pub fn cross_intersecting(g: &Graph2, h: &Graph2) -> bool {
    !disjoint_pair_exists(g, h, |_, _| true)
}

/// Graphs on a shared vertex set, with the optional `(A, B)` split used by `L5`.
#[derive(Clone, PartialEq, Eq)]
pub struct GraphFamily {
    n: usize,
    graphs: Vec<Graph2>,
    split: Option<(Vec<usize>, Vec<usize>)>,
}

impl GraphFamily {
    pub fn new(n: usize, graphs: Vec<Graph2>) -> Result<Self> {
        if let Some(g) = graphs.iter().find(|g| g.n() != n) {
            return Err(Error::Parameters(format!("graph on {} vertices in a family on {n}", g.n())));
        }
        Ok(Self { n, graphs, split: None })
    }

    /// Family on `A ∪ B` with `A = 1..=a` and `B = a+1..=a+b`.
    pub fn with_split(a: usize, b: usize, graphs: Vec<Graph2>) -> Result<Self> {
        let mut fam = Self::new(a + b, graphs)?;
        fam.split = Some(((1..=a).collect(), (a + 1..=a + b).collect()));
        Ok(fam)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graphs(&self) -> &[Graph2] {
        &self.graphs
    }

    pub fn graphs_mut(&mut self) -> &mut [Graph2] {
        &mut self.graphs
    }

    pub fn split(&self) -> Option<(&[usize], &[usize])> {
        self.split.as_ref().map(|(a, b)| (a.as_slice(), b.as_slice()))
    }

    fn pairwise(&self) -> bool {
        (0..self.graphs.len()).all(|i| (i + 1..self.graphs.len()).all(|j| cross_intersecting(&self.graphs[i], &self.graphs[j])))
    }

    fn in_b(&self, v: usize) -> bool {
        self.split.as_ref().is_some_and(|(_, b)| b.contains(&v))
    }

    /// The variant's hypothesis, read literally.
    pub fn hypothesis(&self, variant: LemmaVariant) -> bool {
        let g = &self.graphs;
        match variant {
            LemmaVariant::Ah => false,
            LemmaVariant::L2 => self.n >= 4 && g.len() == 3 && cross_intersecting(&g[0], &g[1]) && cross_intersecting(&g[0], &g[2]),
            LemmaVariant::L3 => self.n >= 5 && g.len() == 3 && self.pairwise(),
            LemmaVariant::L4k => self.n >= 4 && g.len() >= 2 && self.pairwise(),
            LemmaVariant::L5 => {
                let Some((a, b)) = &self.split else { return false };
                if a.len() < 3 || b.is_empty() || g.len() != 3 {
                    return false;
                }
                let b_isolated_in_g1 = b.iter().all(|&v| g[0].degree(v) == 0);
                let meets_a = g[1..].iter().all(|gi| gi.edges().iter().all(|&(x, y)| !self.in_b(x) || !self.in_b(y)));
                let cond_i = cross_intersecting(&g[0], &g[1]) && cross_intersecting(&g[0], &g[2]);
                let cond_ii = !disjoint_pair_exists(&g[1], &g[2], |e, f| [e.0, e.1, f.0, f.1].iter().any(|&v| self.in_b(v)));
                b_isolated_in_g1 && meets_a && cond_i && cond_ii
            }
        }
    }

    pub fn bound(&self, variant: LemmaVariant) -> usize {
        let n = self.n;
        match variant {
            LemmaVariant::Ah => 0,
            LemmaVariant::L2 => 6 * (n - 1),
            LemmaVariant::L3 => 3 * (n + 1),
            LemmaVariant::L4k => self.graphs.len() * n,
            LemmaVariant::L5 => {
                let (a, b) = self.split().map_or((0, 0), |(a, b)| (a.len(), b.len()));
                (4 * a + 7).max(3 * a + 2 * b + 5)
            }
        }
    }

    pub fn degree_sum(&self, probe: &[usize]) -> usize {
        self.graphs.iter().map(|g| probe.iter().map(|&v| g.degree(v)).sum::<usize>()).sum()
    }

    fn validate_probe(&self, variant: LemmaVariant, probe: &[usize]) -> Result<()> {
        let size = match variant {
            LemmaVariant::Ah => return Err(Error::Parameters("AH takes no probe set".into())),
            LemmaVariant::L2 | LemmaVariant::L3 | LemmaVariant::L5 => 3,
            LemmaVariant::L4k => 2,
        };
        if probe.len() != size {
            return Err(Error::Parameters(format!("{variant} probes {size} vertices, got {}", probe.len())));
        }
        for (i, &v) in probe.iter().enumerate() {
            if v == 0 || v > self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            if probe[..i].contains(&v) {
                return Err(Error::Parameters(format!("probe repeats vertex {v}")));
            }
        }
        if variant == LemmaVariant::L5 {
            let (a, b) = self.split().ok_or_else(|| Error::Parameters("L5 needs an (A, B) split".into()))?;
            if !a.contains(&probe[0]) || !a.contains(&probe[1]) || !b.contains(&probe[2]) {
                return Err(Error::Parameters("L5 probes (u₁, u₂, v₁) with u's in A and v₁ in B".into()));
            }
        }
        Ok(())
    }

    /// All probe sets for a variant, in lexicographic order.
    pub fn all_probes(&self, variant: LemmaVariant) -> Vec<Vec<usize>> {
        match variant {
            LemmaVariant::Ah => Vec::new(),
            LemmaVariant::L2 | LemmaVariant::L3 => subsets(self.n, 3),
            LemmaVariant::L4k => subsets(self.n, 2),
            LemmaVariant::L5 => {
                let Some((a, b)) = self.split() else { return Vec::new() };
                let mut out = Vec::new();
                for (i, &u1) in a.iter().enumerate() {
                    for &u2 in &a[i + 1..] {
                        out.extend(b.iter().map(|&v| vec![u1, u2, v]));
                    }
                }
                out
            }
        }
    }
}

impl fmt::Debug for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        if let Some((a, b)) = self.split() {
            write!(f, " A={a:?} B={b:?}")?;
        }
        for (i, g) in self.graphs.iter().enumerate() {
            write!(f, " G{}={:?}", i + 1, g.edges())?;
        }
        Ok(())
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundCheck {
    Holds { sum: usize, bound: usize },
    Violated { sum: usize, bound: usize },
    /// The hypothesis fails, so the bound says nothing.
    Inapplicable,
}

pub fn check_intersecting_bound(fam: &GraphFamily, variant: LemmaVariant, probe: &[usize]) -> Result<BoundCheck> {
    fam.validate_probe(variant, probe)?;
    if !fam.hypothesis(variant) {
        return Ok(BoundCheck::Inapplicable);
    }
    let (sum, bound) = (fam.degree_sum(probe), fam.bound(variant));
    Ok(if sum <= bound {
        BoundCheck::Holds { sum, bound }
    } else {
        BoundCheck::Violated { sum, bound }
    })
}

/// Sizes for sampled instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaParams {
    /// Vertices (part size for `AH`).
    pub n: usize,
    /// Uniformity for `AH`, number of graphs for `L4k`.
    pub k: usize,
    /// Forbidden matching size for `AH`.
    pub s: usize,
    pub a: usize,
    pub b: usize,
}

impl LemmaParams {
    pub fn defaults(variant: LemmaVariant) -> Self {
        let base = Self { n: 6, k: 3, s: 2, a: 3, b: 2 };
        match variant {
            LemmaVariant::Ah => Self { n: 3, ..base },
            LemmaVariant::L5 => Self { n: 5, ..base },
            _ => base,
        }
    }

    fn validate(&self, variant: LemmaVariant) -> Result<()> {
        let ok = match variant {
            LemmaVariant::Ah => self.k >= 1 && self.n >= 1 && self.s >= 1 && self.n.pow(self.k as u32) <= 4096,
            LemmaVariant::L2 | LemmaVariant::L4k => self.n >= 4 && self.n <= MAX_LABEL && (variant == LemmaVariant::L2 || self.k >= 2),
            LemmaVariant::L3 => self.n >= 5 && self.n <= MAX_LABEL,
            LemmaVariant::L5 => self.a >= 3 && self.b >= 1 && self.a + self.b <= MAX_LABEL,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parameters(format!("parameters {self:?} do not fit variant {variant}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub instance: String,
    pub probe: Vec<usize>,
    pub sum: usize,
    pub bound: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} probe={:?} sum={} bound={}", self.instance, self.probe, self.sum, self.bound)
    }
}

/// Aggregate over a sweep. `checks` counts probe evaluations (edge-count
/// comparisons for `AH`); `min_slack` is the smallest `bound − sum` seen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub variant: LemmaVariant,
    pub label: String,
    pub instances: u64,
    pub inapplicable: u64,
    pub checks: u64,
    pub min_slack: Option<usize>,
    pub violations: Vec<Violation>,
}

impl LemmaReport {
    fn new(variant: LemmaVariant, label: String) -> Self {
        Self {
            variant,
            label,
            instances: 0,
            inapplicable: 0,
            checks: 0,
            min_slack: None,
            violations: Vec::new(),
        }
    }

    fn absorb(&mut self, part: Partial) {
        self.instances += part.instances;
        self.inapplicable += part.inapplicable;
        self.checks += part.checks;
        self.min_slack = match (self.min_slack, part.min_slack) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.violations.extend(part.violations);
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slack = self.min_slack.map_or_else(|| "-".to_string(), |s| s.to_string());
        write!(
            f,
            "{:<4} {:<28} instances={:<8} inapplicable={:<8} checks={:<9} min_slack={:<4} violations={}",
            self.variant,
            self.label,
            self.instances,
            self.inapplicable,
            self.checks,
            slack,
            self.violations.len()
        )
    }
}

#[derive(Debug, Default)]
struct Partial {
    instances: u64,
    inapplicable: u64,
    checks: u64,
    min_slack: Option<usize>,
    violations: Vec<Violation>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.instances += other.instances;
        self.inapplicable += other.inapplicable;
        self.checks += other.checks;
        self.min_slack = match (self.min_slack, other.min_slack) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.violations.extend(other.violations);
        self
    }

    fn record(&mut self, sum: usize, bound: usize, violation: impl FnOnce() -> Violation) {
        self.checks += 1;
        if sum <= bound {
            let slack = bound - sum;
            self.min_slack = Some(self.min_slack.map_or(slack, |m| m.min(slack)));
        } else {
            self.violations.push(violation());
        }
    }
}

fn evaluate_family(fam: &GraphFamily, variant: LemmaVariant, probes: &[Vec<usize>]) -> Partial {
    let mut part = Partial { instances: 1, ..Default::default() };
    if !fam.hypothesis(variant) {
        part.inapplicable = 1;
        return part;
    }
    let bound = fam.bound(variant);
    for probe in probes {
        let sum = fam.degree_sum(probe);
        part.record(sum, bound, || Violation {
            instance: format!("{fam:?}"),
            probe: probe.clone(),
            sum,
            bound,
        });
    }
    part
}

fn evaluate_kpartite(g: &KPartiteKGraph, s: usize) -> Partial {
    let mut part = Partial { instances: 1, ..Default::default() };
    if g.has_disjoint(s) {
        part.inapplicable = 1;
        return part;
    }
    let sum = g.edge_count();
    part.record(sum, g.ah_bound(s), || Violation {
        instance: format!("k={} n={} s={s} F={:?}", g.k(), g.n(), g.tuples()),
        probe: Vec::new(),
        sum,
        bound: g.ah_bound(s),
    });
    part
}

fn all_tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Every edge set of the `n`-balanced `k`-partite `k`-graph (`n^k ≤ 20`).
pub fn exhaustive_ah(k: usize, n: usize, s: usize, exec: Execution) -> Result<LemmaReport> {
    let universe = all_tuples(k, n);
    if universe.len() > 20 {
        return Err(Error::Parameters(format!("2^{} edge sets is beyond the exhaustive cap", universe.len())));
    }
    let total = 1usize << universe.len();
    let chunk = 1024usize;
    let parts = exec.map_indexed(total.div_ceil(chunk), |c| {
        let mut acc = Partial::default();
        for mask in c * chunk..((c + 1) * chunk).min(total) {
            let tuples = universe.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| t.clone());
            let g = KPartiteKGraph::new(k, n, tuples).expect("tuples drawn from the universe");
            acc = acc.merge(evaluate_kpartite(&g, s));
        }
        acc
    });
    let mut report = LemmaReport::new(LemmaVariant::Ah, format!("exhaustive k={k} n={n} s={s}"));
    parts.into_iter().for_each(|p| report.absorb(p));
    Ok(report)
}

/// All graphs on `n` labelled vertices with at most `max_edges` edges.
pub fn small_graphs(n: usize, max_edges: usize) -> Vec<Graph2> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .filter(|m| m.count_ones() as usize <= max_edges)
        .map(|m| Graph2::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &p)| p)).unwrap())
        .collect()
}

/// Every family of `count` graphs on 4 vertices with at most 3 edges each,
/// embedded into `n` vertices (isolated extras) and checked on every probe.
pub fn exhaustive_graph_families(variant: LemmaVariant, count: usize, n: usize, exec: Execution) -> Result<LemmaReport> {
    if !matches!(variant, LemmaVariant::L2 | LemmaVariant::L3 | LemmaVariant::L4k) || n < 4 || count == 0 {
        return Err(Error::Parameters(format!("no exhaustive graph-family sweep for {variant} with n = {n}")));
    }
    let base: Vec<Graph2> = small_graphs(4, 3).iter().map(|g| g.embedded(n).unwrap()).collect();
    let m = base.len();
    let total = m.pow(count as u32);
    let probes = GraphFamily::new(n, vec![Graph2::new(n)?; count])?.all_probes(variant);
    let parts = exec.map_indexed(m, |first| {
        let mut acc = Partial::default();
        for rest in 0..total / m {
            let mut idx = vec![first];
            let mut r = rest;
            for _ in 1..count {
                idx.push(r % m);
                r /= m;
            }
            let fam = GraphFamily::new(n, idx.iter().map(|&i| base[i].clone()).collect()).unwrap();
            acc = acc.merge(evaluate_family(&fam, variant, &probes));
        }
        acc
    });
    let mut report = LemmaReport::new(variant, format!("exhaustive 4-vertex graphs, k={count} n={n}"));
    parts.into_iter().for_each(|p| report.absorb(p));
    Ok(report)
}

/// Every family on `A ∪ B` allowed by the structural part of the `L5`
/// hypothesis (`B` isolated in `G₁`, `G₂`/`G₃` edges meet `A`), when that
/// is at most `2^24` families.
pub fn exhaustive_l5(a: usize, b: usize, exec: Execution) -> Result<LemmaReport> {
    let n = a + b;
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    let g1_slots: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(_, v)| v <= a).collect();
    let meet_a: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(u, _)| u <= a).collect();
    let bits = g1_slots.len() + 2 * meet_a.len();
    if a < 3 || b < 1 || bits > 24 {
        return Err(Error::Parameters(format!("exhaustive L5 sweep at a={a}, b={b} is out of range")));
    }
    let build = |slots: &[(usize, usize)], mask: u64| {
        Graph2::from_edges(n, slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p)).unwrap()
    };
    let g1_count = 1u64 << g1_slots.len();
    let side = 1u64 << meet_a.len();
    let template = GraphFamily::with_split(a, b, vec![Graph2::new(n)?; 3])?;
    let probes = template.all_probes(LemmaVariant::L5);
    let parts = exec.map_indexed((g1_count * side) as usize, |outer| {
        let outer = outer as u64;
        let g1 = build(&g1_slots, outer / side);
        let g2 = build(&meet_a, outer % side);
        let mut acc = Partial::default();
        for m3 in 0..side {
            let fam = GraphFamily::with_split(a, b, vec![g1.clone(), g2.clone(), build(&meet_a, m3)]).unwrap();
            acc = acc.merge(evaluate_family(&fam, LemmaVariant::L5, &probes));
        }
        acc
    });
    let mut report = LemmaReport::new(LemmaVariant::L5, format!("exhaustive a={a} b={b}"));
    parts.into_iter().for_each(|p| report.absorb(p));
    Ok(report)
}

/// The fixed exhaustive suite: `AH` at `k=2, n≤3, s≤2` and `k=3, n=2, s=2`;
/// `L2`, `L3` (embedded into 5 vertices) and `L4k` (`k = 2, 3`) over all
/// 4-vertex graphs with at most 3 edges; `L5` over all families at `a=3, b=1`.
pub fn exhaustive_suite(variant: Option<LemmaVariant>, exec: Execution) -> Result<Vec<LemmaReport>> {
    let wanted = |v: LemmaVariant| variant.is_none_or(|w| w == v);
    let mut out = Vec::new();
    if wanted(LemmaVariant::Ah) {
        for n in 1..=3 {
            for s in 1..=2 {
                out.push(exhaustive_ah(2, n, s, exec)?);
            }
        }
        out.push(exhaustive_ah(3, 2, 2, exec)?);
    }
    if wanted(LemmaVariant::L2) {
        out.push(exhaustive_graph_families(LemmaVariant::L2, 3, 4, exec)?);
    }
    if wanted(LemmaVariant::L3) {
        out.push(exhaustive_graph_families(LemmaVariant::L3, 3, 5, exec)?);
    }
    if wanted(LemmaVariant::L4k) {
        out.push(exhaustive_graph_families(LemmaVariant::L4k, 2, 4, exec)?);
        out.push(exhaustive_graph_families(LemmaVariant::L4k, 3, 4, exec)?);
    }
    if wanted(LemmaVariant::L5) {
        out.push(exhaustive_l5(3, 1, exec)?);
    }
    Ok(out)
}

/// `(graph index, pair)`.
type Slot = (usize, (usize, usize));

/// Instance `index` of a sampled sweep: graphs grown edge by edge in random
/// slot order, each candidate kept with a per-instance probability unless it
/// would break the hypothesis.
pub fn sample_family(variant: LemmaVariant, params: &LemmaParams, rng: &mut ChaCha8Rng) -> Result<GraphFamily> {
    params.validate(variant)?;
    let (mut fam, slots): (GraphFamily, Vec<Slot>) = match variant {
        LemmaVariant::Ah => return Err(Error::Parameters("AH instances are k-partite graphs".into())),
        LemmaVariant::L2 | LemmaVariant::L3 | LemmaVariant::L4k => {
            let count = if variant == LemmaVariant::L4k { params.k } else { 3 };
            let n = params.n;
            let fam = GraphFamily::new(n, vec![Graph2::new(n)?; count])?;
            let slots = (0..count)
                .flat_map(|g| (1..=n).flat_map(move |u| (u + 1..=n).map(move |v| (g, (u, v)))))
                .collect();
            (fam, slots)
        }
        LemmaVariant::L5 => {
            let (a, b) = (params.a, params.b);
            let n = a + b;
            let fam = GraphFamily::with_split(a, b, vec![Graph2::new(n)?; 3])?;
            let slots = (0..3)
                .flat_map(|g| {
                    (1..=n).flat_map(move |u| {
                        (u + 1..=n)
                            .filter(move |&v| if g == 0 { v <= a } else { u <= a })
                            .map(move |v| (g, (u, v)))
                    })
                })
                .collect();
            (fam, slots)
        }
    };
    let mut slots = slots;
    slots.shuffle(rng);
    let keep = rng.random_range(0.05..0.95);
    for (g, (u, v)) in slots {
        if !rng.random_bool(keep) {
            continue;
        }
        fam.graphs[g].add_edge(u, v)?;
        if !fam.hypothesis(variant) {
            fam.graphs[g].remove_edge(u, v);
        }
    }
    Ok(fam)
}

/// A `k`-partite graph grown tuple by tuple, rejecting any tuple that would
/// create `s` disjoint edges.
pub fn sample_kpartite(params: &LemmaParams, rng: &mut ChaCha8Rng) -> Result<KPartiteKGraph> {
    params.validate(LemmaVariant::Ah)?;
    let (k, n, s) = (params.k, params.n, params.s);
    let mut universe = all_tuples(k, n);
    universe.shuffle(rng);
    let keep = rng.random_range(0.05..0.95);
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    for t in universe {
        if !rng.random_bool(keep) {
            continue;
        }
        chosen.push(t);
        if KPartiteKGraph::new(k, n, chosen.iter().cloned())?.has_disjoint(s) {
            chosen.pop();
        }
    }
    KPartiteKGraph::new(k, n, chosen)
}

/// Seeded random falsification: instance `i` draws from
/// `ChaCha8(seed)` on stream `i`, so results do not depend on sharding.
pub fn search_violations(
    variant: LemmaVariant,
    params: &LemmaParams,
    seed: u64,
    iterations: usize,
    exec: Execution,
) -> Result<LemmaReport> {
    params.validate(variant)?;
    let rng_for = |i: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        rng
    };
    let parts = exec.map_indexed(iterations, |i| -> Result<Partial> {
        let mut rng = rng_for(i);
        if variant == LemmaVariant::Ah {
            return Ok(evaluate_kpartite(&sample_kpartite(params, &mut rng)?, params.s));
        }
        let fam = sample_family(variant, params, &mut rng)?;
        let all = fam.all_probes(variant);
        let probes: Vec<Vec<usize>> = if all.len() <= SAMPLED_PROBES {
            all
        } else {
            (0..SAMPLED_PROBES).map(|_| all.choose(&mut rng).unwrap().clone()).collect()
        };
        Ok(evaluate_family(&fam, variant, &probes))
    });
    let label = match variant {
        LemmaVariant::Ah => format!("sampled k={} n={} s={} seed={seed}", params.k, params.n, params.s),
        LemmaVariant::L4k => format!("sampled k={} n={} seed={seed}", params.k, params.n),
        LemmaVariant::L5 => format!("sampled a={} b={} seed={seed}", params.a, params.b),
        _ => format!("sampled n={} seed={seed}", params.n),
    };
    let mut report = LemmaReport::new(variant, label);
    for p in parts {
        report.absorb(p?);
    }
    Ok(report)
}
