//! Constructive matching growth driven by a degree split.
//!
//! Vertices are split into high-degree `U` (degree above `s·n − (ε/2)·n²`)
//! and the rest `W`. The pipeline then
//!
//! 1. looks for `3s − |U|` disjoint edges each holding exactly one `W` vertex,
//! 2. computes an optimal matching: among matchings whose `W`-touching part
//!    `M₁` has at least `3s − |U|` edges (condition (i)), maximize `|M|`,
//!    then `|M₁|`,
//! 3. applies augmentation moves until none fires,
//! 4. reports `s` edges if it reached them, optionally falling back to the
//!    exact solver (hybrid mode).
//!
//! At desk scale `U` is frequently empty or everything; both are legal and
//! simply route the pipeline through plain augmentation.

use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph3, Triple};
use crate::matching::Matching;
use crate::solver::{has_matching_of_size, residual_bound, SolverConfig};
use crate::vertex_set::VertexSet;

pub const DEFAULT_EPSILON: f64 = 0.05;
pub const DEFAULT_MATCHER_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct DegreePartition {
    pub s: usize,
    pub epsilon: f64,
    pub threshold: f64,
    pub u: VertexSet,
    pub w: VertexSet,
}

impl DegreePartition {
    /// `max(0, 3s − |U|)`: how many `W`-touching edges condition (i) asks for.
    pub fn required_cover(&self) -> usize {
        (3 * self.s).saturating_sub(self.u.len())
    }

    /// Recomputes membership from degrees.
    pub fn check_invariants(&self, h: &Hypergraph3) -> bool {
        let all = h.vertices();
        self.u.is_disjoint(&self.w)
            && self.u.union(&self.w) == all
            && all.iter().all(|v| {
                let above = h.degree(v).unwrap() as f64 > self.threshold;
                above == self.u.contains(v)
            })
    }
}

pub fn classify_uw(h: &Hypergraph3, s: usize, epsilon: f64) -> Result<DegreePartition> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Parameters(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let n = h.n();
    if s == 0 || 3 * s > n {
        return Err(Error::Parameters(format!("need 1 ≤ s ≤ n/3, got s = {s}, n = {n}")));
    }
    let nf = n as f64;
    let threshold = (s * n) as f64 - epsilon / 2.0 * nf * nf;
    let degrees = h.degrees();
    let u: VertexSet = (1..=n).filter(|&v| degrees[v] as f64 > threshold).collect();
    let w = h.vertices().difference(&u);
    Ok(DegreePartition {
        s,
        epsilon,
        threshold,
        u,
        w,
    })
}

/// `W' = {v ∈ W : deg(v) ≤ s·n − s²/2 + γ'·n²}`, reported as a diagnostic only.
pub fn low_degree_w(h: &Hypergraph3, part: &DegreePartition, gamma_prime: f64) -> VertexSet {
    let (n, s) = (h.n() as f64, part.s as f64);
    let cut = s * n - s * s / 2.0 + gamma_prime * n * n;
    part.w
        .iter()
        .filter(|&v| h.degree(v).unwrap() as f64 <= cut)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoverOutcome {
    /// A matching of the required size (empty when `|U|` is outside `[2s, 3s]`
    /// or nothing is required).
    Found(Matching),
    /// Exhaustive search proved no such matching exists.
    Infeasible,
    /// Budget ran out; the largest partial cover seen.
    Exhausted(Matching),
}

impl CoverOutcome {
    pub fn matching(&self) -> Option<&Matching> {
        match self {
            CoverOutcome::Found(m) | CoverOutcome::Exhausted(m) => Some(m),
            CoverOutcome::Infeasible => None,
        }
    }
}

/// `3s − |U|` disjoint edges, each with exactly one `W` vertex.
pub fn find_covering_matching(h: &Hypergraph3, part: &DegreePartition, budget: Option<u64>) -> CoverOutcome {
    let s = part.s;
    let ulen = part.u.len();
    if ulen < 2 * s || ulen > 3 * s {
        return CoverOutcome::Found(Matching::empty());
    }
    let need = 3 * s - ulen;
    if need == 0 {
        return CoverOutcome::Found(Matching::empty());
    }
    let ws = part.w.to_vec();
    let options: Vec<Vec<usize>> = ws
        .iter()
        .map(|&w| {
            h.incident(w)
                .iter()
                .copied()
                .filter(|&e| h.edges()[e].iter().filter(|&&x| part.w.contains(x)).count() == 1)
                .collect()
        })
        .collect();

    struct Ctx<'a> {
        h: &'a Hypergraph3,
        options: &'a [Vec<usize>],
        need: usize,
        budget: Option<u64>,
        nodes: u64,
        chosen: Vec<usize>,
        best: Vec<usize>,
    }

    fn dfs(ctx: &mut Ctx, i: usize, used: &VertexSet) -> Option<bool> {
        ctx.nodes += 1;
        if ctx.budget.is_some_and(|b| ctx.nodes > b) {
            return None;
        }
        if ctx.chosen.len() == ctx.need {
            return Some(true);
        }
        if ctx.chosen.len() + (ctx.options.len() - i) < ctx.need {
            return Some(false);
        }
        for k in 0..ctx.options[i].len() {
            let e = ctx.options[i][k];
            let eset = ctx.h.edge_set(e);
            if !eset.is_disjoint(used) {
                continue;
            }
            ctx.chosen.push(e);
            if ctx.chosen.len() > ctx.best.len() {
                ctx.best = ctx.chosen.clone();
            }
            if dfs(ctx, i + 1, &used.union(eset))? {
                return Some(true);
            }
            ctx.chosen.pop();
        }
        dfs(ctx, i + 1, used)
    }

    let mut ctx = Ctx {
        h,
        options: &options,
        need,
        budget,
        nodes: 0,
        chosen: Vec::new(),
        best: Vec::new(),
    };
    let to_matching = |edges: &[usize]| {
        Matching::new(edges.iter().map(|&e| h.edges()[e])).expect("disjoint by construction")
    };
    match dfs(&mut ctx, 0, &VertexSet::new()) {
        Some(true) => CoverOutcome::Found(to_matching(&ctx.chosen)),
        Some(false) => CoverOutcome::Infeasible,
        None => CoverOutcome::Exhausted(to_matching(&ctx.best)),
    }
}

/// A matching together with its regions relative to a degree split.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalMatchingState {
    pub matching: Matching,
    /// Edges meeting `W`.
    pub m1: Vec<Triple>,
    pub m2: Vec<Triple>,
    pub u1: VertexSet,
    pub u2: VertexSet,
    pub u3: VertexSet,
    pub w1: VertexSet,
    pub w2: VertexSet,
    /// `max(0, 3s − |U|)`.
    pub required: usize,
    /// Whether `|M₁| ≥ required`.
    pub condition_met: bool,
    /// True when an exhaustive search certified this state as optimal.
    pub proved: bool,
}

impl OptimalMatchingState {
    /// Derives the region sets; edges are stored in lexicographic order.
    pub fn from_matching(part: &DegreePartition, matching: &Matching) -> Self {
        let mut edges = matching.edges().to_vec();
        edges.sort_unstable();
        let matching = Matching::new(edges.iter().copied()).expect("reordering keeps disjointness");
        let (m1, m2): (Vec<Triple>, Vec<Triple>) = edges
            .iter()
            .partition(|t| t.iter().any(|v| part.w.contains(*v)));
        let v_m1: VertexSet = m1.iter().flatten().copied().collect();
        let v_m2: VertexSet = m2.iter().flatten().copied().collect();
        let u1 = v_m1.intersection(&part.u);
        let w1 = v_m1.intersection(&part.w);
        let u3 = part.u.difference(matching.covered());
        let w2 = part.w.difference(&w1);
        let required = part.required_cover();
        let condition_met = m1.len() >= required;
        Self {
            matching,
            m1,
            m2,
            u1,
            u2: v_m2,
            u3,
            w1,
            w2,
            required,
            condition_met,
            proved: false,
        }
    }

    pub fn size(&self) -> usize {
        self.matching.len()
    }

    /// `(|M|, |M₁|)`, the order augmentation climbs.
    pub fn key(&self) -> (usize, usize) {
        (self.matching.len(), self.m1.len())
    }

    pub fn check_invariants(&self, part: &DegreePartition) -> bool {
        let recomputed = Self::from_matching(part, &self.matching);
        let regions = [&self.u1, &self.u2, &self.u3, &self.w1, &self.w2];
        let pairwise_disjoint = regions
            .iter()
            .enumerate()
            .all(|(i, a)| regions[i + 1..].iter().all(|b| a.is_disjoint(b)));
        let union = regions.iter().fold(VertexSet::new(), |acc, r| acc.union(r));
        self.matching.check_invariants()
            && recomputed.m1 == self.m1
            && recomputed.m2 == self.m2
            && recomputed.u1 == self.u1
            && recomputed.u2 == self.u2
            && recomputed.u3 == self.u3
            && recomputed.w1 == self.w1
            && recomputed.w2 == self.w2
            && pairwise_disjoint
            && union == part.u.union(&part.w)
            && self.u1.len() + self.w1.len() == 3 * self.m1.len()
            && self.u2.is_subset(&part.u)
    }

    /// Edges of type `W₂U₃U₃` and `W₂U₂U₃`; an optimal state has none of either.
    pub fn forbidden_edge_counts(&self, h: &Hypergraph3) -> (usize, usize) {
        (
            h.count_edges_of_type(&self.w2, &self.u3, &self.u3),
            h.count_edges_of_type(&self.w2, &self.u2, &self.u3),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatcherConfig {
    pub epsilon: f64,
    /// Fall back to the exact solver when the pipeline stops short of `s`.
    pub hybrid: bool,
    /// Node budget for each exhaustive stage.
    pub node_budget: Option<u64>,
}

impl Default for MatcherConfig {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_EPSILON,
            hybrid: false,
            node_budget: Some(DEFAULT_MATCHER_BUDGET),
        }
    }
}

struct LexSearch<'a> {
    h: &'a Hypergraph3,
    w: &'a VertexSet,
    require: usize,
    budget: Option<u64>,
    nodes: u64,
    path: Vec<usize>,
    path_m1: usize,
    best: Option<(usize, usize, Vec<usize>)>,
}

impl LexSearch<'_> {
    fn better(&self, size: usize, m1: usize) -> bool {
        match &self.best {
            None => true,
            Some((bs, bm, _)) => (size, m1) > (*bs, *bm),
        }
    }

    /// Returns false when the budget ran out.
    fn run(&mut self, remaining: &[usize]) -> bool {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return false;
        }
        let size = self.path.len();
        if self.path_m1 >= self.require && self.better(size, self.path_m1) {
            self.best = Some((size, self.path_m1, self.path.clone()));
        }
        if remaining.is_empty() {
            return true;
        }
        let ub = residual_bound(self.h, remaining);
        let mut active = VertexSet::new();
        for &e in remaining {
            active.union_with(self.h.edge_set(e));
        }
        let ub_m1 = ub.min(active.intersection_len(self.w));
        if self.path_m1 + ub_m1 < self.require {
            return true;
        }
        if let Some((bs, bm, _)) = &self.best {
            if size + ub < *bs || (size + ub == *bs && self.path_m1 + ub_m1 <= *bm) {
                return true;
            }
        }
        // branch on the residual vertex of largest residual degree
        let mut count = vec![0usize; self.h.n() + 1];
        for &e in remaining {
            for &v in &self.h.edges()[e] {
                count[v] += 1;
            }
        }
        let v = active.iter().max_by_key(|&v| (count[v], std::cmp::Reverse(v))).unwrap();
        for &e in remaining.iter().filter(|&&e| self.h.edges()[e].contains(&v)) {
            let eset = self.h.edge_set(e);
            let child: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&f| self.h.edge_set(f).is_disjoint(eset))
                .collect();
            let touches_w = !eset.is_disjoint(self.w);
            self.path.push(e);
            self.path_m1 += touches_w as usize;
            let ok = self.run(&child);
            self.path.pop();
            self.path_m1 -= touches_w as usize;
            if !ok {
                return false;
            }
        }
        let child: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&f| !self.h.edges()[f].contains(&v))
            .collect();
        self.run(&child)
    }
}

fn lex_optimum(
    h: &Hypergraph3,
    part: &DegreePartition,
    require: usize,
    budget: Option<u64>,
) -> (Option<Matching>, bool) {
    let mut search = LexSearch {
        h,
        w: &part.w,
        require,
        budget,
        nodes: 0,
        path: Vec::new(),
        path_m1: 0,
        best: None,
    };
    let all: Vec<usize> = (0..h.edge_count()).collect();
    let complete = search.run(&all);
    let best = search.best.map(|(_, _, edges)| {
        Matching::new(edges.iter().map(|&e| h.edges()[e])).expect("search keeps edges disjoint")
    });
    (best, complete)
}

/// The lexicographic optimum: condition (i) first, then `|M|`, then `|M₁|`.
///
/// Returns [`Error::CoverInfeasible`] when no matching satisfies (i). When
/// the budget runs out the best state found is returned with `proved = false`.
pub fn optimal_matching(h: &Hypergraph3, part: &DegreePartition, budget: Option<u64>) -> Result<OptimalMatchingState> {
    let require = part.required_cover();
    let (best, complete) = lex_optimum(h, part, require, budget);
    match best {
        Some(m) => {
            let mut state = OptimalMatchingState::from_matching(part, &m);
            state.proved = complete;
            Ok(state)
        }
        None if complete => {
            let achievable = lex_optimum(h, part, 0, budget)
                .0
                .map_or(0, |m| OptimalMatchingState::from_matching(part, &m).m1.len());
            Err(Error::CoverInfeasible { required: require, achievable })
        }
        None => Err(Error::Parameters("budget exhausted before any matching satisfied condition (i)".into())),
    }
}

/// Ignores condition (i): maximizes `|M|`, then `|M₁|`.
pub fn optimal_matching_relaxed(h: &Hypergraph3, part: &DegreePartition, budget: Option<u64>) -> OptimalMatchingState {
    let (best, complete) = lex_optimum(h, part, 0, budget);
    let mut state = OptimalMatchingState::from_matching(part, &best.unwrap_or_default());
    state.proved = complete;
    state
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveKind {
    /// A free edge inside `U₃ ∪ W₂` joins the matching.
    AddFree,
    /// One matched edge becomes two, and the new pair uses a `W₂` vertex.
    Exchange,
    /// One matched edge becomes two disjoint edges inside it plus free vertices.
    Replace,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::AddFree => "add",
            MoveKind::Exchange => "exchange",
            MoveKind::Replace => "replace",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub removed: Option<Triple>,
    pub added: Vec<Triple>,
    pub size_after: usize,
    pub m1_after: usize,
}

impl fmt::Display for MoveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(r) = self.removed {
            write!(f, " -{r:?}")?;
        }
        for a in &self.added {
            write!(f, " +{a:?}")?;
        }
        write!(f, " => |M|={} |M1|={}", self.size_after, self.m1_after)
    }
}

fn first_disjoint_pair(h: &Hypergraph3, inside: &[usize], accept: impl Fn(&Triple, &Triple) -> bool) -> Option<(Triple, Triple)> {
    for (i, &a) in inside.iter().enumerate() {
        for &b in &inside[i + 1..] {
            if h.edge_set(a).is_disjoint(h.edge_set(b)) && accept(&h.edges()[a], &h.edges()[b]) {
                return Some((h.edges()[a], h.edges()[b]));
            }
        }
    }
    None
}

/// One strictly improving move, tried in the order add, exchange, replace.
pub fn augment_once(
    h: &Hypergraph3,
    part: &DegreePartition,
    state: &OptimalMatchingState,
) -> Option<(OptimalMatchingState, MoveRecord)> {
    let free = h.vertices().difference(state.matching.covered());
    let finish = |matching: Matching, kind, removed, added: Vec<Triple>| {
        let next = OptimalMatchingState::from_matching(part, &matching);
        let record = MoveRecord {
            kind,
            removed,
            added,
            size_after: next.size(),
            m1_after: next.m1.len(),
        };
        (next, record)
    };

    // (a) a free edge
    if let Some(i) = (0..h.edge_count()).find(|&i| h.edge_set(i).is_subset(&free)) {
        let t = h.edges()[i];
        let mut m = state.matching.clone();
        m.push(t).expect("free edge is disjoint");
        return Some(finish(m, MoveKind::AddFree, None, vec![t]));
    }

    let touches_w = |t: &Triple| t.iter().any(|v| part.w.contains(*v));
    let keeps_condition = |removed: &Triple, a: &Triple, b: &Triple| {
        if !state.condition_met {
            return true;
        }
        let m1 = state.m1.len() - touches_w(removed) as usize + touches_w(a) as usize + touches_w(b) as usize;
        m1 >= state.required
    };
    let candidates: Vec<(usize, Vec<usize>)> = state
        .matching
        .edges()
        .iter()
        .enumerate()
        .map(|(idx, e)| {
            let pool = free.union(&e.iter().copied().collect());
            let inside = (0..h.edge_count())
                .filter(|&i| h.edge_set(i).is_subset(&pool))
                .collect();
            (idx, inside)
        })
        .collect();

    // (c) then (b)
    for kind in [MoveKind::Exchange, MoveKind::Replace] {
        for (idx, inside) in &candidates {
            let removed = state.matching.edges()[*idx];
            let pair = first_disjoint_pair(h, inside, |a, b| {
                let uses_w2 = a.iter().chain(b.iter()).any(|v| state.w2.contains(*v));
                (kind == MoveKind::Replace || uses_w2) && keeps_condition(&removed, a, b)
            });
            if let Some((a, b)) = pair {
                let mut m = state.matching.without(*idx);
                m.push(a).expect("inside removed edge plus free vertices");
                m.push(b).expect("pair is disjoint");
                return Some(finish(m, kind, Some(removed), vec![a, b]));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingSource {
    Pipeline,
    ExactFallback,
}

#[derive(Debug, Clone)]
pub struct GrowReport {
    pub partition: DegreePartition,
    pub cover: CoverOutcome,
    /// The state produced by the optimal-matching stage.
    pub initial: OptimalMatchingState,
    /// Whether the optimal stage had to drop condition (i).
    pub relaxed: bool,
    pub moves: Vec<MoveRecord>,
    pub fixpoint: OptimalMatchingState,
    /// `s` disjoint edges of the input, when found.
    pub matching: Option<Matching>,
    pub source: Option<MatchingSource>,
}

pub fn grow_matching(h: &Hypergraph3, s: usize, cfg: &MatcherConfig) -> Result<GrowReport> {
    let part = classify_uw(h, s, cfg.epsilon)?;
    let cover = find_covering_matching(h, &part, cfg.node_budget);

    let (initial, relaxed) = match optimal_matching(h, &part, cfg.node_budget) {
        Ok(state) => (state, false),
        Err(Error::CoverInfeasible { .. }) => (optimal_matching_relaxed(h, &part, cfg.node_budget), true),
        Err(_) => {
            // nothing satisfying (i) was reached inside the budget: start from the cover
            let seed = cover.matching().cloned().unwrap_or_default();
            (OptimalMatchingState::from_matching(&part, &seed), false)
        }
    };

    let mut state = initial.clone();
    let mut moves = Vec::new();
    let max_iterations = h.n() / 3 + h.n();
    while moves.len() < max_iterations {
        match augment_once(h, &part, &state) {
            Some((next, record)) => {
                debug_assert!(next.key() > state.key());
                moves.push(record);
                state = next;
            }
            None => break,
        }
    }

    let mut matching = None;
    let mut source = None;
    if state.size() >= s {
        let m = state.matching.truncated(s);
        m.validate_in(h)?;
        matching = Some(m);
        source = Some(MatchingSource::Pipeline);
    } else if cfg.hybrid {
        let solver_cfg = SolverConfig {
            node_budget: cfg.node_budget,
            ..SolverConfig::default()
        };
        if let Some(m) = has_matching_of_size(h, s, &solver_cfg).witness {
            m.validate_in(h)?;
            matching = Some(m);
            source = Some(MatchingSource::ExactFallback);
        }
    }

    Ok(GrowReport {
        partition: part,
        cover,
        initial,
        relaxed,
        moves,
        fixpoint: state,
        matching,
        source,
    })
}
