use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::format::{parse_h3, write_h3};
use crate::hypergraph::{all_triples, binomial, Hypergraph3, Sigma2};
use crate::recognize::is_subgraph_of_h2;
use crate::solver::{has_matching_of_size, max_matching_bruteforce_uncapped, SolverConfig};

pub const REPORT_HEADER: &str = "hm-campaign-report v1";
const EXHAUSTIVE_MAX_TRIPLES: usize = 20;
const CHUNK: usize = 128;

/// Which degree-sum statement an instance is checked against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TheoremKind {
    /// No isolated vertex and `σ₂ > 2(s−1)(n−1)` should force `s` disjoint edges.
    DegreeSum,
    /// No isolated vertex and `σ₂ > 2sn − εn²` should force `s` disjoint
    /// edges or containment in `H²_{n,s}`.
    Stability { epsilon: f64 },
}

impl TheoremKind {
    /// The strict lower bound `σ₂` must exceed.
    pub fn threshold(&self, n: usize, s: usize) -> f64 {
        match *self {
            TheoremKind::DegreeSum => (2 * (s - 1) * (n - 1)) as f64,
            TheoremKind::Stability { epsilon } => (2 * s * n) as f64 - epsilon * (n * n) as f64,
        }
    }
}

impl fmt::Display for TheoremKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremKind::DegreeSum => f.write_str("degree-sum"),
            TheoremKind::Stability { epsilon } => write!(f, "stability epsilon={epsilon}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Classification {
    /// Fails the degree hypothesis and is not a stability instance.
    Vacuous,
    MatchingFound,
    /// No isolated vertex and contained in `H²_{n,s}`.
    Stability,
    /// The solver gave up before deciding; never counted as a counterexample.
    Unresolved,
    Counterexample,
}

impl Classification {
    pub const ALL: [Classification; 5] = [
        Self::Vacuous,
        Self::MatchingFound,
        Self::Stability,
        Self::Unresolved,
        Self::Counterexample,
    ];

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Vacuous => "vacuous",
            Self::MatchingFound => "matching-found",
            Self::Stability => "stability",
            Self::Unresolved => "unresolved",
            Self::Counterexample => "COUNTEREXAMPLE",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremOutcome {
    pub sigma2: Sigma2,
    pub isolated: usize,
    /// No isolated vertex and `σ₂` above the threshold.
    pub condition_met: bool,
    pub has_matching: bool,
    /// Whether the matching decision is proved (always, unless a budget ran out).
    pub decided: bool,
    /// `H ⊆ H²_{n,s}`. An `s`-matching rules this out, so it is only searched
    /// for when none was found.
    pub is_h2_subgraph: bool,
    pub classification: Classification,
}

fn check_range(n: usize, s: usize) -> Result<()> {
    if s == 0 || 3 * s > n {
        return Err(Error::Parameters(format!("need 1 ≤ s ≤ n/3, got s = {s}, n = {n}")));
    }
    Ok(())
}

/// Classifies `h`. A would-be counterexample is re-checked with the
/// brute-force matching oracle and downgraded to `Unresolved` on disagreement.
pub fn theorem_check(h: &Hypergraph3, s: usize, kind: TheoremKind, cfg: &SolverConfig) -> Result<TheoremOutcome> {
    let n = h.n();
    check_range(n, s)?;
    let sigma2 = h.sigma2();
    let isolated = h.isolated_vertices().len();
    let threshold = kind.threshold(n, s);
    let condition_met = isolated == 0 && sigma2.value().is_some_and(|v| v as f64 > threshold);
    let decision = has_matching_of_size(h, s, cfg);
    let has_matching = decision.found;
    let decided = decision.found || decision.proved;
    let is_h2_subgraph = !has_matching && is_subgraph_of_h2(h, s)?.is_some();

    let classification = if has_matching {
        Classification::MatchingFound
    } else if !decided {
        Classification::Unresolved
    } else if condition_met && !(matches!(kind, TheoremKind::Stability { .. }) && is_h2_subgraph) {
        if max_matching_bruteforce_uncapped(h) < s {
            Classification::Counterexample
        } else {
            Classification::Unresolved
        }
    } else if isolated == 0 && is_h2_subgraph {
        Classification::Stability
    } else {
        Classification::Vacuous
    };
    Ok(TheoremOutcome {
        sigma2,
        isolated,
        condition_met,
        has_matching,
        decided,
        is_h2_subgraph,
        classification,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CampaignMode {
    /// Every labelled edge set on `n` vertices.
    Exhaustive,
    /// Each triple kept independently with probability `p`; instance `i`
    /// draws from `ChaCha8(seed)` on stream `i`.
    Sampled { seed: u64, iterations: u64, p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CampaignSpec {
    pub mode: CampaignMode,
    pub n: usize,
    pub s: usize,
    pub kind: TheoremKind,
    pub node_budget: Option<u64>,
}

impl CampaignSpec {
    pub fn exhaustive(n: usize, s: usize) -> Self {
        Self {
            mode: CampaignMode::Exhaustive,
            n,
            s,
            kind: TheoremKind::DegreeSum,
            node_budget: SolverConfig::default().node_budget,
        }
    }

    /// `p` defaults to `2(s−1)/(n−2)`, where the expected `σ₂` sits on the
    /// degree-sum threshold.
    pub fn sampled(n: usize, s: usize, seed: Option<u64>, iterations: u64, p: Option<f64>) -> Result<Self> {
        let seed = seed.ok_or_else(|| Error::Parameters("sampled campaigns need a seed".into()))?;
        let p = p.unwrap_or_else(|| Self::default_p(n, s));
        let spec = Self {
            mode: CampaignMode::Sampled { seed, iterations, p },
            n,
            s,
            kind: TheoremKind::DegreeSum,
            node_budget: SolverConfig::default().node_budget,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn default_p(n: usize, s: usize) -> f64 {
        if n <= 2 {
            return 1.0;
        }
        (2.0 * s.saturating_sub(1) as f64 / (n - 2) as f64).clamp(0.05, 1.0)
    }

    pub fn with_kind(mut self, kind: TheoremKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_range(self.n, self.s)?;
        if let TheoremKind::Stability { epsilon } = self.kind {
            if !(epsilon > 0.0 && epsilon < 1.0) {
                return Err(Error::Parameters(format!("epsilon must lie in (0, 1), got {epsilon}")));
            }
        }
        match self.mode {
            CampaignMode::Exhaustive if binomial(self.n, 3) > EXHAUSTIVE_MAX_TRIPLES => Err(Error::Parameters(format!(
                "exhaustive campaigns need C(n,3) ≤ {EXHAUSTIVE_MAX_TRIPLES}, i.e. n ≤ 6; got n = {}",
                self.n
            ))),
            CampaignMode::Sampled { p, .. } if !(p > 0.0 && p <= 1.0) => {
                Err(Error::Parameters(format!("edge probability must lie in (0, 1], got {p}")))
            }
            _ => Ok(()),
        }
    }

    pub fn instance_count(&self) -> u64 {
        match self.mode {
            CampaignMode::Exhaustive => 1u64 << binomial(self.n, 3),
            CampaignMode::Sampled { iterations, .. } => iterations,
        }
    }

    fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            node_budget: self.node_budget,
            ..SolverConfig::default()
        }
    }

    fn instance(&self, index: u64, triples: &[[usize; 3]]) -> Hypergraph3 {
        let edges: Vec<[usize; 3]> = match self.mode {
            CampaignMode::Exhaustive => triples.iter().enumerate().filter(|(i, _)| index >> i & 1 == 1).map(|(_, t)| *t).collect(),
            CampaignMode::Sampled { seed, p, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(index);
                triples.iter().copied().filter(|_| rng.random_bool(p)).collect()
            }
        };
        Hypergraph3::new(self.n, edges).expect("triples are canonical")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleRecord {
    pub index: u64,
    pub hypergraph: Hypergraph3,
    pub outcome: TheoremOutcome,
}

#[derive(Debug, Clone)]
pub struct CampaignReport {
    pub spec: CampaignSpec,
    pub instances: u64,
    /// Indexed by `Classification as usize`.
    pub totals: [u64; 5],
    pub condition_met: u64,
    /// Instances with `σ₂ = 2(s−1)(n−1)`, no isolated vertex and `ν = s − 1`.
    pub tightness_witnesses: u64,
    pub first_tightness: Option<(u64, Hypergraph3)>,
    pub counterexamples: Vec<CounterexampleRecord>,
    /// Not serialized, so reruns stay byte-identical.
    pub elapsed: Duration,
}

impl CampaignReport {
    pub fn total(&self, c: Classification) -> u64 {
        self.totals[c.slot()]
    }

    pub fn has_counterexample(&self) -> bool {
        self.total(Classification::Counterexample) > 0
    }

    /// Line-oriented text with a fixed field order.
    pub fn to_text(&self) -> String {
        let spec = &self.spec;
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "{REPORT_HEADER}").unwrap();
        writeln!(w, "version {}", env!("CARGO_PKG_VERSION")).unwrap();
        writeln!(w, "check {}", spec.kind).unwrap();
        match spec.mode {
            CampaignMode::Exhaustive => writeln!(w, "mode exhaustive").unwrap(),
            CampaignMode::Sampled { seed, iterations, p } => {
                writeln!(w, "mode sampled seed={seed} iterations={iterations} p={p}").unwrap()
            }
        }
        writeln!(w, "n {}", spec.n).unwrap();
        writeln!(w, "s {}", spec.s).unwrap();
        writeln!(w, "threshold {}", spec.kind.threshold(spec.n, spec.s)).unwrap();
        match spec.node_budget {
            Some(b) => writeln!(w, "node-budget {b}").unwrap(),
            None => writeln!(w, "node-budget none").unwrap(),
        }
        writeln!(w, "instances {}", self.instances).unwrap();
        for c in Classification::ALL {
            writeln!(w, "total {c} {}", self.total(c)).unwrap();
        }
        writeln!(w, "condition-met {}", self.condition_met).unwrap();
        writeln!(w, "tightness-witnesses {}", self.tightness_witnesses).unwrap();
        if let Some((index, h)) = &self.first_tightness {
            writeln!(w, "tightness-example index={index} edges={}", h.edge_count()).unwrap();
            w.push_str(&write_h3(h));
            writeln!(w, "end-h3").unwrap();
        }
        writeln!(w, "counterexamples {}", self.counterexamples.len()).unwrap();
        for rec in &self.counterexamples {
            writeln!(
                w,
                "counterexample index={} sigma2={} isolated={} h2-subgraph={}",
                rec.index, rec.outcome.sigma2, rec.outcome.isolated, rec.outcome.is_h2_subgraph
            )
            .unwrap();
            w.push_str(&write_h3(&rec.hypergraph));
            writeln!(w, "end-h3").unwrap();
        }
        writeln!(w, "end").unwrap();
        out
    }
}

/// `(index, hypergraph)` for every counterexample block of a serialized report.
pub fn parse_counterexamples(text: &str) -> Result<Vec<(u64, Hypergraph3)>> {
    let mut out = Vec::new();
    let mut lines = text.lines().enumerate();
    while let Some((lineno, line)) = lines.next() {
        let Some(rest) = line.strip_prefix("counterexample index=") else { continue };
        let index = rest
            .split_whitespace()
            .next()
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| Error::Parse { line: lineno + 1, message: "bad counterexample index".into() })?;
        let mut body = String::new();
        loop {
            match lines.next() {
                Some((_, "end-h3")) => break,
                Some((_, l)) => {
                    body.push_str(l);
                    body.push('\n');
                }
                None => return Err(Error::Parse { line: lineno + 1, message: "unterminated counterexample block".into() }),
            }
        }
        out.push((index, parse_h3(&body)?));
    }
    Ok(out)
}

/// Recomputes an outcome independently: matching number by brute force,
/// then the same classification rules.
pub fn reverify(h: &Hypergraph3, s: usize, kind: TheoremKind) -> Result<Classification> {
    check_range(h.n(), s)?;
    let nu = max_matching_bruteforce_uncapped(h);
    let isolated = h.has_isolated_vertex();
    let condition = !isolated && h.sigma2().value().is_some_and(|v| v as f64 > kind.threshold(h.n(), s));
    let in_h2 = nu < s && is_subgraph_of_h2(h, s)?.is_some();
    Ok(if nu >= s {
        Classification::MatchingFound
    } else if condition && !(matches!(kind, TheoremKind::Stability { .. }) && in_h2) {
        Classification::Counterexample
    } else if !isolated && in_h2 {
        Classification::Stability
    } else {
        Classification::Vacuous
    })
}

#[derive(Debug, Default)]
struct Tally {
    instances: u64,
    totals: [u64; 5],
    condition_met: u64,
    tightness: u64,
    first_tightness: Option<(u64, Hypergraph3)>,
    counterexamples: Vec<CounterexampleRecord>,
}

fn run_chunk(spec: &CampaignSpec, triples: &[[usize; 3]], range: std::ops::Range<u64>) -> Result<Tally> {
    let cfg = spec.solver_config();
    let bound = 2 * (spec.s - 1) * (spec.n - 1);
    let mut t = Tally::default();
    for index in range {
        let h = spec.instance(index, triples);
        let outcome = theorem_check(&h, spec.s, spec.kind, &cfg)?;
        t.instances += 1;
        t.totals[outcome.classification.slot()] += 1;
        t.condition_met += outcome.condition_met as u64;
        let tight = outcome.isolated == 0
            && outcome.sigma2 == Sigma2::Value(bound)
            && outcome.decided
            && !outcome.has_matching
            && has_matching_of_size(&h, spec.s - 1, &cfg).found;
        if tight {
            t.tightness += 1;
            if t.first_tightness.is_none() {
                t.first_tightness = Some((index, h.clone()));
            }
        }
        if outcome.classification == Classification::Counterexample {
            t.counterexamples.push(CounterexampleRecord { index, hypergraph: h, outcome });
        }
    }
    Ok(t)
}

pub fn run_campaign(spec: &CampaignSpec, exec: Execution) -> Result<CampaignReport> {
    spec.validate()?;
    let start = Instant::now();
    let triples = all_triples(spec.n);
    let total = spec.instance_count();
    let chunks = total.div_ceil(CHUNK as u64) as usize;
    let parts = exec.map_indexed(chunks, |c| {
        let lo = c as u64 * CHUNK as u64;
        run_chunk(spec, &triples, lo..(lo + CHUNK as u64).min(total))
    });
    let mut report = CampaignReport {
        spec: *spec,
        instances: 0,
        totals: [0; 5],
        condition_met: 0,
        tightness_witnesses: 0,
        first_tightness: None,
        counterexamples: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for part in parts {
        let part = part?;
        report.instances += part.instances;
        for (acc, x) in report.totals.iter_mut().zip(part.totals) {
            *acc += x;
        }
        report.condition_met += part.condition_met;
        report.tightness_witnesses += part.tightness;
        if report.first_tightness.is_none() {
            report.first_tightness = part.first_tightness;
        }
        report.counterexamples.extend(part.counterexamples);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}
