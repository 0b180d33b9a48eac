//! `hm`: generate, inspect, solve and audit 3-uniform hypergraphs.
//!
//! Exit status is 0 on a clean run, 1 on errors and 2 when a campaign
//! records a counterexample, a lemma sweep records a violation or an audit
//! fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hypermatch::constructions::{build_extremal, ExtremalSpec};
use hypermatch::exec::with_thread_cap;
use hypermatch::format::{parse_h3, write_h3};
use hypermatch::harness::{
    crossover_audit, edge_addition_sigma2_audit, run_campaign, CampaignMode, CampaignSpec, Classification, TheoremKind,
};
use hypermatch::lemmas::{exhaustive_suite, search_violations, LemmaParams, LemmaVariant};
use hypermatch::matcher::{grow_matching, MatcherConfig, DEFAULT_EPSILON, DEFAULT_MATCHER_BUDGET};
use hypermatch::recognize::is_subgraph_of_family;
use hypermatch::solver::{max_matching_exact, SolverConfig, DEFAULT_NODE_BUDGET};
use hypermatch::{Execution, Hypergraph3, Matching};

#[derive(Parser)]
#[command(name = "hm", version, about = "Matchings in 3-uniform hypergraphs under degree-sum conditions")]
struct Cli {
    /// Run sweeps on one thread instead of the rayon pool.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    H1,
    H2,
    H3,
}

impl Family {
    fn ell(self) -> usize {
        match self {
            Family::H1 => 1,
            Family::H2 => 2,
            Family::H3 => 3,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    /// σ₂ > 2(s−1)(n−1) should force an s-matching.
    DegreeSum,
    /// σ₂ > 2sn − εn² should force an s-matching or containment in H².
    Stability,
}

#[derive(Subcommand)]
enum Command {
    /// Write an extremal hypergraph; its small side goes to FILE.cert.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Degrees, σ₂, δ₁, δ₂ and isolated vertices.
    Stats { file: PathBuf },
    /// Exact maximum matching.
    Solve {
        file: PathBuf,
        /// Stop as soon as a matching of this size is found.
        #[arg(long)]
        target: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Decide containment in an extremal family and print the certificate.
    Recognize {
        file: PathBuf,
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        s: usize,
    },
    /// Grow a matching of size s through the degree-split pipeline.
    Match {
        file: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Fall back to the exact solver if the pipeline stops short.
        #[arg(long)]
        hybrid: bool,
    },
    /// Exhaustive or seeded random checks of the auxiliary extremal bounds.
    VerifyLemmas {
        /// AH, L2, L3, L4k or L5; all when omitted.
        #[arg(long)]
        variant: Option<String>,
        #[arg(long, conflicts_with = "seed")]
        exhaustive: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        iters: usize,
    },
    /// Classify every instance of an enumeration or sample and write a report.
    Campaign {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        iters: u64,
        /// Edge probability for sampled mode.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum, default_value = "degree-sum")]
        check: Check,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// σ₂ after each single-edge addition to H²_{n,s}.
    AuditSigma2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
    /// Closed-form crossover between H² and H³ against s ≤ (2n+4)/9.
    AuditCrossover {
        #[arg(long)]
        nmax: usize,
    },
}

fn read_h3(path: &Path) -> Result<Hypergraph3> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_h3(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_matching(m: &Matching) {
    for t in m.edges() {
        println!("{} {} {}", t[0], t[1], t[2]);
    }
}

fn join(values: impl IntoIterator<Item = usize>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn gen(family: Family, n: usize, s: usize, out: &Path) -> Result<bool> {
    let (h, cert) = build_extremal(ExtremalSpec::new(family.ell(), n, s))?;
    fs::write(out, write_h3(&h)).with_context(|| format!("writing {}", out.display()))?;
    let cert_path = PathBuf::from(format!("{}.cert", out.display()));
    fs::write(&cert_path, format!("{}\n", cert.t_line()))?;
    println!("wrote {} ({} vertices, {} edges)", out.display(), h.n(), h.edge_count());
    println!("{}", cert.t_line());
    Ok(true)
}

fn stats(file: &Path) -> Result<bool> {
    let h = read_h3(file)?;
    let degrees = h.degrees();
    println!("n={} m={}", h.n(), h.edge_count());
    println!("degrees: {}", join(degrees[1..].iter().copied()));
    println!("sigma2={}", h.sigma2());
    println!("delta1={}", h.delta(1)?);
    if h.n() >= 2 {
        println!("delta2={}", h.delta(2)?);
    }
    let isolated = h.isolated_vertices();
    println!("isolated={} [{}]", isolated.len(), isolated);
    Ok(true)
}

fn solve(file: &Path, target: Option<usize>, budget: u64) -> Result<bool> {
    let h = read_h3(file)?;
    let cfg = SolverConfig { target, ..SolverConfig::with_budget(budget)? };
    let r = max_matching_exact(&h, &cfg);
    println!("nu={} proved={}", r.optimum, r.proved_optimal);
    print_matching(&r.witness);
    eprintln!("nodes={} prunes={} memo_hits={}", r.stats.nodes, r.stats.prunes, r.stats.memo_hits);
    Ok(true)
}

fn recognize(file: &Path, family: Family, s: usize) -> Result<bool> {
    let h = read_h3(file)?;
    match is_subgraph_of_family(&h, family.ell(), s)? {
        Some(cert) => {
            println!("member=true");
            println!("{cert}");
        }
        None => println!("member=false"),
    }
    Ok(true)
}

fn match_cmd(file: &Path, s: usize, epsilon: f64, hybrid: bool) -> Result<bool> {
    let h = read_h3(file)?;
    let cfg = MatcherConfig { epsilon, hybrid, node_budget: Some(DEFAULT_MATCHER_BUDGET) };
    let r = grow_matching(&h, s, &cfg)?;
    let p = &r.partition;
    println!("threshold={:.3} |U|={} |W|={} required={}", p.threshold, p.u.len(), p.w.len(), p.required_cover());
    let cover = match &r.cover {
        hypermatch::matcher::CoverOutcome::Found(m) => format!("found {}", m.len()),
        hypermatch::matcher::CoverOutcome::Infeasible => "infeasible".to_string(),
        hypermatch::matcher::CoverOutcome::Exhausted(m) => format!("budget exhausted at {}", m.len()),
    };
    println!("cover: {cover}");
    println!(
        "optimal: |M|={} |M1|={} proved={} relaxed={}",
        r.initial.size(),
        r.initial.m1.len(),
        r.initial.proved,
        r.relaxed
    );
    for (i, mv) in r.moves.iter().enumerate() {
        println!("move {}: {mv}", i + 1);
    }
    match (&r.matching, r.source) {
        (Some(m), source) => {
            println!("matching size={} source={:?}", m.len(), source.expect("set with the matching"));
            print_matching(m);
        }
        (None, _) => println!("none"),
    }
    Ok(true)
}

fn verify_lemmas(variant: Option<String>, exhaustive: bool, seed: Option<u64>, iters: usize, exec: Execution) -> Result<bool> {
    let variant = variant.map(|v| v.parse::<LemmaVariant>()).transpose()?;
    let reports = match seed {
        Some(seed) if !exhaustive => {
            let variants: Vec<LemmaVariant> = variant.map_or_else(|| LemmaVariant::ALL.to_vec(), |v| vec![v]);
            variants
                .into_iter()
                .map(|v| search_violations(v, &LemmaParams::defaults(v), seed, iters, exec))
                .collect::<hypermatch::Result<Vec<_>>>()?
        }
        _ => exhaustive_suite(variant, exec)?,
    };
    let mut clean = true;
    for r in &reports {
        println!("{r}");
        for v in &r.violations {
            println!("  violation: {v}");
        }
        clean &= r.is_clean();
    }
    Ok(clean)
}

#[allow(clippy::too_many_arguments)]
fn campaign(
    mode: Mode,
    n: usize,
    s: usize,
    seed: Option<u64>,
    iters: u64,
    p: Option<f64>,
    check: Check,
    epsilon: f64,
    budget: u64,
    out: &Path,
    exec: Execution,
) -> Result<bool> {
    let spec = match mode {
        Mode::Exhaustive => CampaignSpec::exhaustive(n, s),
        Mode::Sampled => CampaignSpec::sampled(n, s, seed, iters, p)?,
    };
    let kind = match check {
        Check::DegreeSum => TheoremKind::DegreeSum,
        Check::Stability => TheoremKind::Stability { epsilon },
    };
    let spec = CampaignSpec { node_budget: Some(budget), ..spec.with_kind(kind) };
    let report = run_campaign(&spec, exec)?;
    fs::write(out, report.to_text()).with_context(|| format!("writing {}", out.display()))?;
    if let CampaignMode::Sampled { p, .. } = spec.mode {
        println!("p={p}");
    }
    println!("instances={}", report.instances);
    for c in Classification::ALL {
        println!("{c}={}", report.total(c));
    }
    println!("tightness-witnesses={}", report.tightness_witnesses);
    println!("report written to {}", out.display());
    eprintln!("wall-time={:.3}s", report.elapsed.as_secs_f64());
    Ok(!report.has_counterexample())
}

fn audit_sigma2(n: usize, s: usize, exec: Execution) -> Result<bool> {
    let r = edge_addition_sigma2_audit(n, s, exec)?;
    let show = |x: Option<usize>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
    println!(
        "n={} s={} bound={} additions={} min_sigma2={} max_sigma2={} violations={}",
        r.n,
        r.s,
        r.bound,
        r.additions,
        show(r.min_sigma2),
        show(r.max_sigma2),
        r.violations.len()
    );
    for t in &r.violations {
        println!("  exceeds after adding {} {} {}", t[0], t[1], t[2]);
    }
    Ok(r.passed())
}

fn audit_crossover(nmax: usize) -> Result<bool> {
    let r = crossover_audit(nmax)?;
    for row in &r.rows {
        println!("n={} s={} closed-form={} threshold={}", row.n, row.s, row.holds, row.predicate);
    }
    let bad = r.mismatches();
    println!("pairs={} mismatches={}", r.rows.len(), bad.len());
    Ok(bad.is_empty())
}

fn run(cli: Cli) -> Result<bool> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    match cli.command {
        Command::Gen { family, n, s, out } => gen(family, n, s, &out),
        Command::Stats { file } => stats(&file),
        Command::Solve { file, target, budget } => solve(&file, target, budget),
        Command::Recognize { file, family, s } => recognize(&file, family, s),
        Command::Match { file, s, epsilon, hybrid } => match_cmd(&file, s, epsilon, hybrid),
        Command::VerifyLemmas { variant, exhaustive, seed, iters } => verify_lemmas(variant, exhaustive, seed, iters, exec),
        Command::Campaign { mode, n, s, seed, iters, p, check, epsilon, budget, out } => {
            campaign(mode, n, s, seed, iters, p, check, epsilon, budget, &out, exec)
        }
        Command::AuditSigma2 { n, s } => audit_sigma2(n, s, exec),
        Command::AuditCrossover { nmax } => audit_crossover(nmax),
    }
}

fn thread_cap() -> Result<Option<usize>> {
    match std::env::var("HM_THREADS") {
        Ok(v) if !v.trim().is_empty() => {
            let t: usize = v.trim().parse().with_context(|| format!("HM_THREADS={v:?} is not a thread count"))?;
            if t == 0 {
                bail!("HM_THREADS must be at least 1");
            }
            Ok(Some(t))
        }
        _ => Ok(None),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = thread_cap().and_then(|cap| with_thread_cap(cap, || run(cli)));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
