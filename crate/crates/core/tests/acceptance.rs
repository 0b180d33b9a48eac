//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
//!
//! Integer quantities are compared exactly. Runtime limits are part of each
//! criterion and are checked against wall time of this process.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hypermatch::constructions::{build_extremal, sigma2_closed_form, ExtremalSpec};
use hypermatch::harness::{
    crossover_audit, edge_addition_sigma2_audit, parse_counterexamples, reverify, run_campaign, CampaignSpec,
    Classification, TheoremKind,
};
use hypermatch::hypergraph::{all_triples, Hypergraph3};
use hypermatch::lemmas::{exhaustive_suite, search_violations, LemmaParams, LemmaVariant};
use hypermatch::matcher::{grow_matching, MatcherConfig, MatchingSource, DEFAULT_MATCHER_BUDGET};
use hypermatch::recognize::{is_subgraph_of_h2, verify_certificate};
use hypermatch::solver::{max_matching_bruteforce, max_matching_exact, SolverConfig};
use hypermatch::{Execution, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn random_instance(rng: &mut ChaCha8Rng, n_lo: usize, n_hi: usize) -> Hypergraph3 {
    let n = rng.random_range(n_lo..=n_hi);
    let p = rng.random_range(0.05..0.6);
    let edges: Vec<_> = all_triples(n).into_iter().filter(|_| rng.random_bool(p)).collect();
    Hypergraph3::new(n, edges).unwrap()
}

fn closed_forms() -> Outcome {
    let mut checked = 0;
    for n in 6..=30 {
        for s in 2..=n / 3 {
            for ell in 1..=3 {
                let spec = ExtremalSpec::new(ell, n, s);
                let (h, _) = build_extremal(spec).unwrap();
                let (built, closed) = (h.sigma2(), sigma2_closed_form(spec).unwrap());
                if built != closed {
                    return fail(format!("ℓ={ell} n={n} s={s}: built {built}, closed form {closed}"));
                }
                checked += 1;
            }
        }
    }
    pass(format!("{checked} families agree exactly"))
}

fn extremality() -> Outcome {
    let mut checked = 0;
    for n in 6..=15 {
        for s in 2..=n / 3 {
            for ell in 1..=3 {
                let (h, _) = build_extremal(ExtremalSpec::new(ell, n, s)).unwrap();
                let r = max_matching_exact(&h, &SolverConfig::default());
                if r.optimum != s - 1 || !r.proved_optimal {
                    return fail(format!("ℓ={ell} n={n} s={s}: ν={} proved={}", r.optimum, r.proved_optimal));
                }
                checked += 1;
            }
        }
    }
    pass(format!("{checked} families have proved ν = s − 1"))
}

fn exhaustive_sweep() -> Outcome {
    let spec = CampaignSpec::exhaustive(6, 2);
    let first = run_campaign(&spec, Execution::Parallel).unwrap();
    let second = run_campaign(&spec, Execution::Parallel).unwrap();
    let (a, b) = (first.to_text(), second.to_text());
    if a != b {
        return fail("reports differ between runs");
    }
    if first.instances != 1 << 20 || first.totals.iter().sum::<u64>() != first.instances {
        return fail(format!("processed {} instances, classified {}", first.instances, first.totals.iter().sum::<u64>()));
    }
    if first.tightness_witnesses == 0 {
        return fail("no tightness witness (σ₂ = 10, no isolated vertex, ν = 1)");
    }
    let records = parse_counterexamples(&a).unwrap();
    for (index, h) in &records {
        if reverify(h, 2, TheoremKind::DegreeSum).unwrap() != Classification::Counterexample {
            return fail(format!("counterexample {index} does not re-verify"));
        }
    }
    let counts: Vec<String> = Classification::ALL.iter().map(|c| format!("{c}={}", first.total(*c))).collect();
    pass(format!(
        "2^20 instances, byte-identical reports, {} tightness witnesses, {}, {} counterexamples re-verified ({:.1}s per run)",
        first.tightness_witnesses,
        counts.join(" "),
        records.len(),
        first.elapsed.as_secs_f64()
    ))
}

fn sigma2_audit() -> Outcome {
    let mut pairs = 0;
    let mut additions = 0;
    for n in 6..=20 {
        for s in 2..=n / 3 {
            let r = edge_addition_sigma2_audit(n, s, Execution::Parallel).unwrap();
            if !r.passed() {
                return fail(format!("n={n} s={s}: adding {:?} exceeds {}", r.violations[0], r.bound));
            }
            pairs += 1;
            additions += r.additions;
        }
    }
    pass(format!("{pairs} (n, s) pairs, {additions} single-edge additions, none above 2(s−1)(n−1)"))
}

fn crossover() -> Outcome {
    let r = crossover_audit(60).unwrap();
    match r.mismatches().first() {
        Some(m) => fail(format!("n={} s={}: closed forms say {}, threshold says {}", m.n, m.s, m.holds, m.predicate)),
        None => pass(format!("{} (n, s) pairs agree", r.rows.len())),
    }
}

fn solver_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0006);
    for i in 0..1000 {
        let h = random_instance(&mut rng, 3, 9);
        let exact = max_matching_exact(&h, &SolverConfig::default());
        let brute = max_matching_bruteforce(&h).unwrap();
        if exact.optimum != brute || !exact.proved_optimal || exact.witness.validate_in(&h).is_err() {
            return fail(format!("instance {i}: exact {} vs brute force {brute}", exact.optimum));
        }
    }
    pass("1000 instances, 100% agreement")
}

fn h2_by_partition_search(h: &Hypergraph3, s: usize) -> bool {
    let n = h.n();
    let t_size = 2 * s - 1;
    (0u32..1 << n).filter(|m| m.count_ones() as usize == t_size).any(|m| {
        let t: VertexSet = (1..=n).filter(|v| m >> (v - 1) & 1 == 1).collect();
        h.edges().iter().all(|e| e.iter().filter(|v| t.contains(**v)).count() >= 2)
    })
}

fn recognizer_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0007);
    let (mut checks, mut positives, mut instances) = (0, 0, 0);
    while instances < 500 {
        let h = random_instance(&mut rng, 3, 9);
        instances += 1;
        for s in 1..=h.n() / 3 {
            let cert = is_subgraph_of_h2(&h, s).unwrap();
            if cert.is_some() != h2_by_partition_search(&h, s) {
                return fail(format!("instance {instances} s={s}: recognizer and partition search disagree"));
            }
            if let Some(c) = cert {
                if !verify_certificate(&h, &c).unwrap() {
                    return fail(format!("instance {instances} s={s}: certificate does not verify"));
                }
                positives += 1;
            }
            checks += 1;
        }
    }
    pass(format!("500 instances, {checks} (H, s) checks, {positives} verified certificates"))
}

fn lemma_suites() -> Outcome {
    let mut lines = Vec::new();
    for r in exhaustive_suite(None, Execution::Parallel).unwrap() {
        if !r.is_clean() {
            return fail(format!("{r}: {}", r.violations[0]));
        }
        lines.push(format!("{} {}", r.variant, r.instances));
    }
    for v in LemmaVariant::ALL {
        let r = search_violations(v, &LemmaParams::defaults(v), 1, 100_000, Execution::Parallel).unwrap();
        if !r.is_clean() {
            return fail(format!("{r}: {}", r.violations[0]));
        }
        lines.push(format!("{v} sampled {}", r.instances));
    }
    pass(format!("zero violations ({})", lines.join(", ")))
}

fn matcher_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0009);
    let (mut runs, mut found, mut from_pipeline, mut exact_states) = (0, 0, 0, 0);
    for i in 0..1000 {
        let h = random_instance(&mut rng, 3, 10);
        let nu = max_matching_exact(&h, &SolverConfig::default()).optimum;
        for s in 1..=h.n() / 3 {
            let cfg = MatcherConfig {
                epsilon: rng.random_range(0.01..0.99),
                hybrid: true,
                node_budget: Some(DEFAULT_MATCHER_BUDGET),
            };
            let r = grow_matching(&h, s, &cfg).unwrap();
            runs += 1;
            if r.matching.is_some() != (nu >= s) {
                return fail(format!("instance {i} s={s}: ν={nu} but matcher returned {:?}", r.matching.map(|m| m.len())));
            }
            if let Some(m) = &r.matching {
                if m.len() != s || m.validate_in(&h).is_err() {
                    return fail(format!("instance {i} s={s}: invalid matching {m:?}"));
                }
                found += 1;
                from_pipeline += (r.source == Some(MatchingSource::Pipeline)) as usize;
            }
            if r.initial.proved {
                exact_states += 1;
                if r.initial.forbidden_edge_counts(&h) != (0, 0) {
                    return fail(format!("instance {i} s={s}: optimal state has a forbidden edge"));
                }
            }
        }
    }
    pass(format!("{runs} runs, {found} matchings returned ({from_pipeline} without the exact fallback), no-edge invariants hold at {exact_states} exact optimal states"))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 closed-form sigma2", Duration::from_secs(10), closed_forms),
        ("2 extremal matching numbers", Duration::from_secs(60), extremality),
        ("3 exhaustive n=6 s=2 sweep", Duration::from_secs(600), exhaustive_sweep),
        ("4 edge-addition sigma2 audit", Duration::from_secs(60), sigma2_audit),
        ("5 crossover audit", Duration::from_secs(1), crossover),
        ("6 solver vs brute force", Duration::from_secs(120), solver_oracle),
        ("7 recognizer vs partition search", Duration::from_secs(120), recognizer_oracle),
        ("8 lemma suites", Duration::from_secs(300), lemma_suites),
        ("9 matcher hybrid exactness", Duration::from_secs(300), matcher_exactness),
    ];
    let mut all_ok = true;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let ok = outcome.ok && took <= limit;
        all_ok &= ok;
        let timing = if took <= limit { "" } else { " [over time limit]" };
        println!(
            "criterion {name}: {} ({:.2}s / {}s) {}{timing}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs(),
            outcome.detail
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
