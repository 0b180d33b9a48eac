//! Sequential against rayon-parallel execution on the same workloads.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypermatch::harness::{run_campaign, CampaignSpec};
use hypermatch::lemmas::{exhaustive_graph_families, search_violations, LemmaParams, LemmaVariant};
use hypermatch::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn campaign(c: &mut Criterion) {
    let mut group = c.benchmark_group("sampled-campaign-n12-s3");
    group.sample_size(10);
    let spec = CampaignSpec::sampled(12, 3, Some(42), 2_000, None).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_campaign(&spec, exec).unwrap())
        });
    }
    group.finish();
}

fn exhaustive_campaign(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive-campaign-n5-s1");
    group.sample_size(10);
    let spec = CampaignSpec::exhaustive(5, 1);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_campaign(&spec, exec).unwrap())
        });
    }
    group.finish();
}

fn lemmas(c: &mut Criterion) {
    let mut group = c.benchmark_group("lemma-sweeps");
    group.sample_size(10);
    let params = LemmaParams::defaults(LemmaVariant::L5);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("L5-sampled-5000", name), &exec, |b, &exec| {
            b.iter(|| search_violations(LemmaVariant::L5, &params, 1, 5_000, exec).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("L3-exhaustive", name), &exec, |b, &exec| {
            b.iter(|| exhaustive_graph_families(LemmaVariant::L3, 3, 5, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, campaign, exhaustive_campaign, lemmas);
criterion_main!(benches);
