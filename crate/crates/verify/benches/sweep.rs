//! Sweep throughput: rayon data-parallel evaluation vs the sequential
//! fallback, on a fixed mid-size grid.

use std::path::Path;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use opmeans::inequalities::TheoremId;
use opmeans_verify::config::{HarnessConfig, Resolved, StorePolicy};
use opmeans_verify::sweep::{run, run_serial};

fn bench_resolved(trials: u32) -> Resolved {
    let cfg = HarnessConfig {
        theorems: vec![TheoremId::T21, TheoremId::T25, TheoremId::T31],
        dims: vec![3, 5, 8],
        alphas: vec![0.25, 0.5, 0.75],
        betas: vec![0.5],
        functions: vec!["neg_power:0.5".into()],
        trials_per_cell: trials,
        store: StorePolicy::Violations,
        ..HarnessConfig::default()
    };
    cfg.resolve(Path::new(".")).expect("valid bench config")
}

fn sweep_benches(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for &trials in &[4u32, 16] {
        let resolved = bench_resolved(trials);
        group.bench_with_input(
            BenchmarkId::new("parallel", trials),
            &resolved,
            |b, resolved| b.iter(|| run(resolved).expect("sweep succeeds")),
        );
        group.bench_with_input(
            BenchmarkId::new("serial", trials),
            &resolved,
            |b, resolved| b.iter(|| run_serial(resolved).expect("sweep succeeds")),
        );
    }
    group.finish();
}

criterion_group!(benches, sweep_benches);
criterion_main!(benches);
