//! Sequential against rayon-parallel execution on the independent work
//! items of each sweep: basis words, degree slices and catalog taus.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kdv_core::dmod::ResolutionSlice;
use kdv_core::taulab::{run_suite, TauConfig, TauSpec};
use kdv_core::Strategy;

const STRATEGIES: [Strategy; 2] = [Strategy::Sequential, Strategy::Parallel];

// Labels follow the requested strategy; without the `parallel` feature both
// rows run sequentially.
fn label(s: Strategy) -> &'static str {
    match s {
        Strategy::Sequential => "sequential",
        Strategy::Parallel => "parallel",
    }
}

fn operator_identities(c: &mut Criterion) {
    let mut group = c.benchmark_group("operator_identities_d10");
    for s in STRATEGIES {
        let rs = ResolutionSlice::new(10, s).unwrap();
        group.bench_function(BenchmarkId::from_parameter(label(s)), |b| {
            b.iter(|| black_box(rs.operator_identity_failures(4, 10)))
        });
    }
    group.finish();
}

fn ev1_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("ev1_rank_d14");
    group.sample_size(10);
    for s in STRATEGIES {
        let rs = ResolutionSlice::new(14, s).unwrap();
        group.bench_function(BenchmarkId::from_parameter(label(s)), |b| {
            b.iter(|| black_box(rs.ev1_rank(14).unwrap()))
        });
    }
    group.finish();
}

fn kernel_reports(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel_reports_d10");
    group.sample_size(10);
    for s in STRATEGIES {
        let rs = ResolutionSlice::new(10, s).unwrap();
        group.bench_function(BenchmarkId::from_parameter(label(s)), |b| {
            b.iter(|| black_box(rs.kernel_reports(10).unwrap()))
        });
    }
    group.finish();
}

fn tau_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("tau_suite_t5_z6");
    group.sample_size(10);
    let config = TauConfig {
        t_degree: 5,
        z_order: 6,
        w_order: 4,
        dict_max: 3,
        ..TauConfig::default()
    };
    let specs = TauSpec::default_suite();
    for s in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(label(s)), |b| {
            b.iter(|| black_box(run_suite(&specs, &config, s).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    operator_identities,
    ev1_rank,
    kernel_reports,
    tau_suite
);
criterion_main!(benches);
