use chevrest::invring::{k_invariants, DEFAULT_MONOMIAL_CAP};
use chevrest::par::Exec;
use chevrest::restrict::{verify_degree, VerifyOptions};
use chevrest::sympair::build_pair;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn invariants(c: &mut Criterion) {
    let mut group = c.benchmark_group("k_invariants");
    group.sample_size(10);
    for (id, n, d) in [("CI:2", 2, 4), ("AI:3", 2, 4)] {
        let pair = build_pair(id).unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), format!("{id} N={n} d={d}")), &exec, |b, &exec| {
                b.iter(|| k_invariants(&pair, n, d, DEFAULT_MONOMIAL_CAP, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn restriction(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_degree");
    group.sample_size(10);
    let pair = build_pair("AIII:2,1").unwrap();
    for exec in [Exec::Sequential, Exec::Parallel] {
        let opts = VerifyOptions { exec, ..VerifyOptions::default() };
        group.bench_function(BenchmarkId::new(format!("{exec:?}"), "AIII:2,1 N=2 d=4"), |b| {
            b.iter(|| verify_degree(&pair, 2, 4, &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, invariants, restriction);
criterion_main!(benches);
