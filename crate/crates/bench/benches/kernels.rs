use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use frobsieve_core::elliptic::{ap_bsgs, ap_naive, trace_table, TraceMethod};
use frobsieve_core::sieve::{build_prime_window, sieve_bound_v2, Multiset};
use frobsieve_core::{primes_in, CurveQ};

fn traces(c: &mut Criterion) {
    let curve = CurveQ::new(-1, 1).unwrap();
    let mut group = c.benchmark_group("trace");
    for p in [10_007u64, 100_003, 1_000_003] {
        group.bench_with_input(BenchmarkId::new("bsgs", p), &p, |b, &p| b.iter(|| ap_bsgs(&curve, p)));
        group.bench_with_input(BenchmarkId::new("naive", p), &p, |b, &p| b.iter(|| ap_naive(&curve, p)));
    }
    group.finish();
    c.bench_function("trace_table 1e5", |b| b.iter(|| trace_table(&curve, 0, 100_000, TraceMethod::Bsgs)));
}

fn sieving(c: &mut Criterion) {
    c.bench_function("primes_in (1e9-1e7, 1e9]", |b| b.iter(|| primes_in(990_000_000, 1_000_000_000)));
    let a = Multiset::new((1..=10_000u64).map(|k| k * 7919 % 1_000_003 + 1).collect()).unwrap();
    let w = build_prime_window(200.0).unwrap();
    c.bench_function("sieve_bound_v2 10k @ z=200", |b| b.iter(|| sieve_bound_v2(&a, &w)));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = traces, sieving
}
criterion_main!(benches);
