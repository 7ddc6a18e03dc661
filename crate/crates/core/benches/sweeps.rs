use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gaussian_partners::entanglement::entanglement_partner;
use gaussian_partners::partners::correlation_partner;
use gaussian_partners::random::{random_state, random_subspace, rng};
use gaussian_partners::sweep::{sweep, sweep_sequential};

fn case(seed: u64) -> usize {
    let mut r = rng(seed);
    let n = 3 + (seed % 4) as usize;
    let state = random_state(n, 2.0, &mut r).unwrap();
    let a = random_subspace(n, 1, &mut r).unwrap();
    let j = state.complex_structure();
    let ep = entanglement_partner(&a, &j).unwrap();
    let cp = correlation_partner(&a, &j).unwrap();
    ep.mode_count + cp.mode_count
}

fn partner_sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("partner_sweep");
    for size in [32u64, 128] {
        let seeds: Vec<u64> = (0..size).collect();
        group.bench_with_input(BenchmarkId::new("parallel", size), &seeds, |b, s| {
            b.iter(|| black_box(sweep(s, case)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", size), &seeds, |b, s| {
            b.iter(|| black_box(sweep_sequential(s, case)))
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = partner_sweeps
}
criterion_main!(benches);
