use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qwalk_bench::{konno_line, parameter_pairs, reduced_halfline};
use qwalk_core::cmv::required_dimension;
use qwalk_core::oracle::moment_by_quadrature;
use qwalk_core::{build_transition, defect_params, evolve, halfline_roots, Lattice, Qubit, WaveFunction};

fn bench_build_transition(c: &mut Criterion) {
    let spec = konno_line();
    let mut group = c.benchmark_group("build_transition");
    for dim in [1_000usize, 10_000] {
        group.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |b, &dim| {
            b.iter(|| build_transition(black_box(&spec), dim).unwrap())
        });
    }
    group.finish();
}

fn bench_evolve(c: &mut Criterion) {
    let spec = konno_line();
    let mut group = c.benchmark_group("evolve");
    group.sample_size(20);
    for steps in [100usize, 1_000] {
        let dim = required_dimension(Lattice::Line, 0, steps);
        let u = build_transition(&spec, dim).unwrap();
        let psi = WaveFunction::localized(Lattice::Line, dim, 0, &Qubit::up()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(steps), &steps, |b, &steps| {
            b.iter(|| evolve(&u, black_box(&psi), steps).unwrap())
        });
    }
    group.finish();
}

fn bench_halfline_roots(c: &mut Criterion) {
    let pairs = parameter_pairs(64);
    c.bench_function("halfline_roots/64", |b| {
        b.iter(|| {
            pairs
                .iter()
                .map(|&(a, bb)| halfline_roots(black_box(a), black_box(bb)).len())
                .sum::<usize>()
        })
    });
}

fn bench_quadrature(c: &mut Criterion) {
    let line = defect_params(&konno_line()).unwrap();
    let half = defect_params(&reduced_halfline()).unwrap();
    let mut group = c.benchmark_group("moment_by_quadrature");
    group.sample_size(20);
    group.bench_function("line/n=10", |b| {
        b.iter(|| moment_by_quadrature(black_box(&line), 10, Lattice::Line).unwrap())
    });
    group.bench_function("halfline/n=10", |b| {
        b.iter(|| moment_by_quadrature(black_box(&half), 10, Lattice::HalfLine).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_build_transition,
    bench_evolve,
    bench_halfline_roots,
    bench_quadrature
);
criterion_main!(benches);
