use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ptnls_bench::{cases, sweep};
use ptnls_core::stationary::branch_mass;
use ptnls_core::variational::{minimize_energy, MinimizeOptions};
use ptnls_core::{critical_data, solve_branch, state_by_mass, sweep_branches, Branch, ModelParams};

fn closed_form(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_branch");
    for (name, p) in cases() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &p, |b, p| {
            b.iter(|| solve_branch(p, black_box(1.3), Branch::L).unwrap())
        });
    }
    g.finish();
    c.bench_function("branch_mass/R", |b| {
        let p = ModelParams::new(1.0, 2.0, 1.0).unwrap();
        b.iter(|| branch_mass(&p, black_box(0.7), Branch::R).unwrap())
    });
    c.bench_function("critical_data", |b| b.iter(|| critical_data(black_box(2.5)).unwrap()));
}

fn mass_inversion(c: &mut Criterion) {
    let p = ModelParams::new(1.0, 2.0, 1.0).unwrap();
    let mut g = c.benchmark_group("state_by_mass");
    for b in Branch::BOTH {
        g.bench_with_input(BenchmarkId::from_parameter(b), &b, |bch, &br| {
            bch.iter(|| state_by_mass(&p, black_box(2.0), br).unwrap())
        });
    }
    g.finish();
}

fn sweeps(c: &mut Criterion) {
    let p = ModelParams::new(1.0, 2.0, 1.0).unwrap();
    let mut g = c.benchmark_group("sweep_branches");
    for n in [100, 1000, 10_000] {
        let spec = sweep(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &spec, |b, s| {
            b.iter(|| sweep_branches(&p, s).unwrap())
        });
    }
    g.finish();
}

fn minimizer(c: &mut Criterion) {
    let p = ModelParams::new(1.0, 2.0, 1.0).unwrap();
    let mut g = c.benchmark_group("minimize_energy");
    g.sample_size(10);
    for cells in [1000, 4000] {
        let opts = MinimizeOptions {
            cells,
            ..MinimizeOptions::default()
        };
        g.bench_with_input(BenchmarkId::from_parameter(cells), &opts, |b, o| {
            b.iter(|| minimize_energy(&p, black_box(1.0), None, None, o).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, closed_form, mass_inversion, sweeps, minimizer);
criterion_main!(benches);
