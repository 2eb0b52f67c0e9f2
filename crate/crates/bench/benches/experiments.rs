use criterion::{criterion_group, criterion_main, Criterion};

use qwass_core::complexity::{wasserstein_complexity_with, ChannelSpec, ComplexityOptions};
use qwass_core::experiments::{lattice_draws, lattice_scan, min_gap_sweep, LatticeSpec, SweepSpec};
use qwass_core::linalg::pauli;
use qwass_core::{ObservableSet, SolverConfig};

fn experiments(c: &mut Criterion) {
    let cfg = SolverConfig::default();
    let mut group = c.benchmark_group("experiments");
    group.sample_size(10);

    let spec = SweepSpec {
        samples: 10,
        ..SweepSpec::new(3, 5)
    };
    group.bench_function("sweep/dim3x10", |b| b.iter(|| min_gap_sweep(&spec, &cfg).unwrap()));

    let draws = lattice_draws(6, 1, 1).unwrap();
    let (rho, tau) = &draws.pairs[0];
    let coarse = LatticeSpec {
        step: 0.25,
        radius_bound: 16,
    };
    group.bench_function("lattice/step0.25", |b| {
        b.iter(|| lattice_scan(rho, tau, &draws.triples[0], &coarse, &cfg, 6, "bench").unwrap())
    });

    let phi = ChannelSpec::depolarizing(0.3).unwrap();
    let a = ObservableSet::new(vec![pauli(1), pauli(2), pauli(3)]).unwrap();
    let opts = ComplexityOptions {
        restarts: 2,
        seed: 7,
        max_evals: Some(300),
    };
    group.bench_function("complexity/qubit", |b| {
        b.iter(|| wasserstein_complexity_with(&phi, &a, &cfg, &opts).unwrap())
    });
    group.finish();
}

criterion_group!(benches, experiments);
criterion_main!(benches);
