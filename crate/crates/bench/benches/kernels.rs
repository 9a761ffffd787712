use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use relaxwave::grid::{Axis, Grid2};
use relaxwave::hirota::{bilinear_residual, AlphaVariant};
use relaxwave::sim::{evolve_mkdvb, evolve_system19, FieldBoundary, MkdvbCoeffs, SimState19, Sim19Options, SimStateMKdVB};
use relaxwave::verify::system19_residual;
use relaxwave::{classify, solve_real, DerivativeMethod, MediumParams};

fn dispersion(c: &mut Criterion) {
    c.bench_function("solve_real", |b| b.iter(|| solve_real(black_box(0.24), black_box(0.8))));
    let w = solve_real(0.24, 0.1).unwrap();
    c.bench_function("classify", |b| b.iter(|| classify(black_box(&w), 1e-9)));
}

fn residuals(c: &mut Criterion) {
    let w = solve_real(0.24, 0.8).unwrap();
    let g = Grid2::square(-15.0, 15.0, 101);
    for m in [DerivativeMethod::Analytic, DerivativeMethod::fd4()] {
        c.bench_function(&format!("system19_residual_{}_101x101", m.tag()), |b| {
            b.iter(|| system19_residual(&w, &g, m).unwrap())
        });
    }
    c.bench_function("bilinear_residual_101x101", |b| {
        b.iter(|| bilinear_residual(&w, AlphaVariant::SquaredAlpha, &Grid2::bilinear_default()).unwrap())
    });
}

fn simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("sim");
    group.sample_size(10);
    let w = solve_real(0.24, 0.8).unwrap();
    let init = SimState19::from_wave(&w, Axis::new(-20.0, 20.0, 401), 0.0);
    let opts = Sim19Options { alpha: w.alpha, t_end: 1.0, dt: 0.01, snapshot_every: 1000 };
    let bc = FieldBoundary::soliton(&w);
    group.bench_function("system19_n401_100steps", |b| b.iter(|| evolve_system19(&init, &opts, &bc, None).unwrap()));
    let coeffs = MkdvbCoeffs::from_medium(&MediumParams::default()).unwrap();
    let state = SimStateMKdVB::from_fn(2.0 * PI, 256, coeffs, |x| 0.5 * x.sin());
    group.bench_function("mkdvb_n256_1000steps", |b| b.iter(|| evolve_mkdvb(&state, 1.0, 1e-3, 1000).unwrap()));
    group.finish();
}

criterion_group!(benches, dispersion, residuals, simulation);
criterion_main!(benches);
