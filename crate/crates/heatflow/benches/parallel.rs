//! Parallel vs sequential throughput on the two fan-out workloads: grid
//! points of a quadrature sweep and certificate rows across r values.
//! With `--no-default-features` the "parallel" side degrades to the
//! sequential path, which makes the comparison a no-op by construction —
//! run with default features to see the real difference.

use criterion::{criterion_group, criterion_main, Criterion};
use heatflow::exec;
use heatflow::lattice::{c1_sum, generate_params, Family};
use heatflow::measure::ExponentPair;
use heatflow::spectral::{q_direct, QuadratureControl};

fn quadrature_points(c: &mut Criterion) {
    let mu = generate_params(3.0, Family::A, None).unwrap().measure();
    let pq = ExponentPair::new(1.0, 3.0).unwrap();
    let ctrl = QuadratureControl::default();
    let ts: Vec<f64> = (0..16).map(|i| 0.05 * 1.4f64.powi(i)).collect();

    let mut group = c.benchmark_group("quadrature-points");
    group.sample_size(10);
    group.bench_function("fan-out", |b| {
        b.iter(|| exec::ordered_map(&ts, |&t| q_direct(&mu, &pq, t, &ctrl).unwrap()))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| exec::ordered_map_seq(&ts, |&t| q_direct(&mu, &pq, t, &ctrl).unwrap()))
    });
    group.finish();
}

fn certificate_rows(c: &mut Criterion) {
    let rs: Vec<f64> = (1..=16).map(|i| 0.028 * i as f64).collect();

    let mut group = c.benchmark_group("certificate-rows");
    group.sample_size(20);
    group.bench_function("fan-out", |b| {
        b.iter(|| exec::ordered_map(&rs, |&r| c1_sum(3.0, 7, 9, r, 60).unwrap().value))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| exec::ordered_map_seq(&rs, |&r| c1_sum(3.0, 7, 9, r, 60).unwrap().value))
    });
    group.finish();
}

criterion_group!(benches, quadrature_points, certificate_rows);
criterion_main!(benches);
