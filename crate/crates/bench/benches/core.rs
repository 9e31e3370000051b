use std::hint::black_box;

use amc_core::curves::word::HalfTwist;
use amc_core::curves::SphereCurves;
use amc_core::experiments::qi_report;
use amc_core::farey::{cc_dist, Slope};
use amc_core::fixtures::farey_base;
use amc_core::horoball::{dist_estimate, dist_exact, HoroballVertex};
use amc_core::markings::{BallGraph, Caps, FareyModel};
use amc_core::SurfaceKind;
use criterion::{criterion_group, criterion_main, Criterion};

fn horoball(c: &mut Criterion) {
    let (u, v) = (HoroballVertex::new(0, 0), HoroballVertex::new(1000, 3));
    c.bench_function("horoball/dist_exact", |b| b.iter(|| dist_exact(black_box(u), black_box(v)).unwrap()));
    c.bench_function("horoball/dist_estimate", |b| b.iter(|| dist_estimate(black_box(u), black_box(v))));
}

fn farey(c: &mut Criterion) {
    let a = Slope::new(1, 0).unwrap();
    let s = Slope::new(832_040, 1_346_269).unwrap();
    c.bench_function("farey/cc_dist", |b| b.iter(|| cc_dist(black_box(a), black_box(s))));
}

fn curves(c: &mut Criterion) {
    let eng = SphereCurves::for_kind(SurfaceKind::S05).unwrap();
    let word = |len: usize, shift: u8| -> Vec<HalfTwist> {
        (0..len).map(|i| HalfTwist::new(1 + (i as u8 + shift) % 4, i % 3 == 0)).collect()
    };
    let x = eng.from_round(1, &word(12, 0));
    let y = eng.from_round(3, &word(12, 1));
    c.bench_function("curves/intersection", |b| b.iter(|| eng.intersection(black_box(&x), black_box(&y)).unwrap()));
    c.bench_function("curves/reduction", |b| b.iter(|| eng.reduction(black_box(&x)).unwrap()));
}

fn balls(c: &mut Criterion) {
    let model = FareyModel::new(SurfaceKind::S04).unwrap();
    let mut group = c.benchmark_group("markings");
    group.sample_size(10);
    group.bench_function("ball_s04_r6", |b| {
        b.iter(|| BallGraph::generate(&model, &farey_base(), 6, &Caps::default()).unwrap())
    });
    let ball = BallGraph::generate(&model, &farey_base(), 6, &Caps::default()).unwrap();
    group.bench_function("formula_fit_s04_r6", |b| b.iter(|| qi_report(&model, &ball, 2, 1).unwrap()));
    group.finish();
}

criterion_group!(benches, horoball, farey, curves, balls);
criterion_main!(benches);
