//! Benchmarks of the hot verification paths: point sampling, frame
//! construction, first- and second-order point data, and a full scene run.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use lightlike_core::hypersurface::{
    chart_point_data, chart_point_full, chart_tangent_basis, frame_core,
};
use lightlike_core::runner::{run, RunConfig};
use lightlike_core::scenarios::{example_61, sample_points, SceneData};

fn bench_engine(c: &mut Criterion) {
    let sc = example_61(1);
    let ch = match &sc.data {
        SceneData::Chart(chart) => chart.clone(),
        _ => unreachable!(),
    };
    let x = sample_points(&ch, 1, 42).unwrap().remove(0);
    let tangent = chart_tangent_basis::<f64>(&ch.con, &x, 1e-9).unwrap();

    c.bench_function("sample_20_points", |b| {
        b.iter(|| sample_points(black_box(&ch), 20, 42).unwrap())
    });
    c.bench_function("frame_core", |b| {
        b.iter(|| frame_core(black_box(&ch.view), black_box(&tangent), None, 1e-9).unwrap())
    });
    c.bench_function("point_data_first_order", |b| {
        b.iter(|| chart_point_data::<f64>(black_box(&ch), black_box(&x), 1e-9, 1e-9).unwrap())
    });
    c.bench_function("point_data_second_order", |b| {
        b.iter(|| chart_point_full(black_box(&ch), black_box(&x), 1e-9, 1e-9).unwrap())
    });
    c.bench_function("full_run_10_points", |b| {
        let cfg = RunConfig {
            points: 10,
            ..RunConfig::default()
        };
        b.iter(|| run(black_box(&cfg)).unwrap())
    });
}

criterion_group!(benches, bench_engine);
criterion_main!(benches);
