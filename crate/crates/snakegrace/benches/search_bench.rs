//! Parallel versus sequential search benchmarks.

use criterion::{criterion_group, criterion_main, Criterion};

use snakegrace::search::{c10_search, enumerate_graceful, Execution, Mode};
use snakegrace::topology::{build_snake, SnakeShape};

fn bench_c10_analysis(c: &mut Criterion) {
    let mut group = c.benchmark_group("c10_nonexistence_s2");
    group.bench_function("sequential", |b| {
        b.iter(|| c10_search(2, false, Execution::Sequential).unwrap())
    });
    group.bench_function("parallel", |b| {
        b.iter(|| c10_search(2, false, Execution::Parallel).unwrap())
    });
    group.finish();
}

fn bench_enumerate_2c6(c: &mut Criterion) {
    let shape = SnakeShape::uniform(6, 2, vec![]).unwrap();
    let g = build_snake(&shape).unwrap();
    let mut group = c.benchmark_group("enumerate_2c6_graceful");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| enumerate_graceful(&g, Mode::Graceful, None, Execution::Sequential).unwrap())
    });
    group.bench_function("parallel", |b| {
        b.iter(|| enumerate_graceful(&g, Mode::Graceful, None, Execution::Parallel).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_c10_analysis, bench_enumerate_2c6);
criterion_main!(benches);
