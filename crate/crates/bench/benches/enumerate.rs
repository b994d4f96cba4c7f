use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lud::{enumerate, enumerate_oracle, resolve, EnumerationOptions, Lexicon, SurfaceMeta};
use lud_bench::{f1, random_with_holes};

fn f1_readings(c: &mut Criterion) {
    let lud = f1();
    let mut g = c.benchmark_group("f1");
    g.bench_function("propagating", |b| b.iter(|| enumerate(black_box(&lud), EnumerationOptions::default())));
    g.bench_function("oracle", |b| b.iter(|| enumerate_oracle(black_box(&lud))));
    let meta: SurfaceMeta = "l2=0 l3=3 l4=6".parse().unwrap();
    let lexicon = Lexicon::builtin();
    g.bench_function("resolve", |b| b.iter(|| resolve(black_box(&lud), &meta, &lexicon)));
    g.finish();
}

fn by_hole_count(c: &mut Criterion) {
    let mut g = c.benchmark_group("random");
    g.sample_size(10);
    for holes in [6, 8, 10] {
        let instances = random_with_holes(holes, 4);
        g.bench_with_input(BenchmarkId::new("propagating", holes), &instances, |b, xs| {
            b.iter(|| xs.iter().map(|x| enumerate(x, EnumerationOptions::default()).unwrap().len()).sum::<usize>())
        });
        g.bench_with_input(BenchmarkId::new("oracle", holes), &instances, |b, xs| {
            b.iter(|| xs.iter().map(|x| enumerate_oracle(x).unwrap().len()).sum::<usize>())
        });
    }
    g.finish();
}

criterion_group!(benches, f1_readings, by_hole_count);
criterion_main!(benches);
