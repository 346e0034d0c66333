use std::hint::black_box;

use annulus::rmt::{evaluate_statistics, sample_wishart, stream_rng, EnsembleConfig, TraceStatistic};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn wishart(c: &mut Criterion) {
    let mut g = c.benchmark_group("wishart");
    g.sample_size(20);
    for n in [50, 100, 200] {
        g.bench_with_input(BenchmarkId::new("draw", n), &n, |b, &n| {
            let mut rng = stream_rng(1, 0, 1, 0);
            b.iter(|| sample_wishart(black_box(n), n, &mut rng))
        });
    }
    let cfg = EnsembleConfig { threads: 1, ..EnsembleConfig::from_c(100, 1.0, 2, 20, 3).unwrap() };
    let stats: Vec<TraceStatistic> = (0..2)
        .flat_map(|i| (1..=3).map(move |n| TraceStatistic::GammaTrace { n, i }))
        .chain([TraceStatistic::mixed(vec![1, 1], vec![0, 1]).unwrap()])
        .collect();
    g.bench_function("statistics N=100 p=2 x20", |b| b.iter(|| evaluate_statistics(black_box(&cfg), &stats).unwrap()));
    g.finish();
}

criterion_group!(benches, wishart);
criterion_main!(benches);
