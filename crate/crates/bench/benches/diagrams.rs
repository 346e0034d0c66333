use std::hint::black_box;

use annulus::diagrams::{enum_nc, enum_ncc, enum_ncl, enum_snc, weighted_count, Weight};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    for n in [6, 8, 10] {
        g.bench_with_input(BenchmarkId::new("nc", n), &n, |b, &n| b.iter(|| enum_nc(black_box(n)).unwrap().len()));
        g.bench_with_input(BenchmarkId::new("ncl", n), &n, |b, &n| {
            b.iter(|| weighted_count(&enum_ncl(black_box(n), 2).unwrap(), Weight::ClosedBlocks))
        });
    }
    for n in [4, 6, 8] {
        g.bench_with_input(BenchmarkId::new("ncc", n), &n, |b, &n| {
            b.iter(|| weighted_count(&enum_ncc(black_box(n), 1).unwrap(), Weight::ClosedBlocks))
        });
    }
    for (m, n) in [(2, 2), (3, 3), (4, 4)] {
        g.bench_with_input(BenchmarkId::new("snc", format!("{m}+{n}")), &(m, n), |b, &(m, n)| {
            b.iter(|| enum_snc(black_box(m), n).unwrap().len())
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration);
criterion_main!(benches);
