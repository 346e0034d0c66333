use std::hint::black_box;

use annulus::polyalg::{family_table, identities, Family};
use criterion::{criterion_group, criterion_main, Criterion};

fn tables(c: &mut Criterion) {
    for f in [Family::GammaTilde, Family::Gamma, Family::Pi] {
        c.bench_function(&format!("inverse {} 16", f.name()), |b| b.iter(|| family_table(black_box(f), true, 16)));
    }
    c.bench_function("series recursions order 12", |b| b.iter(|| identities::check_series_recursions(black_box(12))));
}

criterion_group!(benches, tables);
criterion_main!(benches);
