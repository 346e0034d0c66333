use std::hint::black_box;

use annulus::wick::{convolution, ncl_all, verify_decomposition, wick, Fock, TracialAlgebra};
use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

fn wick_products(c: &mut Criterion) {
    let alg = TracialAlgebra::matrices(2);
    let fock = Fock::new(&alg, 5);
    let letter: Vec<Complex64> = (0..4).map(|k| Complex64::new(k as f64 + 1.0, 0.5)).collect();
    let word = vec![letter.clone(), letter.clone(), letter];
    let op = wick(&word, 5).unwrap();
    let v = fock.vacuum();
    c.bench_function("W(d1 d2 d3) on the vacuum, M2, L=5", |b| b.iter(|| op.apply(&fock, black_box(&v))));
    c.bench_function("decomposition check, M2, n=2, L=4", |b| {
        b.iter(|| verify_decomposition(&alg, black_box(&word[..2]), 4, 1).unwrap())
    });
    let set = ncl_all(4).unwrap();
    c.bench_function("convolutions NCL(3) x NCL(4)", |b| {
        let left = ncl_all(3).unwrap();
        b.iter(|| {
            let mut total = 0;
            for p in &left {
                for s in &set {
                    total += convolution(black_box(p), s).unwrap().len();
                }
            }
            total
        })
    });
}

criterion_group!(benches, wick_products);
criterion_main!(benches);
