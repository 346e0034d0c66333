//! Property tests over randomly chosen diagrams, polynomials and words.

use annulus::diagrams::{
    cut, dot_decode, dot_encode, enum_nc, enum_ncc, enum_ncl, enum_snc, reassemble, weighted_count, Weight,
};
use annulus::polyalg::{family_table, Family, PolyC, TransitionMatrix};
use annulus::rmt::TraceStatistic;
use annulus::wick::{convolution, prepend, wick, Fock, Prepend, TracialAlgebra};
use num_complex::Complex64;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = PolyC> {
    prop::collection::vec(-20i64..20, 0..6).prop_map(|v| PolyC::from_ints(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(a.to_string().parse::<PolyC>().unwrap(), a);
    }

    #[test]
    fn unitriangular_inverse_is_involutive(entries in prop::collection::vec(poly(), 15)) {
        let mut it = entries.into_iter();
        let rows: Vec<Vec<PolyC>> = (0..5)
            .map(|n| (0..=n).map(|k| if k == n { PolyC::one() } else { it.next().unwrap() }).collect())
            .collect();
        let m = TransitionMatrix::from_rows(rows).unwrap();
        let inv = m.invert_unitriangular().unwrap();
        prop_assert_eq!(m.mul(&inv).unwrap(), TransitionMatrix::identity(5));
        prop_assert_eq!(inv.invert_unitriangular().unwrap(), m);
    }

    #[test]
    fn kreweras_complement_counts(n in 1usize..=9, pick in any::<prop::sample::Index>()) {
        let all = enum_nc(n).unwrap();
        let p = &all[pick.index(all.len())];
        let q = p.kreweras().unwrap();
        prop_assert!(q.is_noncrossing());
        prop_assert_eq!(p.num_cycles() + q.num_cycles(), n + 1);
    }

    #[test]
    fn dot_structures_round_trip(n in 1usize..=7, k in 0usize..=7, pick in any::<prop::sample::Index>()) {
        prop_assume!(k <= n);
        let all = enum_ncc(n, k).unwrap();
        let h = &all[pick.index(all.len())];
        prop_assert_eq!(&dot_decode(&dot_encode(h)).unwrap(), h);
    }

    #[test]
    fn cut_then_reassemble(m in 1usize..=5, n in 1usize..=5, pick in any::<prop::sample::Index>()) {
        let all = enum_snc(m, n).unwrap();
        let a = &all[pick.index(all.len())];
        let (h1, h2) = cut(a);
        prop_assert_eq!(h1.k(), a.through_blocks().len());
        let hits = (1..=h1.k()).filter(|&s| reassemble(&h1, &h2, s).as_ref() == Ok(a)).count();
        prop_assert_eq!(hits, 1);
    }

    #[test]
    fn convolution_size(m in 1usize..=4, n in 1usize..=4, j in 0usize..=4, k in 0usize..=4,
                        pi in any::<prop::sample::Index>(), sigma in any::<prop::sample::Index>()) {
        prop_assume!(j <= m && k <= n);
        let left = enum_ncl(m, j).unwrap();
        let right = enum_ncl(n, k).unwrap();
        let out = convolution(&left[pi.index(left.len())], &right[sigma.index(right.len())]).unwrap();
        prop_assert_eq!(out.len(), 2 * j.min(k) + 1);
        prop_assert!(out.iter().all(|t| t.n() == m + n));
    }

    #[test]
    fn prepend_changes_counts_as_named(n in 1usize..=6, k in 0usize..=6, pick in any::<prop::sample::Index>()) {
        prop_assume!(k <= n);
        let all = enum_ncl(n, k).unwrap();
        let pi = &all[pick.index(all.len())];
        for case in Prepend::ALL {
            let Some(t) = prepend(case, pi).unwrap() else {
                prop_assert_eq!(k, 0);
                continue;
            };
            let (dk, dclosed): (isize, isize) = match case {
                Prepend::OpenSingleton => (1, 0),
                Prepend::JoinClosed => (-1, 1),
                Prepend::JoinOpen => (0, 0),
                Prepend::ClosedSingleton => (0, 1),
            };
            prop_assert_eq!(t.k() as isize, k as isize + dk);
            prop_assert_eq!(t.num_closed() as isize, pi.num_closed() as isize + dclosed);
        }
    }

    #[test]
    fn mixed_keys_are_rotation_invariant(m in prop::collection::vec(1usize..4, 2..5), r in 0usize..5) {
        let k = m.len();
        let i: Vec<usize> = (0..k).map(|x| if k % 2 == 1 && x == k - 1 { 2 } else { x % 2 }).collect();
        let rot = |v: &[usize]| { let s = r % k; [&v[s..], &v[..s]].concat() };
        let a = TraceStatistic::mixed(m.clone(), i.clone()).unwrap();
        let b = TraceStatistic::mixed(rot(&m), rot(&i)).unwrap();
        prop_assert_eq!(a.key(), b.key());
    }

    #[test]
    fn wick_reproduces_words(seed in any::<u64>(), len in 0usize..=4) {
        use rand::SeedableRng;
        let alg = TracialAlgebra::matrices(2);
        let fock = Fock::new(&alg, 4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let word: Vec<Vec<Complex64>> = (0..len).map(|_| alg.random(&mut rng)).collect();
        let got = wick(&word, 4).unwrap().apply(&fock, &fock.vacuum());
        let want = fock.word(&word);
        prop_assert!(got.max_diff(&want) <= 1e-9 * want.max_abs().max(1.0));
    }
}

#[test]
fn ncl_rows_sum_to_the_inverse_table() {
    let inv = family_table(Family::Pi, true, 8);
    for n in 1..8 {
        for k in 0..=n {
            assert_eq!(&weighted_count(&enum_ncl(n, k).unwrap(), Weight::ClosedBlocks), inv.entry(n, k));
        }
    }
}
