//! Enumerators against exhaustive searches over the symmetric group.

use std::collections::BTreeSet;

use annulus::diagrams::{enum_nc, enum_snc, weighted_count, Weight};
use annulus::polyalg::{family_table, Family};

/// Every permutation of `0..n` as an image vector, lexicographic.
fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { return out };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = p[x];
        }
        out.push(c);
    }
    out
}

/// `a b`: apply `b` first.
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

fn gamma(m: usize, n: usize) -> Vec<usize> {
    let mut g = Vec::with_capacity(m + n);
    g.extend((0..m).map(|i| (i + 1) % m));
    g.extend((0..n).map(|i| m + (i + 1) % n));
    g
}

#[test]
fn noncrossing_by_the_geodesic_condition() {
    for n in 1..=7 {
        let g = gamma(n, 0);
        let want: BTreeSet<Vec<usize>> = all_perms(n)
            .into_iter()
            .filter(|p| cycles(p).len() + cycles(&compose(&g, &inverse(p))).len() == n + 1)
            .collect();
        let got: BTreeSet<Vec<usize>> = enum_nc(n).unwrap().iter().map(|p| p.images()).collect();
        assert_eq!(got, want, "n={n}");
    }
}

#[test]
fn annular_by_the_geodesic_condition() {
    for total in 2..=8 {
        for m in 1..total {
            let n = total - m;
            let g = gamma(m, n);
            let want: BTreeSet<Vec<usize>> = all_perms(total)
                .into_iter()
                .filter(|p| {
                    let cs = cycles(p);
                    let connects = cs.iter().any(|c| c.iter().any(|&x| x < m) && c.iter().any(|&x| x >= m));
                    connects && cs.len() + cycles(&compose(&g, &inverse(p))).len() == total
                })
                .collect();
            let listed = enum_snc(m, n).unwrap();
            let got: BTreeSet<Vec<usize>> = listed.iter().map(|a| a.perm.images()).collect();
            assert_eq!(got.len(), listed.len(), "duplicates at m={m} n={n}");
            assert_eq!(got, want, "m={m} n={n}");
        }
    }
}

#[test]
fn nc_counts_are_catalan_and_narayana() {
    let inv = family_table(Family::Pi, true, 9);
    for n in 1..=8 {
        let all = enum_nc(n).unwrap();
        // moments of the free Poisson law are the Narayana polynomials
        assert_eq!(weighted_count(&all, Weight::AllBlocks), *inv.entry(n, 0), "n={n}");
    }
}
