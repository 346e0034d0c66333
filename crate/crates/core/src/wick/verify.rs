//! Numerical checks of the decomposition, adjoint and product identities on
//! the subspace where truncation is exact.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::algebra::{Elem, TracialAlgebra};
use super::fock::{Fock, FockVector};
use super::operator::FockOperator;
use super::products::{convolution, prepend, w_pi, w_set, wick, Prepend};
use super::WickError;
use crate::check::CheckReport;
use crate::diagrams::{enum_ncl, LinearHalfPerm};

/// Relative tolerance for operator identities.
pub const WICK_TOL: f64 = 1e-9;

/// Degrees up to this are probed with every basis word; higher degrees with
/// random vectors.
const FULL_BASIS_DEGREE: usize = 3;
const RANDOM_PROBES: usize = 3;

/// Every element of `NCL(n)`, all open-block counts.
pub fn ncl_all(n: usize) -> Result<Vec<LinearHalfPerm>, WickError> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(enum_ncl(n, k)?);
    }
    Ok(out)
}

/// Test vectors spanning degrees `0..=top`: basis words at low degree, random
/// vectors of a single degree above.
fn probes(fock: &Fock, top: usize, seed: u64) -> Vec<FockVector> {
    let dim = fock.alg.dim;
    let mut out = FockVector::basis_up_to(dim, fock.depth, top.min(FULL_BASIS_DEGREE));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for r in FULL_BASIS_DEGREE + 1..=top {
        for _ in 0..RANDOM_PROBES {
            let mut v = FockVector::zero(dim, fock.depth);
            for z in v.blocks[r].iter_mut() {
                *z = Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng));
            }
            out.push(v);
        }
    }
    out
}

fn safe_top(fock: &Fock, ops: &[&FockOperator]) -> Result<usize, WickError> {
    let g = ops.iter().map(|o| o.degree()).max().unwrap_or(0);
    fock.depth.checked_sub(g).ok_or(WickError::TooDeep { len: g, depth: fock.depth })
}

/// Largest coefficient of `(A - B) v` over the probes, relative to the largest
/// coefficient of `A v` or `B v`.
pub fn operator_residual(fock: &Fock, a: &FockOperator, b: &FockOperator, seed: u64) -> Result<f64, WickError> {
    let top = safe_top(fock, &[a, b])?;
    let mut diff = 0.0f64;
    let mut scale = 0.0f64;
    for v in probes(fock, top, seed) {
        let x = a.apply(fock, &v);
        let y = b.apply(fock, &v);
        if x.truncated || y.truncated {
            return Err(WickError::Truncated);
        }
        diff = diff.max(x.max_diff(&y));
        scale = scale.max(x.max_abs()).max(y.max_abs());
    }
    Ok(diff / scale.max(1.0))
}

/// `max |<A x, y> - <x, B y>|` over probe pairs, relative to the largest pairing.
pub fn adjoint_residual(fock: &Fock, a: &FockOperator, b: &FockOperator, seed: u64) -> Result<f64, WickError> {
    let top = safe_top(fock, &[a, b])?;
    let vs = probes(fock, top, seed);
    let av: Vec<FockVector> = vs.iter().map(|v| a.apply(fock, v)).collect();
    let bv: Vec<FockVector> = vs.iter().map(|v| b.apply(fock, v)).collect();
    if av.iter().chain(&bv).any(|v| v.truncated) {
        return Err(WickError::Truncated);
    }
    let mut diff = 0.0f64;
    let mut scale = 0.0f64;
    for (x, ax) in vs.iter().zip(&av) {
        for (y, by) in vs.iter().zip(&bv) {
            let l = fock.inner(ax, y);
            let r = fock.inner(x, by);
            diff = diff.max((l - r).norm());
            scale = scale.max(l.norm()).max(r.norm());
        }
    }
    Ok(diff / scale.max(1.0))
}

fn product_of_p(word: &[Elem]) -> FockOperator {
    FockOperator::Product(word.iter().map(|d| FockOperator::P(d.clone())).collect())
}

fn label(alg: &TracialAlgebra, what: impl std::fmt::Display) -> String {
    format!("{} {what}", alg.name)
}

/// Part (b) for the whole word, part (a) for its first letter against every
/// `pi` on the rest, and the four-way split as a bijection.
pub fn verify_decomposition(alg: &TracialAlgebra, word: &[Elem], depth: usize, seed: u64) -> Result<CheckReport, WickError> {
    let n = word.len();
    if n == 0 || n + 1 > depth {
        return Err(WickError::TooDeep { len: n + 1, depth });
    }
    let fock = Fock::new(alg, depth);
    let mut rep = CheckReport::new("wick-decomposition");
    let lhs = product_of_p(word);
    let rhs = w_set(alg, &ncl_all(n)?, word, depth)?;
    rep.residual("wickdecomposition-b", label(alg, format!("n={n}")), operator_residual(&fock, &lhs, &rhs, seed)?, WICK_TOL);

    if n >= 2 {
        let mut worst = 0.0f64;
        for pi in ncl_all(n - 1)? {
            let lhs = FockOperator::P(word[0].clone()).then(w_pi(alg, &pi, &word[1..], depth)?);
            let images: Vec<LinearHalfPerm> =
                Prepend::ALL.iter().filter_map(|&c| prepend(c, &pi).transpose()).collect::<Result<_, _>>()?;
            let rhs = w_set(alg, &images, word, depth)?;
            worst = worst.max(operator_residual(&fock, &lhs, &rhs, seed)?);
        }
        rep.residual("wickdecomposition-a", label(alg, format!("n={n}")), worst, WICK_TOL);
    }
    Ok(rep)
}

/// Every element of `NCL(n + 1)` arises from exactly one `pi` in `NCL(n)`
/// and one of the four cases.
pub fn prepend_bijection(n: usize) -> Result<(bool, usize, usize), WickError> {
    let mut images = Vec::new();
    for pi in ncl_all(n)? {
        for c in Prepend::ALL {
            if let Some(x) = prepend(c, &pi)? {
                images.push(x);
            }
        }
    }
    let total = images.len();
    images.sort();
    images.dedup();
    let mut target = ncl_all(n + 1)?;
    target.sort();
    Ok((total == target.len() && images == target, total, target.len()))
}

/// `W(word)^* = W(reversed starred word)`, and `p(d)^* = p(d^*)` for each letter.
pub fn verify_adjoints(alg: &TracialAlgebra, word: &[Elem], depth: usize, seed: u64) -> Result<CheckReport, WickError> {
    let fock = Fock::new(alg, depth);
    let mut rep = CheckReport::new("wick-adjoints");
    let rev: Vec<Elem> = word.iter().rev().map(|d| alg.star(d)).collect();
    let r = adjoint_residual(&fock, &wick(word, depth)?, &wick(&rev, depth)?, seed)?;
    rep.residual("wickadjoints", label(alg, format!("n={}", word.len())), r, WICK_TOL);
    let mut worst = 0.0f64;
    for d in word {
        worst = worst.max(adjoint_residual(&fock, &FockOperator::P(d.clone()), &FockOperator::P(alg.star(d)), seed)?);
    }
    rep.residual("p-adjoint", label(alg, format!("n={}", word.len())), worst, WICK_TOL);
    Ok(rep)
}

/// `W_pi(d) W_sigma(e) = sum over pi * sigma of W_tau(d (x) e)`, and the size
/// of the convolution.
pub fn verify_product(
    alg: &TracialAlgebra,
    pi: &LinearHalfPerm,
    sigma: &LinearHalfPerm,
    d: &[Elem],
    e: &[Elem],
    depth: usize,
    seed: u64,
) -> Result<CheckReport, WickError> {
    if d.len() + e.len() + 1 > depth {
        return Err(WickError::TooDeep { len: d.len() + e.len() + 1, depth });
    }
    let fock = Fock::new(alg, depth);
    let mut rep = CheckReport::new("wick-product");
    let name = label(alg, format!("{pi} * {sigma}"));
    let conv = convolution(pi, sigma)?;
    rep.eq("convolution-size", name.clone(), &conv.len(), &(2 * pi.k().min(sigma.k()) + 1));
    let lhs = w_pi(alg, pi, d, depth)?.then(w_pi(alg, sigma, e, depth)?);
    let mut de = d.to_vec();
    de.extend(e.iter().cloned());
    let rhs = w_set(alg, &conv, &de, depth)?;
    rep.residual("wicktheorem", name, operator_residual(&fock, &lhs, &rhs, seed)?, WICK_TOL);
    Ok(rep)
}

/// `W(word) Omega = word`.
pub fn verify_defining(alg: &TracialAlgebra, word: &[Elem], depth: usize) -> Result<CheckReport, WickError> {
    let fock = Fock::new(alg, depth);
    let mut rep = CheckReport::new("wick-defining");
    let got = wick(word, depth)?.apply(&fock, &fock.vacuum());
    let want = fock.word(word);
    let r = got.max_diff(&want) / want.max_abs().max(1.0);
    rep.residual("wick-vacuum", label(alg, format!("n={}", word.len())), r, 1e-10);
    Ok(rep)
}

fn letters(alg: &TracialAlgebra, n: usize, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    (0..n).map(|_| alg.random(rng)).collect()
}

/// The full suite over the given algebras: words up to `max_len`, products for
/// all `pi`, `sigma` with `m + n <= depth - 1`, the figure instances and the
/// combinatorial checks.
pub fn wick_suite(algebras: &[TracialAlgebra], depth: usize, max_len: usize, seed: u64) -> Result<CheckReport, WickError> {
    let mut rep = CheckReport::new("wick");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for alg in algebras {
        for n in 0..=depth {
            rep.extend(verify_defining(alg, &letters(alg, n, &mut rng), depth)?);
        }
        for n in 1..=max_len.min(depth - 1) {
            let w = letters(alg, n, &mut rng);
            rep.extend(verify_decomposition(alg, &w, depth, seed)?);
            rep.extend(verify_adjoints(alg, &w, depth, seed)?);
        }
        for m in 1..=max_len {
            for n in 1..=max_len {
                if m + n + 1 > depth {
                    continue;
                }
                for pi in ncl_all(m)? {
                    for sigma in ncl_all(n)? {
                        let d = letters(alg, m, &mut rng);
                        let e = letters(alg, n, &mut rng);
                        rep.extend(verify_product(alg, &pi, &sigma, &d, &e, depth, seed)?);
                    }
                }
            }
        }
    }
    rep.extend(combinatorics_suite(depth)?);
    Ok(rep)
}

/// Convolution sizes and validity, the four-way split, and the figure
/// instances that need no algebra.
pub fn combinatorics_suite(max_n: usize) -> Result<CheckReport, WickError> {
    let mut rep = CheckReport::new("wick-combinatorics");
    for m in 1..=4 {
        for n in 1..=4 {
            let mut ok = true;
            for pi in ncl_all(m)? {
                for sigma in ncl_all(n)? {
                    let c = convolution(&pi, &sigma)?;
                    let mut d = c.clone();
                    d.sort();
                    d.dedup();
                    ok &= c.len() == 2 * pi.k().min(sigma.k()) + 1 && d.len() == c.len() && c.iter().all(|t| t.n() == m + n);
                }
            }
            rep.record("convolution-size", format!("m={m} n={n}"), ok);
        }
    }
    for n in 1..=max_n {
        let (ok, total, want) = prepend_bijection(n)?;
        rep.record("four-way-split", format!("n={n}: {total} images onto {want}"), ok);
    }
    let pi = fig_perm(5, &[&[1, 2], &[3, 4], &[5]], &[1, 5])?;
    let sigma = fig_perm(6, &[&[1, 2], &[3], &[4], &[5, 6]], &[1, 4, 5])?;
    let concat = convolution(&pi, &sigma)?[0].to_string();
    rep.eq("fig-concatenation", "(1,2)*(3,4)(5)* v0 (1,2)*(3)(4)*(5,6)*", &concat, &"(1,2)*(3,4)(5)*(6,7)*(8)(9)*(10,11)*".to_string());
    Ok(rep)
}

/// 1-based blocks and open members.
pub fn fig_perm(n: usize, blocks: &[&[usize]], open: &[usize]) -> Result<LinearHalfPerm, WickError> {
    let b: Vec<Vec<usize>> = blocks.iter().map(|x| x.iter().map(|y| y - 1).collect()).collect();
    let o: Vec<usize> = open.iter().map(|y| y - 1).collect();
    Ok(LinearHalfPerm::from_blocks(n, &b, &o)?)
}

/// Two open singletons convolved with themselves: five terms.
pub fn figure_product(alg: &TracialAlgebra, depth: usize, seed: u64) -> Result<CheckReport, WickError> {
    let pi = fig_perm(2, &[&[1], &[2]], &[1, 2])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = letters(alg, 2, &mut rng);
    let e = letters(alg, 2, &mut rng);
    let mut rep = verify_product(alg, &pi, &pi, &d, &e, depth, seed)?;
    rep.suite = "wick-figure".into();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_small() {
        let alg = TracialAlgebra::matrices(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=3 {
            let w = letters(&alg, n, &mut rng);
            let rep = verify_decomposition(&alg, &w, 4, 1).unwrap();
            assert!(rep.all_pass(), "{}", rep.summary());
        }
    }

    #[test]
    fn a_wrong_identity_is_caught() {
        // dropping one term of the decomposition must fail
        let alg = TracialAlgebra::matrices(2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let w = letters(&alg, 2, &mut rng);
        let fock = Fock::new(&alg, 4);
        let mut set = ncl_all(2).unwrap();
        set.pop();
        let rhs = w_set(&alg, &set, &w, 4).unwrap();
        let r = operator_residual(&fock, &product_of_p(&w), &rhs, 1).unwrap();
        assert!(r > 1e-3);
    }

    #[test]
    fn bijection_counts() {
        for n in 1..=5 {
            let (ok, total, want) = prepend_bijection(n).unwrap();
            assert!(ok, "n={n} {total} {want}");
        }
    }

    #[test]
    fn figure_product_has_five_terms() {
        let rep = figure_product(&TracialAlgebra::matrices(2), 5, 7).unwrap();
        assert!(rep.all_pass(), "{}", rep.summary());
    }

    #[test]
    fn scalar_suite() {
        let rep = wick_suite(&[TracialAlgebra::scalars()], 4, 2, 9).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
    }
}
