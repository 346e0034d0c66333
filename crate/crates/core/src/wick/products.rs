//! Wick products `W`, `W_pi`, the convolution of linear half-permutations and
//! the four ways of adding a point on the left.

use num_complex::Complex64;

use super::algebra::{Elem, TracialAlgebra};
use super::operator::FockOperator;
use super::WickError;
use crate::diagrams::LinearHalfPerm;

/// `W(d_1 (x) .. (x) d_n)`, the polynomial in the `p(d)` with
/// `W(word) Omega = word`.
pub fn wick(word: &[Elem], depth: usize) -> Result<FockOperator, WickError> {
    if word.len() > depth {
        return Err(WickError::TooDeep { len: word.len(), depth });
    }
    Ok(FockOperator::Wick(word.to_vec()))
}

/// Closed blocks contribute `psi` of their product in cycle order; open
/// blocks, ordered by smallest element, become the letters of `W`.
pub fn w_pi(alg: &TracialAlgebra, pi: &LinearHalfPerm, word: &[Elem], depth: usize) -> Result<FockOperator, WickError> {
    if pi.n() != word.len() {
        return Err(WickError::SizeMismatch(pi.n(), word.len()));
    }
    let (scalar, letters) = w_pi_parts(alg, pi, word);
    Ok(wick(&letters, depth)?.scale(scalar))
}

fn w_pi_parts(alg: &TracialAlgebra, pi: &LinearHalfPerm, word: &[Elem]) -> (Complex64, Vec<Elem>) {
    let mut scalar = Complex64::new(1.0, 0.0);
    let mut open = Vec::new();
    for (block, is_open) in pi.blocks() {
        let cycle = cycle_from(pi, block[0]);
        let factors: Vec<&Elem> = cycle.iter().map(|&x| &word[x]).collect();
        if is_open {
            open.push((block[0], alg.product(&factors)));
        } else {
            scalar *= alg.psi_product(&factors);
        }
    }
    open.sort_by_key(|o| o.0);
    (scalar, open.into_iter().map(|o| o.1).collect())
}

fn cycle_from(pi: &LinearHalfPerm, start: usize) -> Vec<usize> {
    let mut c = vec![start];
    let mut x = pi.perm().apply(start);
    while x != start {
        c.push(x);
        x = pi.perm().apply(x);
    }
    c
}

/// Sum of `W_pi` over a set.
pub fn w_set(alg: &TracialAlgebra, set: &[LinearHalfPerm], word: &[Elem], depth: usize) -> Result<FockOperator, WickError> {
    let terms = set.iter().map(|pi| Ok((Complex64::new(1.0, 0.0), w_pi(alg, pi, word, depth)?))).collect::<Result<_, WickError>>()?;
    Ok(FockOperator::Sum(terms))
}

fn blocks_with_flags(pi: &LinearHalfPerm, shift: usize) -> Vec<(Vec<usize>, bool)> {
    pi.blocks().into_iter().map(|(b, o)| (b.into_iter().map(|x| x + shift).collect(), o)).collect()
}

fn assemble(n: usize, blocks: Vec<(Vec<usize>, bool)>) -> Result<LinearHalfPerm, WickError> {
    let open: Vec<usize> = blocks.iter().filter(|b| b.1).map(|b| b.0[0]).collect();
    let mut plain: Vec<Vec<usize>> = blocks.into_iter().map(|mut b| {
        b.0.sort_unstable();
        b.0
    }).collect();
    plain.sort();
    Ok(LinearHalfPerm::from_blocks(n, &plain, &open)?)
}

/// `pi * sigma`: the concatenation, then for `r = 1..min(j, k)` the joins of
/// the `r` innermost pairs of facing open blocks with the last pair left open
/// and then closed.
pub fn convolution(pi: &LinearHalfPerm, sigma: &LinearHalfPerm) -> Result<Vec<LinearHalfPerm>, WickError> {
    let (m, n) = (pi.n(), sigma.n());
    let left = blocks_with_flags(pi, 0);
    let right = blocks_with_flags(sigma, m);
    let mut lo: Vec<usize> = (0..left.len()).filter(|&i| left[i].1).collect();
    lo.sort_by_key(|&i| left[i].0[0]);
    let mut ro: Vec<usize> = (0..right.len()).filter(|&i| right[i].1).collect();
    ro.sort_by_key(|&i| right[i].0[0]);
    let l = lo.len().min(ro.len());

    let build = |r: usize, last_open: bool| -> Result<LinearHalfPerm, WickError> {
        let mut joined_l = vec![false; left.len()];
        let mut joined_r = vec![false; right.len()];
        let mut blocks = Vec::new();
        for t in 0..r {
            let a = lo[lo.len() - 1 - t];
            let b = ro[t];
            let mut block = left[a].0.clone();
            block.extend(&right[b].0);
            joined_l[a] = true;
            joined_r[b] = true;
            blocks.push((block, last_open && t == r - 1));
        }
        blocks.extend(left.iter().enumerate().filter(|(i, _)| !joined_l[*i]).map(|(_, b)| b.clone()));
        blocks.extend(right.iter().enumerate().filter(|(i, _)| !joined_r[*i]).map(|(_, b)| b.clone()));
        assemble(m + n, blocks)
    };

    let mut out = vec![build(0, false)?];
    for r in 1..=l {
        out.push(build(r, true)?);
        out.push(build(r, false)?);
    }
    Ok(out)
}

/// How a new point 0 enters a half-permutation on `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prepend {
    /// Open singleton.
    OpenSingleton,
    /// Joined to the first open block, which becomes closed.
    JoinClosed,
    /// Joined to the first open block, which stays open.
    JoinOpen,
    /// Closed singleton.
    ClosedSingleton,
}

impl Prepend {
    pub const ALL: [Prepend; 4] = [Prepend::OpenSingleton, Prepend::JoinClosed, Prepend::JoinOpen, Prepend::ClosedSingleton];
}

/// `None` when a join is asked for and there is no open block. "First" is the
/// open block with the smallest element.
pub fn prepend(case: Prepend, pi: &LinearHalfPerm) -> Result<Option<LinearHalfPerm>, WickError> {
    let n = pi.n();
    let mut blocks = blocks_with_flags(pi, 1);
    match case {
        Prepend::OpenSingleton => blocks.push((vec![0], true)),
        Prepend::ClosedSingleton => blocks.push((vec![0], false)),
        Prepend::JoinClosed | Prepend::JoinOpen => {
            let Some(first) = blocks.iter_mut().filter(|b| b.1).min_by_key(|b| b.0[0]) else {
                return Ok(None);
            };
            first.0.insert(0, 0);
            first.1 = case == Prepend::JoinOpen;
        }
    }
    assemble(n + 1, blocks).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::enum_ncl;
    use crate::wick::fock::Fock;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lhp(n: usize, blocks: &[&[usize]], open: &[usize]) -> LinearHalfPerm {
        let b: Vec<Vec<usize>> = blocks.iter().map(|x| x.iter().map(|y| y - 1).collect()).collect();
        let o: Vec<usize> = open.iter().map(|y| y - 1).collect();
        LinearHalfPerm::from_blocks(n, &b, &o).unwrap()
    }

    #[test]
    fn wick_reproduces_words() {
        let alg = TracialAlgebra::matrices(2);
        let f = Fock::new(&alg, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 0..=4 {
            let word: Vec<Elem> = (0..n).map(|_| alg.random(&mut rng)).collect();
            let w = wick(&word, 4).unwrap();
            let got = w.apply(&f, &f.vacuum());
            let want = f.word(&word);
            assert!(got.max_diff(&want) <= 1e-10 * want.max_abs().max(1.0), "n={n}");
            assert!(!got.truncated);
        }
        assert!(matches!(wick(&vec![alg.unit.clone(); 5], 4), Err(WickError::TooDeep { .. })));
    }

    #[test]
    fn w_pi_example() {
        // (1,2)*(3)(4)*(5,6)
        let pi = lhp(6, &[&[1, 2], &[3], &[4], &[5, 6]], &[1, 4]);
        let alg = TracialAlgebra::matrices(2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let d: Vec<Elem> = (0..6).map(|_| alg.random(&mut rng)).collect();
        let (s, letters) = w_pi_parts(&alg, &pi, &d);
        let want_s = alg.psi(&d[2]) * alg.psi(&alg.mul(&d[4], &d[5]));
        assert!((s - want_s).norm() < 1e-12);
        assert_eq!(letters, vec![alg.mul(&d[0], &d[1]), d[3].clone()]);
    }

    #[test]
    fn concatenation_figure() {
        let pi = lhp(5, &[&[1, 2], &[3, 4], &[5]], &[1, 5]);
        let sigma = lhp(6, &[&[1, 2], &[3], &[4], &[5, 6]], &[1, 4, 5]);
        let conv = convolution(&pi, &sigma).unwrap();
        assert_eq!(conv.len(), 5);
        assert_eq!(conv[0].to_string(), "(1,2)*(3,4)(5)*(6,7)*(8)(9)*(10,11)*");
        // innermost pair (5) with (6,7), then (1,2) with (9)
        assert_eq!(conv[1].to_string(), "(1,2)*(3,4)(5,6,7)*(8)(9)*(10,11)*");
        assert_eq!(conv[4].to_string(), "(1,2,9)(3,4)(5,6,7)(8)(10,11)*");
    }

    #[test]
    fn convolution_sizes() {
        for m in 1..=3 {
            for n in 1..=3 {
                for j in 0..=m {
                    for k in 0..=n {
                        for pi in enum_ncl(m, j).unwrap() {
                            for sigma in enum_ncl(n, k).unwrap() {
                                let c = convolution(&pi, &sigma).unwrap();
                                assert_eq!(c.len(), 2 * j.min(k) + 1);
                                let mut d = c.clone();
                                d.sort();
                                d.dedup();
                                assert_eq!(d.len(), c.len());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn prepend_cases() {
        let pi = lhp(3, &[&[1], &[2, 3]], &[1, 2]);
        let got: Vec<String> =
            Prepend::ALL.iter().map(|&c| prepend(c, &pi).unwrap().unwrap().to_string()).collect();
        assert_eq!(got, ["(1)*(2)*(3,4)*", "(1,2)(3,4)*", "(1,2)*(3,4)*", "(1)(2)*(3,4)*"]);
        let closed = lhp(1, &[&[1]], &[]);
        assert!(prepend(Prepend::JoinOpen, &closed).unwrap().is_none());
    }
}
