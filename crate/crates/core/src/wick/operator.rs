//! Operators on the truncated Fock space, applied rule by rule.

use num_complex::Complex64;

use super::algebra::Elem;
use super::fock::{Fock, FockVector};

#[derive(Clone, Debug)]
pub enum FockOperator {
    Scalar(Complex64),
    /// `p(d)`.
    P(Elem),
    /// `W(d_1 (x) .. (x) d_n)`, applied through the four-term recursion.
    Wick(Vec<Elem>),
    Sum(Vec<(Complex64, FockOperator)>),
    /// Factors left to right; the last acts first.
    Product(Vec<FockOperator>),
}

impl FockOperator {
    pub fn identity() -> Self {
        FockOperator::Scalar(Complex64::new(1.0, 0.0))
    }

    pub fn then(self, first: FockOperator) -> Self {
        match self {
            FockOperator::Product(mut fs) => {
                fs.push(first);
                FockOperator::Product(fs)
            }
            other => FockOperator::Product(vec![other, first]),
        }
    }

    pub fn scale(self, a: Complex64) -> Self {
        FockOperator::Sum(vec![(a, self)])
    }

    /// Largest possible raise in degree; the action is exact on degrees
    /// `<= L - degree`.
    pub fn degree(&self) -> usize {
        match self {
            FockOperator::Scalar(_) => 0,
            FockOperator::P(_) => 1,
            FockOperator::Wick(w) => w.len(),
            FockOperator::Sum(ts) => ts.iter().map(|t| t.1.degree()).max().unwrap_or(0),
            FockOperator::Product(fs) => fs.iter().map(|f| f.degree()).sum(),
        }
    }

    pub fn exact_degrees(&self, depth: usize) -> Option<std::ops::RangeInclusive<usize>> {
        depth.checked_sub(self.degree()).map(|top| 0..=top)
    }

    pub fn apply(&self, fock: &Fock, v: &FockVector) -> FockVector {
        match self {
            FockOperator::Scalar(z) => {
                let mut out = FockVector::zero(fock.alg.dim, fock.depth);
                out.add_scaled(*z, v);
                out
            }
            FockOperator::P(d) => fock.p(d, v),
            FockOperator::Wick(w) => apply_wick(fock, w, v),
            FockOperator::Sum(ts) => {
                let mut out = FockVector::zero(fock.alg.dim, fock.depth);
                for (z, op) in ts {
                    out.add_scaled(*z, &op.apply(fock, v));
                }
                out
            }
            FockOperator::Product(fs) => fs.iter().rev().fold(v.clone(), |x, f| f.apply(fock, &x)),
        }
    }
}

/// `W(d (x) d_1 (x) rest) = p(d) W(d_1 (x) rest) - psi(d d_1) W(rest)
///  - W((d d_1) (x) rest) - psi(d) W(d_1 (x) rest)`, with `W(d) = p(d) - psi(d)`.
fn apply_wick(fock: &Fock, word: &[Elem], v: &FockVector) -> FockVector {
    let alg = fock.alg;
    match word {
        [] => v.clone(),
        [d] => {
            let mut out = fock.p(d, v);
            out.add_scaled(-alg.psi(d), v);
            out
        }
        [d, d1, rest @ ..] => {
            let u = apply_wick(fock, &word[1..], v);
            let mut out = fock.p(d, &u);
            out.add_scaled(-alg.psi(d), &u);
            let dd1 = alg.mul(d, d1);
            out.add_scaled(-alg.psi(&dd1), &apply_wick(fock, rest, v));
            let mut merged = Vec::with_capacity(word.len() - 1);
            merged.push(dd1);
            merged.extend(rest.iter().cloned());
            out.add_scaled(Complex64::new(-1.0, 0.0), &apply_wick(fock, &merged, v));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wick::algebra::TracialAlgebra;

    #[test]
    fn composition_order() {
        let alg = TracialAlgebra::matrices(2);
        let f = Fock::new(&alg, 3);
        let e11: Elem = [1.0, 0.0, 0.0, 0.0].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let e12: Elem = [0.0, 1.0, 0.0, 0.0].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let ab = FockOperator::P(e11.clone()).then(FockOperator::P(e12.clone()));
        let direct = f.p(&e11, &f.p(&e12, &f.vacuum()));
        assert_eq!(ab.apply(&f, &f.vacuum()), direct);
        assert_eq!(ab.degree(), 2);
        assert_eq!(ab.exact_degrees(3), Some(0..=1));
    }
}
