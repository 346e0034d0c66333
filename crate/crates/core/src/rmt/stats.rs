//! Trace statistics and their exact large-N predictions.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::RmtError;
use crate::diagrams::colored::ColoredCounter;
use crate::diagrams::{enum_snc_capped, weighted_count, Weight};
use crate::polyalg::{family_table, transition_matrix, Family, PolyC, PolyXC, DEFAULT_TABLE_SIZE};

/// Matrix indices are 0-based here and 1-based in keys.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceStatistic {
    /// `Tr Gamma_n(X_i)`.
    GammaTrace { n: usize, i: usize },
    /// `Tr Pi_n(X_i)`.
    PiTrace { n: usize, i: usize },
    /// `Tr X_i^n`.
    PowerTrace { n: usize, i: usize },
    /// `Tr(Pi_{m_1}(X_{i_1}) .. Pi_{m_k}(X_{i_k}))`, stored as the canonical
    /// rotation.
    MixedTrace { m: Vec<usize>, i: Vec<usize> },
}

impl TraceStatistic {
    /// Checks the index sequence and rotates it to the canonical representative.
    pub fn mixed(m: Vec<usize>, i: Vec<usize>) -> Result<Self, RmtError> {
        let k = m.len();
        if k < 2 || i.len() != k {
            return Err(RmtError::Statistic(format!("mixed trace needs k >= 2 matching factors, got m={m:?} i={i:?}")));
        }
        if m.contains(&0) {
            return Err(RmtError::Statistic("mixed trace degrees must be positive".into()));
        }
        if (0..k).any(|r| i[r] == i[(r + 1) % k]) {
            return Err(RmtError::NotAlternating(i.iter().map(|x| x + 1).collect()));
        }
        let pairs: Vec<(usize, usize)> = m.into_iter().zip(i).collect();
        let best = (0..k).map(|l| rotate(&pairs, l)).min().expect("k >= 2");
        Ok(TraceStatistic::MixedTrace { m: best.iter().map(|x| x.0).collect(), i: best.iter().map(|x| x.1).collect() })
    }

    /// Rotations fixing the word; 1 for single-matrix statistics.
    pub fn symmetry(&self) -> usize {
        match self {
            TraceStatistic::MixedTrace { m, i } => {
                let pairs: Vec<(usize, usize)> = m.iter().copied().zip(i.iter().copied()).collect();
                (0..pairs.len()).filter(|&l| rotate(&pairs, l) == pairs).count()
            }
            _ => 1,
        }
    }

    pub fn key(&self) -> String {
        self.to_string()
    }

    pub fn matrices(&self) -> Vec<usize> {
        match self {
            TraceStatistic::GammaTrace { i, .. } | TraceStatistic::PiTrace { i, .. } | TraceStatistic::PowerTrace { i, .. } => {
                vec![*i]
            }
            TraceStatistic::MixedTrace { i, .. } => i.clone(),
        }
    }

    /// Largest polynomial degree involved.
    pub fn degree(&self) -> usize {
        match self {
            TraceStatistic::GammaTrace { n, .. } | TraceStatistic::PiTrace { n, .. } | TraceStatistic::PowerTrace { n, .. } => *n,
            TraceStatistic::MixedTrace { m, .. } => m.iter().copied().max().unwrap_or(0),
        }
    }

    /// Expansion into words `(coefficient, [(power, matrix)])` in powers of
    /// the matrices.
    pub fn words(&self) -> Vec<(PolyC, Vec<(usize, u8)>)> {
        let size = self.degree() + 1;
        let single = |fam: Option<Family>, n: usize, i: usize| -> Vec<(PolyC, Vec<(usize, u8)>)> {
            match fam {
                None => vec![(PolyC::one(), vec![(n, i as u8)])],
                Some(f) => {
                    let t = transition_matrix(f, size);
                    (0..=n).filter(|&u| !t.get(n, u).is_zero()).map(|u| (t.get(n, u), vec![(u, i as u8)])).collect()
                }
            }
        };
        match self {
            TraceStatistic::GammaTrace { n, i } => single(Some(Family::Gamma), *n, *i),
            TraceStatistic::PiTrace { n, i } => single(Some(Family::Pi), *n, *i),
            TraceStatistic::PowerTrace { n, i } => single(None, *n, *i),
            TraceStatistic::MixedTrace { m, i } => {
                let t = transition_matrix(Family::Pi, size);
                let mut out: Vec<(PolyC, Vec<(usize, u8)>)> = vec![(PolyC::one(), Vec::new())];
                for (&mr, &ir) in m.iter().zip(i) {
                    let mut next = Vec::new();
                    for (coef, w) in &out {
                        for u in 0..=mr {
                            let a = t.get(mr, u);
                            if a.is_zero() {
                                continue;
                            }
                            let mut w2 = w.clone();
                            w2.push((u, ir as u8));
                            next.push((coef * &a, w2));
                        }
                    }
                    out = next;
                }
                out
            }
        }
    }

    /// The polynomial applied to a single matrix; `None` for mixed traces.
    pub fn polynomial(&self) -> Option<PolyXC> {
        match self {
            TraceStatistic::MixedTrace { .. } => None,
            _ => {
                let mut coeffs = vec![PolyC::zero(); self.degree() + 1];
                for (a, w) in self.words() {
                    coeffs[w[0].0] = a;
                }
                Some(PolyXC::from_coeffs(coeffs))
            }
        }
    }
}

fn rotate<T: Clone>(v: &[T], l: usize) -> Vec<T> {
    v[l..].iter().chain(&v[..l]).cloned().collect()
}

impl fmt::Display for TraceStatistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceStatistic::GammaTrace { n, i } => write!(f, "gamma[{n}](X{})", i + 1),
            TraceStatistic::PiTrace { n, i } => write!(f, "pi[{n}](X{})", i + 1),
            TraceStatistic::PowerTrace { n, i } => write!(f, "tr[X{}^{n}]", i + 1),
            TraceStatistic::MixedTrace { m, i } => {
                let ms: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                let is: Vec<String> = i.iter().map(|x| (x + 1).to_string()).collect();
                write!(f, "S[{}:{}]", ms.join(","), is.join(","))
            }
        }
    }
}

/// Limit of `kappa_2(Tr X^m, Tr X^n)`: annular permutations weighted by blocks.
pub fn predict_covariance(m: usize, n: usize, cap: usize) -> Result<PolyC, RmtError> {
    Ok(weighted_count(&enum_snc_capped(m, n, cap)?, Weight::AllBlocks))
}

/// Exact large-N covariances from annular enumeration of the word expansions.
pub struct Predictor {
    counter: ColoredCounter,
    moments: Vec<PolyC>,
}

impl Predictor {
    pub fn new(cap: usize) -> Self {
        let inv = family_table(Family::Pi, true, DEFAULT_TABLE_SIZE);
        let moments = (0..DEFAULT_TABLE_SIZE).map(|n| inv.get(n, 0)).collect();
        Predictor { counter: ColoredCounter::new(cap), moments }
    }

    /// Limit of `E[A conj(B)] - E[A] conj(E[B])`. The conjugate of a trace
    /// of a product of Hermitian factors is the trace of the reversed product.
    pub fn covariance(&mut self, a: &TraceStatistic, b: &TraceStatistic) -> Result<PolyC, RmtError> {
        let wa = a.words();
        let wb = b.words();
        let mut total = PolyC::zero();
        for (ca, xa) in &wa {
            for (cb, xb) in &wb {
                let rev: Vec<(usize, u8)> = xb.iter().rev().copied().collect();
                let w = self.counter.weight(xa, &rev)?;
                if !w.is_zero() {
                    total += ca * cb * w;
                }
            }
        }
        Ok(total)
    }

    /// `(N-coefficient, c'-coefficient)` of the mean of a single-matrix
    /// statistic: `E Tr X^u = N m_u(c) + c' m_u'(c) + o(1)`. Mixed traces
    /// are centred.
    pub fn mean(&self, s: &TraceStatistic) -> Result<(PolyC, PolyC), RmtError> {
        if let TraceStatistic::MixedTrace { .. } = s {
            return Ok((PolyC::zero(), PolyC::zero()));
        }
        let mut lead = PolyC::zero();
        let mut second = PolyC::zero();
        for (a, w) in s.words() {
            let u = w[0].0;
            let mu = self.moments.get(u).ok_or(RmtError::TooLarge(u, DEFAULT_TABLE_SIZE - 1))?;
            lead += &a * mu;
            second += &a * &mu.derivative();
        }
        Ok((lead, second))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_rotation() {
        let a = TraceStatistic::mixed(vec![2, 1], vec![1, 0]).unwrap();
        let b = TraceStatistic::mixed(vec![1, 2], vec![0, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.key(), "S[1,2:1,2]");
        assert_eq!(TraceStatistic::mixed(vec![1, 1, 1, 1], vec![0, 1, 0, 1]).unwrap().symmetry(), 2);
        assert!(matches!(TraceStatistic::mixed(vec![1, 1], vec![0, 0]), Err(RmtError::NotAlternating(_))));
        assert!(TraceStatistic::mixed(vec![1, 1, 1], vec![0, 1, 0]).is_err());
    }

    #[test]
    fn gamma_predictions_diagonal() {
        let mut p = Predictor::new(12);
        for m in 1..=3 {
            for n in 1..=3 {
                let a = TraceStatistic::GammaTrace { n: m, i: 0 };
                let b = TraceStatistic::GammaTrace { n, i: 0 };
                let want = if m == n { PolyC::monomial(m as i64, m) } else { PolyC::zero() };
                assert_eq!(p.covariance(&a, &b).unwrap(), want, "{m} {n}");
                let other = TraceStatistic::GammaTrace { n, i: 1 };
                assert!(p.covariance(&a, &other).unwrap().is_zero());
            }
            let (lead, second) = p.mean(&TraceStatistic::GammaTrace { n: m, i: 0 }).unwrap();
            assert!(lead.is_zero());
            // E Tr Gamma_1(X) = M - cN exactly, so the sign starts positive
            assert_eq!(second, PolyC::from_int(if m % 2 == 1 { 1 } else { -1 }));
        }
    }

    #[test]
    fn pi_means_follow_parity() {
        let p = Predictor::new(12);
        for n in 1..=5 {
            let (lead, second) = p.mean(&TraceStatistic::PiTrace { n, i: 0 }).unwrap();
            assert!(lead.is_zero());
            let want = if n % 2 == 1 { PolyC::monomial(1, n / 2) } else { PolyC::zero() };
            assert_eq!(second, want, "n={n}");
        }
    }

    #[test]
    fn mixed_variance_counts_symmetries() {
        let mut p = Predictor::new(12);
        let cases = [(vec![1, 1], vec![0, 1]), (vec![1, 2], vec![0, 1]), (vec![1, 1, 1], vec![0, 1, 2]), (vec![1, 1, 1, 1], vec![0, 1, 0, 1])];
        for (m, i) in cases {
            let s = TraceStatistic::mixed(m.clone(), i).unwrap();
            let v = p.covariance(&s, &s).unwrap();
            let total: usize = m.iter().sum();
            assert_eq!(v, PolyC::monomial(s.symmetry() as i64, total), "{s}");
            let g = TraceStatistic::GammaTrace { n: 2, i: 0 };
            assert!(p.covariance(&s, &g).unwrap().is_zero());
        }
    }

    #[test]
    fn raw_covariance_small() {
        assert_eq!(predict_covariance(1, 1, 12).unwrap(), PolyC::c());
        let mut p = Predictor::new(12);
        let a = TraceStatistic::PowerTrace { n: 2, i: 0 };
        let b = TraceStatistic::PowerTrace { n: 1, i: 0 };
        assert_eq!(p.covariance(&a, &b).unwrap(), predict_covariance(2, 1, 12).unwrap());
    }
}
