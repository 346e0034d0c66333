//! Chebyshev families and their shifted versions, built from three-term
//! recurrences so coefficients stay in Z[c].

use serde::{Deserialize, Serialize};

use super::{PolyC, PolyXC, TransitionMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    GammaTilde,
    Gamma,
    Pi,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::GammaTilde => "gamma-tilde",
            Family::Gamma => "gamma",
            Family::Pi => "pi",
        }
    }

    /// First `len` members.
    pub fn sequence(self, len: usize) -> Vec<PolyXC> {
        match self {
            Family::GammaTilde => gamma_tilde_seq(len),
            Family::Gamma => gamma_seq(len),
            Family::Pi => pi_seq(len),
        }
    }
}

fn one_plus_c() -> PolyC {
    PolyC::from_ints(&[1, 1])
}

/// Runs `F_{n+1} = (x - a) F_n - b_n F_{n-1}` from the given seeds.
fn three_term(len: usize, f0: PolyXC, f1: PolyXC, a: PolyC, b: impl Fn(usize) -> PolyC) -> Vec<PolyXC> {
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    out.push(f0);
    if len == 1 {
        return out;
    }
    out.push(f1);
    let shift = PolyXC::x_minus(a);
    for n in 1..len - 1 {
        let next = &(&shift * &out[n]) - &out[n - 1].scale(&b(n));
        out.push(next);
    }
    out
}

fn chebyshev_c_seq(len: usize) -> Vec<PolyXC> {
    three_term(len, PolyXC::one(), PolyXC::x(), PolyC::zero(), |n| {
        PolyC::from_int(if n == 1 { 2 } else { 1 })
    })
}

fn chebyshev_s_seq(len: usize) -> Vec<PolyXC> {
    three_term(len, PolyXC::one(), PolyXC::x(), PolyC::zero(), |_| PolyC::one())
}

fn gamma_tilde_seq(len: usize) -> Vec<PolyXC> {
    three_term(
        len,
        PolyXC::one(),
        PolyXC::x_minus(one_plus_c()),
        one_plus_c(),
        |n| if n == 1 { PolyC::from_ints(&[0, 2]) } else { PolyC::c() },
    )
}

fn gamma_seq(len: usize) -> Vec<PolyXC> {
    let d = ConstantsCD;
    gamma_tilde_seq(len)
        .into_iter()
        .enumerate()
        .map(|(n, g)| if n == 0 { PolyXC::one() } else { &g + &PolyXC::constant(d.d(n)) })
        .collect()
}

fn pi_seq(len: usize) -> Vec<PolyXC> {
    three_term(len, PolyXC::one(), PolyXC::x_minus(PolyC::c()), one_plus_c(), |_| PolyC::c())
}

/// Rescaled Chebyshev polynomial of the first kind, `C_n(x) = 2 T_n(x/2)`, `C_0 = 1`.
pub fn chebyshev_c(n: usize) -> PolyXC {
    chebyshev_c_seq(n + 1).pop().unwrap()
}

/// Rescaled Chebyshev polynomial of the second kind, `S_n(x) = U_n(x/2)`.
pub fn chebyshev_s(n: usize) -> PolyXC {
    chebyshev_s_seq(n + 1).pop().unwrap()
}

pub fn gamma_tilde(n: usize) -> PolyXC {
    gamma_tilde_seq(n + 1).pop().unwrap()
}

/// `gamma_tilde(n) + d_n` for `n >= 1`; `gamma(0)` is 1.
pub fn gamma(n: usize) -> PolyXC {
    gamma_seq(n + 1).pop().unwrap()
}

pub fn pi_poly(n: usize) -> PolyXC {
    pi_seq(n + 1).pop().unwrap()
}

/// The shift constants `d_0 = -1`, `d_1 = 1`, `d_n = (-1)^n (c - 1)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ConstantsCD;

impl ConstantsCD {
    pub fn d(&self, n: usize) -> PolyC {
        match n {
            0 => PolyC::from_int(-1),
            1 => PolyC::one(),
            _ if n % 2 == 0 => PolyC::from_ints(&[-1, 1]),
            _ => PolyC::from_ints(&[1, -1]),
        }
    }

    pub fn first(&self, len: usize) -> Vec<PolyC> {
        (0..len).map(|n| self.d(n)).collect()
    }
}

/// Row `n` holds the `x`-coefficients of the `n`-th member of `family`.
pub fn transition_matrix(family: Family, size: usize) -> TransitionMatrix {
    let rows = family
        .sequence(size)
        .iter()
        .enumerate()
        .map(|(n, p)| (0..=n).map(|k| p.coeff(k)).collect())
        .collect();
    TransitionMatrix::from_rows(rows).expect("family rows are lower triangular")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xc(rows: &[&[i64]]) -> PolyXC {
        PolyXC::from_coeffs(rows.iter().map(|r| PolyC::from_ints(r)).collect())
    }

    #[test]
    fn chebyshev_small() {
        assert_eq!(chebyshev_c(0), PolyXC::one());
        assert_eq!(chebyshev_c(2), xc(&[&[-2], &[], &[1]]));
        assert_eq!(chebyshev_c(3), xc(&[&[], &[-3], &[], &[1]]));
        assert_eq!(chebyshev_s(1), PolyXC::x());
        assert_eq!(chebyshev_s(2), xc(&[&[-1], &[], &[1]]));
        assert_eq!(chebyshev_s(3), xc(&[&[], &[-2], &[], &[1]]));
    }

    #[test]
    fn chebyshev_recurrences() {
        let cs = chebyshev_c_seq(12);
        let ss = chebyshev_s_seq(12);
        for n in 2..11 {
            assert_eq!(cs[n].mul_x(), &cs[n + 1] + &cs[n - 1]);
            assert_eq!(ss[n].mul_x(), &ss[n + 1] + &ss[n - 1]);
        }
    }

    #[test]
    fn shifted_small() {
        assert_eq!(gamma_tilde(1), xc(&[&[-1, -1], &[1]]));
        assert_eq!(gamma_tilde(2), xc(&[&[1, 0, 1], &[-2, -2], &[1]]));
        assert_eq!(gamma_tilde(3), xc(&[&[-1, 0, 0, -1], &[3, 3, 3], &[-3, -3], &[1]]));
        assert_eq!(gamma(0), PolyXC::one());
        assert_eq!(gamma(1), xc(&[&[0, -1], &[1]]));
        assert_eq!(gamma(2), xc(&[&[0, 1, 1], &[-2, -2], &[1]]));
        assert_eq!(pi_poly(1), xc(&[&[0, -1], &[1]]));
        assert_eq!(pi_poly(2), xc(&[&[0, 0, 1], &[-1, -2], &[1]]));
        assert_eq!(pi_poly(3), xc(&[&[0, 0, 0, -1], &[1, 2, 3], &[-2, -3], &[1]]));
    }

    #[test]
    fn d_constants_alternate() {
        let d = ConstantsCD;
        for n in 3..20 {
            assert!((&d.d(n) + &d.d(n - 1)).is_zero());
        }
    }

    // Substitution oracle: with y = (x - (1+c))/sqrt(c), sqrt(c)^n C_n(y)
    // expands as sum_k a_k c^((n-k)/2) (x-1-c)^k since C_n has parity n.
    fn substituted(cheb: &PolyXC, n: usize) -> PolyXC {
        let base = PolyXC::x_minus(one_plus_c());
        let mut acc = PolyXC::zero();
        let mut pw = PolyXC::one();
        for k in 0..=n {
            let a = cheb.coeff(k);
            if !a.is_zero() {
                assert_eq!((n - k) % 2, 0);
                acc = &acc + &pw.scale(&(&a * &PolyC::c().pow(((n - k) / 2) as u32)));
            }
            pw = &pw * &base;
        }
        acc
    }

    #[test]
    fn recurrences_match_substitution() {
        for n in 0..12 {
            assert_eq!(gamma_tilde(n), substituted(&chebyshev_c(n), n), "n={n}");
        }
        for n in 1..12 {
            let want = &substituted(&chebyshev_s(n), n) + &substituted(&chebyshev_s(n - 1), n - 1);
            assert_eq!(pi_poly(n), want, "n={n}");
        }
    }

    #[test]
    fn all_integral_and_monic() {
        for fam in [Family::GammaTilde, Family::Gamma, Family::Pi] {
            for (n, p) in fam.sequence(16).iter().enumerate() {
                assert_eq!(p.degree(), Some(n));
                assert!(p.is_monic());
                assert!(p.coeffs().iter().all(|a| a.is_integral()));
            }
        }
    }
}
