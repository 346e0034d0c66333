//! Truncated power series in `z` with `PolyC` coefficients.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use super::{PolyC, PolyError};

/// Series modulo `z^(order+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesZ {
    order: usize,
    coeffs: Vec<PolyC>,
}

impl SeriesZ {
    pub fn zero(order: usize) -> Self {
        SeriesZ { order, coeffs: vec![PolyC::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, PolyC::one())
    }

    pub fn constant(order: usize, a: PolyC) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = a;
        s
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = PolyC::one();
        }
        s
    }

    pub fn from_coeffs(order: usize, mut coeffs: Vec<PolyC>) -> Self {
        coeffs.resize(order + 1, PolyC::zero());
        SeriesZ { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> &PolyC {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[PolyC] {
        &self.coeffs
    }

    pub fn scale(&self, a: &PolyC) -> Self {
        SeriesZ { order: self.order, coeffs: self.coeffs.iter().map(|b| a * b).collect() }
    }

    /// Multiplies by `z`, dropping the top coefficient.
    pub fn shift_z(&self) -> Self {
        let mut coeffs = vec![PolyC::zero()];
        coeffs.extend(self.coeffs[..self.order].iter().cloned());
        SeriesZ { order: self.order, coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = SeriesZ::one(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficientwise exact division by `c`.
    pub fn div_c(&self) -> Result<Self, PolyError> {
        Ok(SeriesZ {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a.div_c()).collect::<Result<_, _>>()?,
        })
    }

    /// Division by a series with constant term 1.
    pub fn div_unit(&self, d: &SeriesZ) -> Result<Self, PolyError> {
        if !d.coeffs[0].is_one() {
            return Err(PolyError::NotUnit(d.coeffs[0].to_string()));
        }
        let order = self.order.min(d.order);
        let mut q: Vec<PolyC> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                acc -= &(&d.coeffs[k] * &q[n - k]);
            }
            q.push(acc);
        }
        Ok(SeriesZ { order, coeffs: q })
    }
}

impl<'a> Add<&'a SeriesZ> for &'a SeriesZ {
    type Output = SeriesZ;
    fn add(self, rhs: &SeriesZ) -> SeriesZ {
        let order = self.order.min(rhs.order);
        SeriesZ {
            order,
            coeffs: (0..=order).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl<'a> Sub<&'a SeriesZ> for &'a SeriesZ {
    type Output = SeriesZ;
    fn sub(self, rhs: &SeriesZ) -> SeriesZ {
        let order = self.order.min(rhs.order);
        SeriesZ {
            order,
            coeffs: (0..=order).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl<'a> Mul<&'a SeriesZ> for &'a SeriesZ {
    type Output = SeriesZ;
    fn mul(self, rhs: &SeriesZ) -> SeriesZ {
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![PolyC::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for j in 0..=order - i {
                coeffs[i + j] += a * &rhs.coeffs[j];
            }
        }
        SeriesZ { order, coeffs }
    }
}

/// Marchenko-Pastur moment series `P_0(z) = 1 + Q(z)`, with `Q` the fixed point of
/// `Q = z (c + (1+c) Q + Q^2)`. Each pass fixes one more coefficient.
pub fn series_p0(order: usize) -> SeriesZ {
    let c = PolyC::c();
    let one_c = PolyC::from_ints(&[1, 1]);
    let mut q = SeriesZ::zero(order);
    for _ in 0..=order {
        let inner = &(&SeriesZ::constant(order, c.clone()) + &q.scale(&one_c)) + &(&q * &q);
        q = inner.shift_z();
    }
    &SeriesZ::one(order) + &q
}

/// `(P_0 - 1)/c`.
fn reduced(order: usize) -> SeriesZ {
    let p0 = series_p0(order);
    (&p0 - &SeriesZ::one(order)).div_c().expect("every NC partition has a block")
}

/// `P_k(z) = ((P_0 - 1)/c)^k P_0`; its `z^n` coefficient is `p_{n,k}`.
pub fn series_p(k: usize, order: usize) -> SeriesZ {
    &reduced(order).pow(k as u32) * &series_p0(order)
}

/// `G_0(z)` with `z^m` coefficient `sum_j C(m,j)^2 c^j`.
pub fn series_g0(order: usize) -> SeriesZ {
    let coeffs = (0..=order)
        .map(|m| {
            PolyC::from_coeffs(
                (0..=m)
                    .map(|j| {
                        let b: BigInt = binomial(BigInt::from(m), BigInt::from(j));
                        BigRational::from_integer(&b * &b)
                    })
                    .collect(),
            )
        })
        .collect();
    SeriesZ::from_coeffs(order, coeffs)
}

/// `G_n(z) = ((P_0 - 1)/c)^n G_0`; its `z^m` coefficient is `g_{m,n}`.
pub fn series_g(n: usize, order: usize) -> SeriesZ {
    &reduced(order).pow(n as u32) * &series_g0(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p0_is_narayana() {
        let p0 = series_p0(6);
        assert_eq!(p0.coeff(0), &PolyC::one());
        assert_eq!(p0.coeff(1), &PolyC::c());
        assert_eq!(p0.coeff(2), &PolyC::from_ints(&[0, 1, 1]));
        assert_eq!(p0.coeff(4), &PolyC::from_ints(&[0, 1, 6, 6, 1]));
        // Narayana numbers: coefficient of c^j in z^n is N(n,j) = C(n,j)C(n,j-1)/n
        let n = 6usize;
        for j in 1..=n {
            let b = |a: usize, b: usize| binomial(BigInt::from(a), BigInt::from(b));
            let want = b(n, j) * b(n, j - 1) / BigInt::from(n);
            assert_eq!(p0.coeff(n).coeff(j), BigRational::from_integer(want));
        }
    }

    #[test]
    fn functional_equation_holds() {
        let order = 10;
        let p0 = series_p0(order);
        let q = &p0 - &SeriesZ::one(order);
        let rhs = (&(&SeriesZ::constant(order, PolyC::c()) + &q.scale(&PolyC::from_ints(&[1, 1]))) + &(&q * &q)).shift_z();
        assert_eq!(q, rhs);
    }

    #[test]
    fn small_coefficients() {
        assert_eq!(series_p(0, 4).coeff(2), &PolyC::from_ints(&[0, 1, 1]));
        assert_eq!(series_p(1, 4).coeff(1), &PolyC::one());
        assert_eq!(series_p(2, 4).coeff(3), &PolyC::from_ints(&[2, 3]));
        assert_eq!(series_g(0, 4).coeff(2), &PolyC::from_ints(&[1, 4, 1]));
        assert_eq!(series_g(1, 4).coeff(3), &PolyC::from_ints(&[3, 9, 3]));
        assert_eq!(series_g(0, 4).coeff(0), &PolyC::one());
    }

    #[test]
    fn div_unit_inverts_mul() {
        let a = series_p0(8);
        let b = series_g0(8);
        assert_eq!((&a * &b).div_unit(&b).unwrap(), a);
    }
}
