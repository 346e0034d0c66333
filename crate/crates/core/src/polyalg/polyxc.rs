//! Polynomials in `x` whose coefficients are polynomials in `c`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::PolyC;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyXC {
    coeffs: Vec<PolyC>,
}

impl PolyXC {
    pub fn zero() -> Self {
        PolyXC { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(PolyC::one())
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![PolyC::zero(), PolyC::one()])
    }

    pub fn constant(a: PolyC) -> Self {
        Self::from_coeffs(vec![a])
    }

    /// `x - a`.
    pub fn x_minus(a: PolyC) -> Self {
        Self::from_coeffs(vec![-a, PolyC::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<PolyC>) -> Self {
        while coeffs.last().is_some_and(|x| x.is_zero()) {
            coeffs.pop();
        }
        PolyXC { coeffs }
    }

    pub fn coeffs(&self) -> &[PolyC] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> PolyC {
        self.coeffs.get(k).cloned().unwrap_or_else(PolyC::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|a| a.is_one())
    }

    pub fn scale(&self, a: &PolyC) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|b| a * b).collect())
    }

    pub fn mul_x(&self) -> Self {
        if self.coeffs.is_empty() {
            return PolyXC::zero();
        }
        let mut coeffs = vec![PolyC::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyXC { coeffs }
    }

    /// Specializes `c` to a float and evaluates coefficients only.
    pub fn coeffs_f64(&self, c: f64) -> Vec<f64> {
        self.coeffs.iter().map(|a| a.eval_f64(c)).collect()
    }
}

impl<'a> Add<&'a PolyXC> for &'a PolyXC {
    type Output = PolyXC;
    fn add(self, rhs: &PolyXC) -> PolyXC {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyXC::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a PolyXC> for &'a PolyXC {
    type Output = PolyXC;
    fn sub(self, rhs: &PolyXC) -> PolyXC {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyXC::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a PolyXC> for &'a PolyXC {
    type Output = PolyXC;
    fn mul(self, rhs: &PolyXC) -> PolyXC {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return PolyXC::zero();
        }
        let mut out = vec![PolyC::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyXC::from_coeffs(out)
    }
}

impl Neg for &PolyXC {
    type Output = PolyXC;
    fn neg(self) -> PolyXC {
        PolyXC::from_coeffs(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Add for PolyXC {
    type Output = PolyXC;
    fn add(self, rhs: PolyXC) -> PolyXC {
        &self + &rhs
    }
}

impl Sub for PolyXC {
    type Output = PolyXC;
    fn sub(self, rhs: PolyXC) -> PolyXC {
        &self - &rhs
    }
}

impl Mul for PolyXC {
    type Output = PolyXC;
    fn mul(self, rhs: PolyXC) -> PolyXC {
        &self * &rhs
    }
}

impl fmt::Display for PolyXC {
    /// Descending in `x`, e.g. `x^2 - (2 + 2*c)*x + (1 + c^2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "({a})")?;
            } else if a.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "({a})*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyXC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyXC({self})")
    }
}
