//! Polynomials in the formal parameter `c` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PolyError;

/// Dense polynomial in `c`. `coeffs[i]` is the coefficient of `c^i`; trailing
/// zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyC {
    coeffs: Vec<BigRational>,
}

impl PolyC {
    pub fn zero() -> Self {
        PolyC { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The polynomial `c`.
    pub fn c() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_coeffs(vec![BigRational::from_integer(BigInt::from(v))])
    }

    /// `coef * c^power`.
    pub fn monomial(coef: i64, power: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); power + 1];
        coeffs[power] = BigRational::from_integer(BigInt::from(coef));
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|x| x.is_zero()) {
            coeffs.pop();
        }
        PolyC { coeffs }
    }

    /// Builds from integer coefficients, lowest power first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    /// Polynomial from a histogram: `counts[j]` copies of `c^j`.
    pub fn from_counts(counts: &[u64]) -> Self {
        Self::from_coeffs(
            counts
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree in `c`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_integer())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PolyC::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by `c^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return PolyC::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyC { coeffs }
    }

    /// Exact division by `c`; fails if the constant term is nonzero.
    pub fn div_c(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Ok(PolyC::zero());
        }
        if !self.coeffs[0].is_zero() {
            return Err(PolyError::NotDivisibleByC(self.to_string()));
        }
        Ok(PolyC {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    pub fn eval_rational(&self, c: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * c + a;
        }
        acc
    }

    pub fn eval_f64(&self, c: f64) -> f64 {
        let mut acc = 0.0;
        for a in self.coeffs.iter().rev() {
            acc = acc * c + a.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// `d/dc`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a * BigRational::from_integer((i as i64).into()))
            .collect();
        PolyC::from_coeffs(coeffs)
    }

    /// Coefficients as `"p"` or `"p/q"` strings, lowest power first.
    pub fn to_rational_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|x| x.to_string()).collect()
    }

    pub fn from_rational_strings(parts: &[String]) -> Result<Self, PolyError> {
        let coeffs = parts
            .iter()
            .map(|s| {
                BigRational::from_str(s.trim()).map_err(|_| PolyError::Parse(s.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}

fn add_vec(a: &[BigRational], b: &[BigRational], sign: bool) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) if sign => x + y,
                Some(y) => x - y,
                None => x,
            }
        })
        .collect()
}

impl<'a> Add<&'a PolyC> for &'a PolyC {
    type Output = PolyC;
    fn add(self, rhs: &PolyC) -> PolyC {
        PolyC::from_coeffs(add_vec(&self.coeffs, &rhs.coeffs, true))
    }
}

impl<'a> Sub<&'a PolyC> for &'a PolyC {
    type Output = PolyC;
    fn sub(self, rhs: &PolyC) -> PolyC {
        PolyC::from_coeffs(add_vec(&self.coeffs, &rhs.coeffs, false))
    }
}

impl<'a> Mul<&'a PolyC> for &'a PolyC {
    type Output = PolyC;
    fn mul(self, rhs: &PolyC) -> PolyC {
        if self.is_zero() || rhs.is_zero() {
            return PolyC::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyC::from_coeffs(out)
    }
}

impl Neg for &PolyC {
    type Output = PolyC;
    fn neg(self) -> PolyC {
        PolyC {
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<PolyC> for PolyC {
            type Output = PolyC;
            fn $f(self, rhs: PolyC) -> PolyC {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a PolyC> for PolyC {
            type Output = PolyC;
            fn $f(self, rhs: &PolyC) -> PolyC {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<PolyC> for &'a PolyC {
            type Output = PolyC;
            fn $f(self, rhs: PolyC) -> PolyC {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PolyC {
    type Output = PolyC;
    fn neg(self) -> PolyC {
        -&self
    }
}

impl AddAssign<&PolyC> for PolyC {
    fn add_assign(&mut self, rhs: &PolyC) {
        *self = &*self + rhs;
    }
}

impl AddAssign<PolyC> for PolyC {
    fn add_assign(&mut self, rhs: PolyC) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&PolyC> for PolyC {
    fn sub_assign(&mut self, rhs: &PolyC) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&PolyC> for PolyC {
    fn mul_assign(&mut self, rhs: &PolyC) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for PolyC {
    fn sum<I: Iterator<Item = PolyC>>(iter: I) -> PolyC {
        iter.fold(PolyC::zero(), |a, b| a + b)
    }
}

impl fmt::Display for PolyC {
    /// Ascending form, e.g. `1 + 4*c + c^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else if a.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "c".to_string(),
                _ => format!("c^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyC({self})")
    }
}

impl FromStr for PolyC {
    type Err = PolyError;

    /// Parses sums of terms `a`, `a*c`, `c^k`, `a/b*c^k`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let compact: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyError::Parse(s.to_string()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.is_empty() {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && cur.is_empty() {
                if ch == '-' {
                    neg = !neg;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(PolyError::Parse(s.to_string()));
        }
        terms.push((neg, cur));

        let bad = || PolyError::Parse(s.to_string());
        let mut acc = PolyC::zero();
        for (neg, t) in terms {
            let (coef_part, var_part) = match t.find('c') {
                Some(pos) => {
                    let head = &t[..pos];
                    let head = head.strip_suffix('*').unwrap_or(head);
                    (head, Some(&t[pos + 1..]))
                }
                None => (t.as_str(), None),
            };
            let coef = if coef_part.is_empty() {
                if var_part.is_none() {
                    return Err(bad());
                }
                BigRational::one()
            } else {
                BigRational::from_str(coef_part).map_err(|_| bad())?
            };
            let power = match var_part {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(bad)?,
            };
            let coef = if neg { -coef } else { coef };
            let mut coeffs = vec![BigRational::zero(); power + 1];
            coeffs[power] = coef;
            acc += PolyC::from_coeffs(coeffs);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_ascending() {
        assert_eq!(PolyC::from_ints(&[1, 4, 1]).to_string(), "1 + 4*c + c^2");
        assert_eq!(PolyC::from_ints(&[0, -1, 0, 2]).to_string(), "-c + 2*c^3");
        assert_eq!(PolyC::from_ints(&[-1, -1]).to_string(), "-1 - c");
        assert_eq!(PolyC::zero().to_string(), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["1 + 4*c + c^2", "-c + 2*c^3", "0", "c", "1/2 - 3/4*c^5"] {
            let p: PolyC = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert_eq!("2+2c".parse::<PolyC>().unwrap(), PolyC::from_ints(&[2, 2]));
        assert!("c^".parse::<PolyC>().is_err());
        assert!("".parse::<PolyC>().is_err());
    }

    #[test]
    fn div_c_exact() {
        let p = PolyC::from_ints(&[0, 1, 3]);
        assert_eq!(p.div_c().unwrap(), PolyC::from_ints(&[1, 3]));
        assert!(PolyC::one().div_c().is_err());
    }

    fn arb_poly() -> impl Strategy<Value = PolyC> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(|v| PolyC::from_ints(&v))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), x in arb_poly()) {
            prop_assert_eq!(&a * &(&b + &x), &(&a * &b) + &(&a * &x));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            let v = BigRational::from_integer(BigInt::from(3));
            prop_assert_eq!((&a * &b).eval_rational(&v), a.eval_rational(&v) * b.eval_rational(&v));
        }

        #[test]
        fn display_parses_back(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<PolyC>().unwrap(), a);
        }
    }
}
