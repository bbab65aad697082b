//! Dense univariate polynomials over arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `coeffs[i]` is the coefficient of `x^i`. The highest stored coefficient
/// is never zero; the zero polynomial has no coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Polynomial::from_coeffs(vec![c.into()])
    }

    /// `x`
    pub fn x() -> Self {
        Polynomial::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c.into();
        Polynomial::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `(1+x)^n`, built directly from a row of Pascal's triangle.
    pub fn one_plus_x_pow(n: usize) -> Self {
        let mut row = Vec::with_capacity(n + 1);
        let mut c = BigInt::one();
        for i in 0..=n {
            row.push(c.clone());
            c = c * (n - i) / (i + 1);
        }
        Polynomial::from_coeffs(row)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Smallest `i` with a nonzero coefficient. For a domination polynomial
    /// this is the domination number.
    pub fn min_degree(&self) -> Result<usize> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::UndefinedDegree)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact value at an integer point.
    pub fn eval_int(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Coefficients converted to `f64`, lowest degree first.
    pub fn to_f64s(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Largest absolute coefficient, zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(BigInt::abs)
            .max()
            .unwrap_or_default()
    }

    /// First degree at which `self` and `other` differ, with both
    /// coefficients there.
    pub fn first_difference(&self, other: &Polynomial) -> Option<(usize, BigInt, BigInt)> {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|i| (i, self.coeff(i), other.coeff(i)))
            .find(|(_, a, b)| a != b)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolynomialJson::from(self)).expect("string vector serializes")
    }

    pub fn from_json(s: &str) -> Result<Polynomial> {
        let parsed: PolynomialJson =
            serde_json::from_str(s).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        Polynomial::try_from(parsed)
    }
}

/// Wire form: coefficients as decimal strings, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub coeffs: Vec<String>,
}

impl From<&Polynomial> for PolynomialJson {
    fn from(p: &Polynomial) -> Self {
        PolynomialJson {
            coeffs: p.coeffs.iter().map(BigInt::to_string).collect(),
        }
    }
}

impl TryFrom<PolynomialJson> for Polynomial {
    type Error = Error;

    fn try_from(j: PolynomialJson) -> Result<Self> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| Error::parse(1, format!("bad coefficient {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolynomialJson::deserialize(d)?;
        Polynomial::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                self.$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::one(), |a, b| a * b)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p(&[0, 2, 1]) + p(&[0, 1]), p(&[0, 3, 1]));
        assert_eq!(p(&[1, 1]) * p(&[1, 1]), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 1]).pow(3) - Polynomial::one(), p(&[0, 3, 3, 1]));
        assert_eq!(Polynomial::one_plus_x_pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[1, 1]).pow(0), Polynomial::one());
        assert_eq!(p(&[0, 1]) - p(&[0, 1]), Polynomial::zero());
        assert_eq!(p(&[1, 2]).shift(2), p(&[0, 0, 1, 2]));
    }

    #[test]
    fn normalization() {
        assert_eq!(p(&[1, 0, 0]).coeffs().len(), 1);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[3, 0, 2]).degree(), Some(2));
    }

    #[test]
    fn evaluation() {
        let minus_one = BigInt::from(-1);
        assert_eq!(p(&[0, 1, 3, 1]).eval_int(&minus_one), BigInt::from(1));
        assert_eq!(p(&[0, 2, 1]).eval_int(&minus_one), BigInt::from(-1));
        assert_eq!(p(&[7, 2, 1]).eval_int(&BigInt::zero()), BigInt::from(7));
        assert_eq!(
            Polynomial::zero().eval_int(&BigInt::from(5)),
            BigInt::zero()
        );
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(p(&[0, 3, 3, 1]).min_degree().unwrap(), 1);
        assert_eq!(p(&[0, 0, 4, 4, 1]).min_degree().unwrap(), 2);
        assert_eq!(Polynomial::monomial(1, 7).min_degree().unwrap(), 7);
        assert!(matches!(
            Polynomial::zero().min_degree(),
            Err(Error::UndefinedDegree)
        ));
    }

    #[test]
    fn json_wire_form() {
        let d = p(&[0, 2, 6, 4, 1]);
        assert_eq!(d.to_json(), r#"{"coeffs":["0","2","6","4","1"]}"#);
        assert_eq!(Polynomial::from_json(&d.to_json()).unwrap(), d);
        assert_eq!(Polynomial::zero().to_json(), r#"{"coeffs":[]}"#);
        assert!(Polynomial::from_json(r#"{"coeffs":["x"]}"#).is_err());

        let big = Polynomial::one_plus_x_pow(80);
        assert_eq!(Polynomial::from_json(&big.to_json()).unwrap(), big);
    }

    #[test]
    fn first_difference() {
        assert_eq!(p(&[0, 1]).first_difference(&p(&[0, 1])), None);
        assert_eq!(
            p(&[0, 1, 2]).first_difference(&p(&[0, 1])),
            Some((2, BigInt::from(2), BigInt::zero()))
        );
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 1, 3, 1]).to_string(), "x^3 + 3x^2 + x");
        assert_eq!(p(&[-1, 0, -2]).to_string(), "-2x^2 - 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }
}
