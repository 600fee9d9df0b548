//! Gaussian-rational scalars: `re + im*i` with arbitrary-precision rational parts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::MathError;

/// An element of Q(i). Exact arithmetic; no floating point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar {
            re: r,
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re² + im²`, the square of the modulus.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse of a nonzero scalar.
    pub fn inv(&self) -> Result<Self, MathError> {
        if self.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(Scalar {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    /// Canonical string form `p/q+r/s*i`, always printing both parts.
    pub fn to_canonical_string(&self) -> String {
        let re = format!("{}/{}", self.re.numer(), self.re.denom());
        let (sign, im_abs) = if self.im.is_negative() {
            ("-", -self.im.clone())
        } else {
            ("+", self.im.clone())
        };
        format!("{}{}{}/{}*i", re, sign, im_abs.numer(), im_abs.denom())
    }

    /// Parse the canonical `p/q+r/s*i` form (also accepts bare `p/q` and `p`).
    pub fn parse(s: &str) -> Result<Self, MathError> {
        let s = s.trim();
        let bad = || MathError::Parse(format!("invalid scalar: {s:?}"));
        if let Some(stripped) = s.strip_suffix("*i") {
            // Split at the sign that separates the real and imaginary terms.
            // The real term may itself start with '-', so search from index 1.
            let mut split = None;
            for (k, c) in stripped.char_indices().skip(1) {
                if c == '+' || c == '-' {
                    // A sign inside "p/q" never follows a digit boundary like "/-",
                    // so the separator is the sign preceded by a digit.
                    let prev = stripped.as_bytes()[k - 1];
                    if prev.is_ascii_digit() {
                        split = Some(k);
                    }
                }
            }
            let k = split.ok_or_else(bad)?;
            let re = parse_rational(&stripped[..k]).ok_or_else(bad)?;
            let sign = if stripped.as_bytes()[k] == b'-' { -1 } else { 1 };
            let im_abs = parse_rational(&stripped[k + 1..]).ok_or_else(bad)?;
            let im = if sign < 0 { -im_abs } else { im_abs };
            Ok(Scalar { re, im })
        } else {
            let re = parse_rational(s).ok_or_else(bad)?;
            Ok(Scalar {
                re,
                im: BigRational::zero(),
            })
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar {
            re: self.re + &rhs.re,
            im: self.im + &rhs.im,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<'a> Sub<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        Scalar {
            re: self.re - &rhs.re,
            im: self.im - &rhs.im,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl<'b> Mul<&'b Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'b Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Mul<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        &self * rhs
    }
}

impl Div for Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Scalar) -> Scalar {
        self * rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        let v = &*self * &rhs;
        *self = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Scalar {
        Scalar::new(
            BigRational::new(BigInt::from(re_n), BigInt::from(re_d)),
            BigRational::new(BigInt::from(im_n), BigInt::from(im_d)),
        )
    }

    #[test]
    fn conjugation_is_involution() {
        let z = s(3, 4, -5, 7);
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn inverse_of_nonzero() {
        let z = s(1, 2, -2, 3);
        let w = z.inv().unwrap();
        assert_eq!(z * w, Scalar::one());
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn canonical_string_round_trip() {
        for z in [
            Scalar::zero(),
            Scalar::one(),
            Scalar::i(),
            s(-1, 2, 3, 4),
            s(7, 3, -11, 5),
        ] {
            let txt = z.to_canonical_string();
            assert_eq!(Scalar::parse(&txt).unwrap(), z, "round trip of {txt}");
        }
        assert_eq!(Scalar::zero().to_canonical_string(), "0/1+0/1*i");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Scalar::parse("1/0+0/1*i").is_err());
        assert!(Scalar::parse("x").is_err());
        assert!(Scalar::parse("").is_err());
    }
}
