//! Exact Gaussian rationals Q(i).
//!
//! Coefficients of Novikov scalars live here: `a + b*i` with `a`, `b`
//! arbitrary-precision rationals. All arithmetic is exact; there is no
//! floating-point mode.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::ParseError;

/// An element of Q(i), stored as real and imaginary rational parts.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian { re, im }
    }

    pub fn zero() -> Self {
        Gaussian {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Gaussian {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        Gaussian {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Gaussian {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Gaussian {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// Norm a^2 + b^2; zero iff the element is zero.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        Gaussian {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Gaussian {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Gaussian {
            re: &self.re * r,
            im: &self.im * r,
        }
    }
}

impl Add for &Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &Gaussian {
    type Output = Gaussian;
    fn div(self, rhs: &Gaussian) -> Gaussian {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

/// Canonical text form, used by every serialized coefficient:
///   `0`, `3/2`, `-1`, `2*i`, `-1/3*i`, `(1/2+3*i)`, `(1/2-3*i)`.
/// Mixed elements are always parenthesized so that scalar sums split
/// unambiguously on `+` at paren depth zero.
impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "({}-{}*i)", self.re, -self.im.clone())
        } else {
            write!(f, "({}+{}*i)", self.re, self.im)
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| ParseError::new(format!("invalid rational `{s}`")))
}

/// Parse the canonical display form produced by `Display`.
pub fn parse_gaussian(s: &str) -> Result<Gaussian, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseError::new("empty coefficient"));
    }
    if s == "0" {
        return Ok(Gaussian::zero());
    }
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        // mixed form: re (+|-) |im| *i, split at the sign separating the parts
        let im_str = inner
            .strip_suffix("*i")
            .ok_or_else(|| ParseError::new(format!("malformed Gaussian `{s}`")))?;
        // find the +/- separating real and imaginary parts (not a leading sign,
        // not an exponent sign inside the rational)
        let bytes = im_str.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx] as char;
            if (c == '+' || c == '-') && bytes[idx - 1] as char != '/' {
                split = Some(idx);
                break;
            }
        }
        let idx = split.ok_or_else(|| ParseError::new(format!("malformed Gaussian `{s}`")))?;
        let re = parse_rational(&im_str[..idx])?;
        let sign = if bytes[idx] as char == '-' { -1 } else { 1 };
        let im_mag = parse_rational(&im_str[idx + 1..])?;
        let im = if sign < 0 { -im_mag } else { im_mag };
        Ok(Gaussian::new(re, im))
    } else if let Some(im_str) = s.strip_suffix("*i") {
        Ok(Gaussian::new(BigRational::zero(), parse_rational(im_str)?))
    } else if s == "i" {
        Ok(Gaussian::i())
    } else if s == "-i" {
        Ok(Gaussian::new(BigRational::zero(), -BigRational::one()))
    } else {
        Ok(Gaussian::new(parse_rational(s)?, BigRational::zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64, c: i64, d: i64) -> Gaussian {
        Gaussian::new(
            BigRational::new(BigInt::from(a), BigInt::from(b)),
            BigRational::new(BigInt::from(c), BigInt::from(d)),
        )
    }

    #[test]
    fn field_ops() {
        let x = g(1, 2, 3, 1);
        let y = g(-2, 1, 1, 3);
        let prod = &x * &y;
        let back = &prod / &y;
        assert_eq!(back, x);
        assert_eq!(&x * &x.inv().unwrap(), Gaussian::one());
    }

    #[test]
    fn display_roundtrip() {
        for v in [
            Gaussian::zero(),
            Gaussian::one(),
            Gaussian::i(),
            g(1, 2, 0, 1),
            g(0, 1, -2, 3),
            g(-7, 3, 5, 4),
            g(1, 1, -1, 1),
        ] {
            let s = v.to_string();
            assert_eq!(parse_gaussian(&s).unwrap(), v, "roundtrip of `{s}`");
        }
    }
}
