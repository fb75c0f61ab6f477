//! Exact truncated arithmetic in the Novikov field with Gaussian-rational
//! coefficients and rational exponents.
//!
//! A scalar is a finite sum `sum_i a_i * T^(e_i)` together with a cutoff:
//! the element is known exactly modulo `T^cutoff`, and a cutoff of
//! "infinity" means the element is exact.
//!
//! Invariants:
//! - exponents are strictly increasing (BTreeMap keys) and every stored
//!   exponent is `< cutoff`;
//! - no zero coefficients are stored;
//! - arithmetic never produces a term at or beyond the cutoff of the result.
//!
//! Cutoff propagation:
//! - `add`/`sub`: cutoff of the result is the min of the input cutoffs;
//! - `mul`: `min(cut_a + val(b), cut_b + val(a))`, exact inputs stay exact;
//! - `invert` of an element with valuation `v` and cutoff `c` is known
//!   modulo `T^(c - 2v)`; inverting an exact multi-term element truncates
//!   at `-v + p` for a caller-supplied default precision `p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{ArithError, ParseError};
use crate::gaussian::{parse_gaussian, parse_rational, Gaussian};

/// Precision bound: either a finite rational exponent or exact.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Cutoff {
    Finite(BigRational),
    Infinite,
}

impl Cutoff {
    pub fn min(&self, other: &Cutoff) -> Cutoff {
        match (self, other) {
            (Cutoff::Infinite, c) => c.clone(),
            (c, Cutoff::Infinite) => c.clone(),
            (Cutoff::Finite(a), Cutoff::Finite(b)) => Cutoff::Finite(a.min(b).clone()),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cutoff::Finite(_))
    }

    fn allows(&self, e: &BigRational) -> bool {
        match self {
            Cutoff::Infinite => true,
            Cutoff::Finite(c) => e < c,
        }
    }

    /// Shift a finite cutoff by a rational amount; infinity is absorbing.
    pub fn shift(&self, by: &BigRational) -> Cutoff {
        match self {
            Cutoff::Infinite => Cutoff::Infinite,
            Cutoff::Finite(c) => Cutoff::Finite(c + by),
        }
    }
}

impl fmt::Display for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cutoff::Infinite => write!(f, "inf"),
            Cutoff::Finite(c) => write!(f, "{c}"),
        }
    }
}

/// T-adic valuation of a scalar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Valuation {
    Finite(BigRational),
    /// No terms stored but the cutoff is finite: the true valuation is
    /// `>=` this bound and otherwise undetermined.
    AtLeast(BigRational),
    /// Exact zero.
    Infinite,
}

impl Valuation {
    pub fn is_determinate(&self) -> bool {
        matches!(self, Valuation::Finite(_) | Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Valuation::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Three-valued zero test used by pivoting code.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ZeroStatus {
    Zero,
    NonZero,
    Indeterminate,
}

/// A truncated Novikov-field element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NovikovScalar {
    terms: BTreeMap<BigRational, Gaussian>,
    cutoff: Cutoff,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl NovikovScalar {
    pub fn zero() -> Self {
        NovikovScalar {
            terms: BTreeMap::new(),
            cutoff: Cutoff::Infinite,
        }
    }

    /// The zero-within-precision element `0 + O(T^c)`.
    pub fn zero_mod(cutoff: BigRational) -> Self {
        NovikovScalar {
            terms: BTreeMap::new(),
            cutoff: Cutoff::Finite(cutoff),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Gaussian::one(), BigRational::zero())
    }

    pub fn monomial(coeff: Gaussian, exp: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        NovikovScalar {
            terms,
            cutoff: Cutoff::Infinite,
        }
    }

    /// `c * T^(n/d)` with integer data, the workhorse for fixtures.
    pub fn t_pow(n: i64, d: i64) -> Self {
        Self::monomial(Gaussian::one(), rat(n, d))
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(Gaussian::from_int(n), BigRational::zero())
    }

    pub fn from_terms(terms: Vec<(BigRational, Gaussian)>, cutoff: Cutoff) -> Self {
        let mut map: BTreeMap<BigRational, Gaussian> = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() || !cutoff.allows(&e) {
                continue;
            }
            let entry = map.entry(e).or_insert_with(Gaussian::zero);
            *entry = &*entry + &c;
        }
        NovikovScalar { terms: map, cutoff }.normalized()
    }

    fn normalized(mut self) -> Self {
        let cutoff = self.cutoff.clone();
        self.terms.retain(|e, c| !c.is_zero() && cutoff.allows(e));
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &Gaussian)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn cutoff(&self) -> &Cutoff {
        &self.cutoff
    }

    pub fn is_exact(&self) -> bool {
        !self.cutoff.is_finite()
    }

    /// Exactly zero (no terms, infinite cutoff).
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && !self.cutoff.is_finite()
    }

    pub fn zero_status(&self) -> ZeroStatus {
        if !self.terms.is_empty() {
            ZeroStatus::NonZero
        } else if self.cutoff.is_finite() {
            ZeroStatus::Indeterminate
        } else {
            ZeroStatus::Zero
        }
    }

    pub fn valuation(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(e) => Valuation::Finite(e.clone()),
            None => match &self.cutoff {
                Cutoff::Finite(c) => Valuation::AtLeast(c.clone()),
                Cutoff::Infinite => Valuation::Infinite,
            },
        }
    }

    /// Leading (lowest-exponent) term, if any.
    pub fn leading(&self) -> Option<(&BigRational, &Gaussian)> {
        self.terms.iter().next()
    }

    /// Lower bound for the valuation: the leading exponent, else the cutoff.
    fn val_lower_bound(&self) -> Cutoff {
        match self.terms.keys().next() {
            Some(e) => Cutoff::Finite(e.clone()),
            None => self.cutoff.clone(),
        }
    }

    /// Forget information beyond `new_cutoff`.
    pub fn truncate(&self, new_cutoff: &Cutoff) -> Self {
        NovikovScalar {
            terms: self.terms.clone(),
            cutoff: self.cutoff.min(new_cutoff),
        }
        .normalized()
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        if c.is_zero() {
            // the multiplier is exactly zero, so the product is exactly zero
            return NovikovScalar::zero();
        }
        NovikovScalar {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a * c))
                .collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    /// Multiply by a pure power of T.
    pub fn shift_exp(&self, by: &BigRational) -> Self {
        NovikovScalar {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e + by, a.clone()))
                .collect(),
            cutoff: self.cutoff.shift(by),
        }
    }

    /// Multiplicative inverse, truncated per the cutoff rules.
    ///
    /// `default_precision` is the relative precision `p` used when the input
    /// is exact with more than one term: the result is then known modulo
    /// `T^(-v + p)` where `v` is the input valuation. A single exact term
    /// inverts exactly.
    pub fn invert(&self, default_precision: &BigRational) -> Result<Self, ArithError> {
        let (e0, c0) = match self.leading() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => {
                return Err(ArithError::ZeroWithinPrecision {
                    cutoff: self.cutoff.to_string(),
                })
            }
        };
        let c0_inv = c0.inv().expect("nonzero leading coefficient");
        if self.terms.len() == 1 && !self.cutoff.is_finite() {
            return Ok(NovikovScalar::monomial(c0_inv, -e0));
        }
        // Result cutoff: c - 2v for truncated input, -v + p for exact input.
        let result_cutoff = match &self.cutoff {
            Cutoff::Finite(c) => c - &e0 - &e0,
            Cutoff::Infinite => -&e0 + default_precision,
        };
        // Normalize: self = c0 T^{e0} (1 + r) with val(r) > 0. Invert the unit
        // part by geometric series up to relative precision q = cutoff + e0.
        let q = &result_cutoff + &e0;
        if q <= BigRational::zero() {
            return Ok(NovikovScalar {
                terms: BTreeMap::new(),
                cutoff: Cutoff::Finite(result_cutoff),
            });
        }
        let mut r_terms = BTreeMap::new();
        for (e, c) in self.terms.iter().skip(1) {
            let shifted = e - &e0;
            if shifted < q {
                r_terms.insert(shifted, c * &c0_inv);
            }
        }
        let r = NovikovScalar {
            terms: r_terms,
            cutoff: Cutoff::Finite(q.clone()),
        };
        let mut acc = NovikovScalar::one().truncate(&Cutoff::Finite(q.clone()));
        let mut power = acc.clone();
        loop {
            power = (&power * &r).neg();
            if power.terms.is_empty() {
                break;
            }
            acc = &acc + &power;
        }
        let unit_inv = acc.scale(&c0_inv);
        Ok(unit_inv.shift_exp(&-e0))
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, n: i64, default_precision: &BigRational) -> Result<Self, ArithError> {
        if n == 0 {
            return Ok(NovikovScalar::one());
        }
        let base = if n < 0 {
            self.invert(default_precision)?
        } else {
            self.clone()
        };
        let mut out = base.clone();
        for _ in 1..n.abs() {
            out = &out * &base;
        }
        Ok(out)
    }
}

impl Add for &NovikovScalar {
    type Output = NovikovScalar;
    fn add(self, rhs: &NovikovScalar) -> NovikovScalar {
        let cutoff = self.cutoff.min(&rhs.cutoff);
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Gaussian::zero);
            *entry = &*entry + c;
        }
        NovikovScalar { terms, cutoff }.normalized()
    }
}

impl Sub for &NovikovScalar {
    type Output = NovikovScalar;
    fn sub(self, rhs: &NovikovScalar) -> NovikovScalar {
        self + &rhs.neg()
    }
}

impl Neg for &NovikovScalar {
    type Output = NovikovScalar;
    fn neg(self) -> NovikovScalar {
        NovikovScalar {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            cutoff: self.cutoff.clone(),
        }
    }
}

impl NovikovScalar {
    pub fn neg(&self) -> NovikovScalar {
        -self
    }
}

impl Mul for &NovikovScalar {
    type Output = NovikovScalar;
    fn mul(self, rhs: &NovikovScalar) -> NovikovScalar {
        // cutoff = min(cut_a + val(b), cut_b + val(a)); infinite stays infinite
        let ca = match (&self.cutoff, rhs.val_lower_bound()) {
            (Cutoff::Finite(c), Cutoff::Finite(v)) => Cutoff::Finite(c + v),
            (Cutoff::Finite(_), Cutoff::Infinite) => Cutoff::Infinite,
            (Cutoff::Infinite, _) => Cutoff::Infinite,
        };
        let cb = match (&rhs.cutoff, self.val_lower_bound()) {
            (Cutoff::Finite(c), Cutoff::Finite(v)) => Cutoff::Finite(c + v),
            (Cutoff::Finite(_), Cutoff::Infinite) => Cutoff::Infinite,
            (Cutoff::Infinite, _) => Cutoff::Infinite,
        };
        let cutoff = ca.min(&cb);
        let mut terms: BTreeMap<BigRational, Gaussian> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1 + e2;
                if !cutoff.allows(&e) {
                    continue;
                }
                let entry = terms.entry(e).or_insert_with(Gaussian::zero);
                *entry = &*entry + &(c1 * c2);
            }
        }
        NovikovScalar { terms, cutoff }.normalized()
    }
}

/// Canonical text form `c1*T^(e1) + c2*T^(e2) + O(T^(p))`; parse/print is
/// an exact round trip.
impl fmt::Display for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in &self.terms {
            parts.push(format!("{c}*T^({e})"));
        }
        if let Cutoff::Finite(p) = &self.cutoff {
            parts.push(format!("O(T^({p}))"));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Split `s` on `sep` at paren depth 0.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            c if c == sep && depth == 0 => {
                out.push(cur.clone());
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    out.push(cur);
    out
}

pub fn parse_novikov(s: &str) -> Result<NovikovScalar, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseError::new("empty Novikov scalar"));
    }
    if s == "0" {
        return Ok(NovikovScalar::zero());
    }
    let mut terms: Vec<(BigRational, Gaussian)> = Vec::new();
    let mut cutoff = Cutoff::Infinite;
    let summands = split_top_level(s, '+');
    let n = summands.len();
    for (i, raw) in summands.into_iter().enumerate() {
        let part = raw.trim();
        if part.is_empty() {
            return Err(ParseError::new(format!("empty summand in `{s}`")));
        }
        if let Some(inner) = part.strip_prefix("O(T^(").and_then(|t| t.strip_suffix("))")) {
            if i + 1 != n {
                return Err(ParseError::new("O(...) must be the final summand"));
            }
            cutoff = Cutoff::Finite(parse_rational(inner)?);
            continue;
        }
        let (coeff_str, exp_str) = part
            .rsplit_once("*T^(")
            .ok_or_else(|| ParseError::new(format!("malformed term `{part}`")))?;
        let exp_str = exp_str
            .strip_suffix(')')
            .ok_or_else(|| ParseError::new(format!("unterminated exponent in `{part}`")))?;
        terms.push((parse_rational(exp_str)?, parse_gaussian(coeff_str)?));
    }
    let mut map: BTreeMap<BigRational, Gaussian> = BTreeMap::new();
    for (e, c) in terms {
        if map.insert(e, c).is_some() {
            return Err(ParseError::new("duplicate exponent in scalar"));
        }
    }
    Ok(NovikovScalar { terms: map, cutoff }.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> NovikovScalar {
        NovikovScalar::t_pow(1, 1)
    }

    #[test]
    fn add_exact() {
        // T^(1/2) + 3T^2 stays exact
        let a = NovikovScalar::t_pow(1, 2);
        let b = NovikovScalar::from_int(3).shift_exp(&rat_int(2));
        let s = &a + &b;
        assert!(s.is_exact());
        assert_eq!(s.num_terms(), 2);
        assert_eq!(s.valuation(), Valuation::Finite(rat(1, 2)));
    }

    #[test]
    fn mul_difference_of_squares() {
        let one = NovikovScalar::one();
        let p = &(&one - &t()) * &(&one + &t());
        let expected = &one - &t().powi(2, &rat_int(10)).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn mul_cutoff_propagation() {
        // (1 + O(T^2)) * (T + O(T^3)) = T + O(T^3)
        let a = &NovikovScalar::one() + &NovikovScalar::zero_mod(rat_int(2));
        let b = &t() + &NovikovScalar::zero_mod(rat_int(3));
        let p = &a * &b;
        assert_eq!(p.cutoff(), &Cutoff::Finite(rat_int(3)));
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.valuation(), Valuation::Finite(rat_int(1)));
    }

    #[test]
    fn invert_monomial_exact() {
        let inv = t().invert(&rat_int(8)).unwrap();
        assert!(inv.is_exact());
        assert_eq!(inv.valuation(), Valuation::Finite(rat_int(-1)));
        assert_eq!(&inv * &t(), NovikovScalar::one());
    }

    #[test]
    fn invert_geometric_series() {
        // 1/(1 - T) at precision 3 = 1 + T + T^2 + O(T^3)
        let f = &NovikovScalar::one() - &t();
        let inv = f.invert(&rat_int(3)).unwrap();
        assert_eq!(inv.cutoff(), &Cutoff::Finite(rat_int(3)));
        let expected = parse_novikov("1*T^(0) + 1*T^(1) + 1*T^(2) + O(T^(3))").unwrap();
        assert_eq!(inv, expected);
        // f * inv = 1 + O(T^3)
        let prod = &f * &inv;
        assert_eq!(prod, parse_novikov("1*T^(0) + O(T^(3))").unwrap());
    }

    #[test]
    fn invert_zero_within_precision() {
        let z = NovikovScalar::zero_mod(rat_int(5));
        assert!(matches!(
            z.invert(&rat_int(8)),
            Err(ArithError::ZeroWithinPrecision { .. })
        ));
    }

    #[test]
    fn valuation_cases() {
        assert_eq!(NovikovScalar::zero().valuation(), Valuation::Infinite);
        let a = &NovikovScalar::from_int(2) + &t();
        assert_eq!(a.valuation(), Valuation::Finite(rat_int(0)));
        assert_eq!(
            NovikovScalar::zero_mod(rat_int(4)).valuation(),
            Valuation::AtLeast(rat_int(4))
        );
    }

    #[test]
    fn display_roundtrip() {
        let cases = [
            NovikovScalar::zero(),
            NovikovScalar::zero_mod(rat(7, 2)),
            &(&NovikovScalar::one() - &t()) + &NovikovScalar::zero_mod(rat_int(9)),
            NovikovScalar::monomial(Gaussian::new(rat(1, 2), rat(-3, 4)), rat(-5, 3)),
            NovikovScalar::monomial(Gaussian::i(), rat_int(0)),
        ];
        for v in cases {
            let s = v.to_string();
            assert_eq!(parse_novikov(&s).unwrap(), v, "roundtrip of `{s}`");
        }
    }
}
