//! The rank-1 exponential-polynomial ring: finite sums `sum a_r z^r` with
//! rational exponents `r` and Novikov-scalar coefficients, together with
//! the finite-zero-set algorithm for `t -> f(T^t)`.
//!
//! Zeros can occur only where at least two terms attain the minimum of the
//! affine family `t -> val(a_r) + t*r` (a unique minimal term dominates
//! and cannot cancel), so the algorithm intersects pairwise breakpoints
//! with the lower envelope and then evaluates exactly.

use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{ArithError, ParseError};
use crate::gaussian::parse_rational;
use crate::novikov::{parse_novikov, split_top_level, NovikovScalar, ZeroStatus};

/// Element of `Lambda[z^Q]` (one variable, rational exponents).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExpPolynomial {
    terms: BTreeMap<BigRational, NovikovScalar>,
}

impl ExpPolynomial {
    pub fn zero() -> Self {
        ExpPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::from_integer(0.into()), NovikovScalar::one())
    }

    pub fn monomial(exp: BigRational, coeff: NovikovScalar) -> Self {
        let mut out = Self::zero();
        out.add_term(exp, coeff);
        out
    }

    pub fn add_term(&mut self, exp: BigRational, coeff: NovikovScalar) {
        if coeff.is_exact_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(exp.clone())
            .or_insert_with(NovikovScalar::zero);
        *entry = &*entry + &coeff;
        if entry.is_exact_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &NovikovScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &BigRational) -> Option<&NovikovScalar> {
        self.terms.get(exp)
    }

    pub fn zero_status(&self) -> ZeroStatus {
        if self
            .terms
            .values()
            .any(|c| c.zero_status() == ZeroStatus::NonZero)
        {
            ZeroStatus::NonZero
        } else if self.terms.is_empty() {
            ZeroStatus::Zero
        } else {
            ZeroStatus::Indeterminate
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ExpPolynomial {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &NovikovScalar) -> Self {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    /// Exact evaluation of `f(T^t)`.
    pub fn eval_at_t(&self, t: &BigRational) -> NovikovScalar {
        let mut acc = NovikovScalar::zero();
        for (r, a) in &self.terms {
            acc = &acc + &a.shift_exp(&(t * r));
        }
        acc
    }

    /// Lower-envelope value `min_r (val(a_r) + t*r)`; None for the zero
    /// element.
    pub fn envelope_at(&self, t: &BigRational) -> Option<BigRational> {
        self.terms
            .iter()
            .filter_map(|(r, a)| a.valuation().finite().map(|v| v + t * r))
            .min()
    }
}

/// One candidate breakpoint inspected by the zero finder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCandidate {
    pub t: BigRational,
    /// Exponents whose affine pieces attain the envelope minimum at `t`.
    pub attaining: Vec<BigRational>,
    /// Whether `f(T^t)` vanishes exactly.
    pub is_zero: bool,
}

/// Output of the zero finder: the exact zero set plus the per-candidate
/// evidence it was filtered from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroReport {
    pub zeros: Vec<BigRational>,
    pub candidates: Vec<ZeroCandidate>,
}

/// All rational `t` with `f(T^t) = 0`, for nonzero `f` with exact
/// coefficients.
pub fn exp_poly_zeros(f: &ExpPolynomial) -> Result<ZeroReport, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let data: Vec<(BigRational, BigRational)> = f
        .terms
        .iter()
        .map(|(r, a)| {
            if !a.is_exact() {
                return Err(ArithError::ZeroWithinPrecision {
                    cutoff: format!("{a}"),
                });
            }
            Ok((
                r.clone(),
                a.valuation()
                    .finite()
                    .cloned()
                    .expect("nonzero stored coefficient"),
            ))
        })
        .collect::<Result<_, _>>()?;
    // pairwise intersections of the affine pieces
    let mut candidates: Vec<BigRational> = Vec::new();
    for i in 0..data.len() {
        for j in (i + 1)..data.len() {
            let (ri, vi) = &data[i];
            let (rj, vj) = &data[j];
            if ri == rj {
                // same slope: parallel pieces never cross (distinct exponents
                // in the map guarantee ri != rj, but keep the guard)
                return Err(ArithError::IrrationalBreakpoint);
            }
            let t = (vj - vi) / (ri - rj);
            candidates.push(t);
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut report = ZeroReport {
        zeros: Vec::new(),
        candidates: Vec::new(),
    };
    for t in candidates {
        let env = f.envelope_at(&t).expect("nonzero polynomial");
        let attaining: Vec<BigRational> = data
            .iter()
            .filter(|(r, v)| v + &t * r == env)
            .map(|(r, _)| r.clone())
            .collect();
        if attaining.len() < 2 {
            // not on the lower envelope; a unique minimal term dominates
            continue;
        }
        let is_zero = f.eval_at_t(&t).is_exact_zero();
        if is_zero {
            report.zeros.push(t.clone());
        }
        report.candidates.push(ZeroCandidate { t, attaining, is_zero });
    }
    Ok(report)
}

/// Canonical text form `(scalar)*z^(r)` summands joined by ` + `.
impl fmt::Display for ExpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(r, c)| format!("({c})*z^({r})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn parse_exp_poly(s: &str) -> Result<ExpPolynomial, ParseError> {
    let s = s.trim();
    if s == "0" {
        return Ok(ExpPolynomial::zero());
    }
    let mut out = ExpPolynomial::zero();
    for raw in split_top_level(s, '+') {
        let part = raw.trim();
        let (coeff_str, exp_str) = part
            .rsplit_once("*z^(")
            .ok_or_else(|| ParseError::new(format!("malformed term `{part}`")))?;
        let exp_str = exp_str
            .strip_suffix(')')
            .ok_or_else(|| ParseError::new(format!("unterminated exponent in `{part}`")))?;
        let coeff_str = coeff_str
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| ParseError::new(format!("coefficient must be parenthesized in `{part}`")))?;
        out.add_term(parse_rational(exp_str)?, parse_novikov(coeff_str)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{rat, rat_int};

    fn z() -> ExpPolynomial {
        ExpPolynomial::monomial(rat_int(1), NovikovScalar::one())
    }

    fn constant(c: NovikovScalar) -> ExpPolynomial {
        ExpPolynomial::monomial(rat_int(0), c)
    }

    #[test]
    fn zero_of_z_minus_t() {
        // z - T has the single zero t = 1
        let f = z().sub(&constant(NovikovScalar::t_pow(1, 1)));
        let report = exp_poly_zeros(&f).unwrap();
        assert_eq!(report.zeros, vec![rat_int(1)]);
    }

    #[test]
    fn zeros_of_factored_quadratic() {
        // z^2 - (1+T) z + T = (z - 1)(z - T): zeros {0, 1}
        let z2 = ExpPolynomial::monomial(rat_int(2), NovikovScalar::one());
        let lin = ExpPolynomial::monomial(
            rat_int(1),
            &NovikovScalar::one() + &NovikovScalar::t_pow(1, 1),
        );
        let f = z2.sub(&lin).add(&constant(NovikovScalar::t_pow(1, 1)));
        let report = exp_poly_zeros(&f).unwrap();
        assert_eq!(report.zeros, vec![rat_int(0), rat_int(1)]);
    }

    #[test]
    fn no_zero_when_leading_sum_nonzero() {
        // z - 2: sole breakpoint t = 0, leading sum 1 - 2 != 0
        let f = z().sub(&constant(NovikovScalar::from_int(2)));
        let report = exp_poly_zeros(&f).unwrap();
        assert!(report.zeros.is_empty());
        assert_eq!(report.candidates.len(), 1);
        assert_eq!(report.candidates[0].t, rat_int(0));
        assert!(!report.candidates[0].is_zero);
    }

    #[test]
    fn zero_input_rejected() {
        assert!(matches!(
            exp_poly_zeros(&ExpPolynomial::zero()),
            Err(ArithError::ZeroInput)
        ));
    }

    #[test]
    fn monomial_has_no_zeros() {
        let f = ExpPolynomial::monomial(rat(1, 2), NovikovScalar::t_pow(3, 1));
        let report = exp_poly_zeros(&f).unwrap();
        assert!(report.zeros.is_empty());
        assert!(report.candidates.is_empty());
    }

    #[test]
    fn display_roundtrip() {
        let f = ExpPolynomial::monomial(rat(-3, 2), &NovikovScalar::one() - &NovikovScalar::t_pow(2, 1))
            .add(&ExpPolynomial::monomial(rat(1, 3), NovikovScalar::from_int(5)));
        let s = f.to_string();
        assert_eq!(parse_exp_poly(&s).unwrap(), f, "roundtrip of `{s}`");
    }
}
