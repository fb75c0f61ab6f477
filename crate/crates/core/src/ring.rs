//! Ring-as-object abstraction so that categories, modules and matrices can
//! be written once over the Novikov field, a Laurent ring, or the
//! rank-1 exponential-polynomial ring.

use num_rational::BigRational;

use crate::error::ParseError;
use crate::exppoly::{parse_exp_poly, ExpPolynomial};
use crate::laurent::{parse_laurent, LaurentElement};
use crate::novikov::{parse_novikov, NovikovScalar, ZeroStatus};

pub trait CoefficientRing: Clone + PartialEq + std::fmt::Debug {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Exact zero test (structural).
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Three-valued zero test; `Indeterminate` appears only for truncated
    /// Novikov scalars.
    fn zero_status(&self, a: &Self::Elem) -> ZeroStatus;

    /// Preference weight for pivot selection in elimination; lower is
    /// better. `None` means no preference.
    fn pivot_weight(&self, a: &Self::Elem) -> Option<BigRational>;

    fn parse_elem(&self, s: &str) -> Result<Self::Elem, ParseError>;
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Multiply by an integer (used for signs).
    fn scale_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        match n {
            0 => self.zero(),
            1 => a.clone(),
            -1 => self.neg(a),
            _ => {
                let mut acc = self.zero();
                for _ in 0..n.abs() {
                    acc = self.add(&acc, a);
                }
                if n < 0 {
                    self.neg(&acc)
                } else {
                    acc
                }
            }
        }
    }
}

/// The Novikov field itself.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct NovikovField;

impl CoefficientRing for NovikovField {
    type Elem = NovikovScalar;

    fn zero(&self) -> NovikovScalar {
        NovikovScalar::zero()
    }
    fn one(&self) -> NovikovScalar {
        NovikovScalar::one()
    }
    fn add(&self, a: &NovikovScalar, b: &NovikovScalar) -> NovikovScalar {
        a + b
    }
    fn neg(&self, a: &NovikovScalar) -> NovikovScalar {
        a.neg()
    }
    fn mul(&self, a: &NovikovScalar, b: &NovikovScalar) -> NovikovScalar {
        a * b
    }
    fn is_zero(&self, a: &NovikovScalar) -> bool {
        a.is_exact_zero()
    }
    fn zero_status(&self, a: &NovikovScalar) -> ZeroStatus {
        a.zero_status()
    }
    fn pivot_weight(&self, a: &NovikovScalar) -> Option<BigRational> {
        a.valuation().finite().cloned()
    }
    fn parse_elem(&self, s: &str) -> Result<NovikovScalar, ParseError> {
        parse_novikov(s)
    }
    fn format_elem(&self, a: &NovikovScalar) -> String {
        a.to_string()
    }
}

/// `Lambda[z^V]` for a lattice of the given rank.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LaurentRing {
    pub rank: usize,
}

impl CoefficientRing for LaurentRing {
    type Elem = LaurentElement;

    fn zero(&self) -> LaurentElement {
        LaurentElement::zero(self.rank)
    }
    fn one(&self) -> LaurentElement {
        LaurentElement::one(self.rank)
    }
    fn add(&self, a: &LaurentElement, b: &LaurentElement) -> LaurentElement {
        a.add(b)
    }
    fn neg(&self, a: &LaurentElement) -> LaurentElement {
        a.neg()
    }
    fn mul(&self, a: &LaurentElement, b: &LaurentElement) -> LaurentElement {
        a.mul(b)
    }
    fn is_zero(&self, a: &LaurentElement) -> bool {
        a.is_exact_zero()
    }
    fn zero_status(&self, a: &LaurentElement) -> ZeroStatus {
        a.zero_status()
    }
    fn pivot_weight(&self, a: &LaurentElement) -> Option<BigRational> {
        // fewer monomials keep elimination sparse; weight by support size
        Some(BigRational::from_integer((a.num_monomials() as i64).into()))
    }
    fn parse_elem(&self, s: &str) -> Result<LaurentElement, ParseError> {
        parse_laurent(s, self.rank)
    }
    fn format_elem(&self, a: &LaurentElement) -> String {
        a.to_string()
    }
}

/// `Lambda[z^Q]`, one variable with rational exponents.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct ExpPolyRing;

impl CoefficientRing for ExpPolyRing {
    type Elem = ExpPolynomial;

    fn zero(&self) -> ExpPolynomial {
        ExpPolynomial::zero()
    }
    fn one(&self) -> ExpPolynomial {
        ExpPolynomial::one()
    }
    fn add(&self, a: &ExpPolynomial, b: &ExpPolynomial) -> ExpPolynomial {
        a.add(b)
    }
    fn neg(&self, a: &ExpPolynomial) -> ExpPolynomial {
        a.neg()
    }
    fn mul(&self, a: &ExpPolynomial, b: &ExpPolynomial) -> ExpPolynomial {
        a.mul(b)
    }
    fn is_zero(&self, a: &ExpPolynomial) -> bool {
        a.is_zero()
    }
    fn zero_status(&self, a: &ExpPolynomial) -> ZeroStatus {
        a.zero_status()
    }
    fn pivot_weight(&self, a: &ExpPolynomial) -> Option<BigRational> {
        Some(BigRational::from_integer((a.num_terms() as i64).into()))
    }
    fn parse_elem(&self, s: &str) -> Result<ExpPolynomial, ParseError> {
        parse_exp_poly(s)
    }
    fn format_elem(&self, a: &ExpPolynomial) -> String {
        a.to_string()
    }
}
