//! Laurent rings over a lattice: finitely supported maps from Z^n to
//! Novikov scalars, torus points, evaluation, and the base change onto a
//! real line through the character lattice.
//!
//! Invariants:
//! - no zero values are stored in a support map;
//! - all exponent vectors of one element have the same length (the rank);
//! - coefficients are exact unless explicitly flagged by their cutoffs.

use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{ArithError, ParseError};
use crate::exppoly::ExpPolynomial;
use crate::novikov::{parse_novikov, split_top_level, Cutoff, NovikovScalar, ZeroStatus};

/// A free abelian group Z^n indexing the torus characters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    pub rank: usize,
    pub basis_names: Option<Vec<String>>,
}

impl Lattice {
    pub fn of_rank(rank: usize) -> Self {
        Lattice {
            rank,
            basis_names: None,
        }
    }
}

/// Element of `Lambda[z^V]`: a finite sum of monomials `a_v * z^v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentElement {
    rank: usize,
    support: BTreeMap<Vec<i64>, NovikovScalar>,
}

impl LaurentElement {
    pub fn zero(rank: usize) -> Self {
        LaurentElement {
            rank,
            support: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: NovikovScalar) -> Self {
        let mut out = Self::zero(rank);
        if !c.is_exact_zero() {
            out.support.insert(vec![0; rank], c);
        }
        out
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, NovikovScalar::one())
    }

    /// The monomial `c * z^v`.
    pub fn monomial(c: NovikovScalar, v: Vec<i64>) -> Self {
        let rank = v.len();
        let mut out = Self::zero(rank);
        if !c.is_exact_zero() {
            out.support.insert(v, c);
        }
        out
    }

    /// The coordinate character `z^v`.
    pub fn z_pow(v: Vec<i64>) -> Self {
        Self::monomial(NovikovScalar::one(), v)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn support(&self) -> impl Iterator<Item = (&Vec<i64>, &NovikovScalar)> {
        self.support.iter()
    }

    pub fn num_monomials(&self) -> usize {
        self.support.len()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// All coefficient cutoffs infinite.
    pub fn is_exact(&self) -> bool {
        self.support.values().all(|c| c.is_exact())
    }

    pub fn zero_status(&self) -> ZeroStatus {
        if self.support.values().any(|c| c.zero_status() == ZeroStatus::NonZero) {
            ZeroStatus::NonZero
        } else if self.support.is_empty() {
            ZeroStatus::Zero
        } else {
            ZeroStatus::Indeterminate
        }
    }

    fn normalized(mut self) -> Self {
        self.support.retain(|_, c| !c.is_exact_zero());
        self
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut support = self.support.clone();
        for (v, c) in &rhs.support {
            match support.get_mut(v) {
                Some(e) => *e = &*e + c,
                None => {
                    support.insert(v.clone(), c.clone());
                }
            }
        }
        LaurentElement {
            rank: self.rank,
            support,
        }
        .normalized()
    }

    pub fn neg(&self) -> Self {
        LaurentElement {
            rank: self.rank,
            support: self
                .support
                .iter()
                .map(|(v, c)| (v.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut support: BTreeMap<Vec<i64>, NovikovScalar> = BTreeMap::new();
        for (v1, c1) in &self.support {
            for (v2, c2) in &rhs.support {
                let v: Vec<i64> = v1.iter().zip(v2).map(|(a, b)| a + b).collect();
                let prod = c1 * c2;
                match support.get_mut(&v) {
                    Some(e) => *e = &*e + &prod,
                    None => {
                        support.insert(v, prod);
                    }
                }
            }
        }
        LaurentElement {
            rank: self.rank,
            support,
        }
        .normalized()
    }

    pub fn scale(&self, c: &NovikovScalar) -> Self {
        LaurentElement {
            rank: self.rank,
            support: self
                .support
                .iter()
                .map(|(v, a)| (v.clone(), a * c))
                .collect(),
        }
        .normalized()
    }

    /// Multiply by the character `z^w`.
    pub fn twist(&self, w: &[i64]) -> Self {
        assert_eq!(self.rank, w.len(), "rank mismatch");
        LaurentElement {
            rank: self.rank,
            support: self
                .support
                .iter()
                .map(|(v, c)| (v.iter().zip(w).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Substitute `z -> z^{-1}` coordinatewise.
    pub fn invert_variables(&self) -> Self {
        LaurentElement {
            rank: self.rank,
            support: self
                .support
                .iter()
                .map(|(v, c)| (v.iter().map(|a| -a).collect(), c.clone()))
                .collect(),
        }
    }

    /// Evaluate at a torus point: `sum a_v * p^v`, exact over the finite
    /// support. Cutoffs of the point's coordinates propagate.
    pub fn eval(&self, p: &TorusPoint) -> Result<NovikovScalar, ArithError> {
        assert_eq!(self.rank, p.rank(), "rank mismatch");
        let mut acc = NovikovScalar::zero();
        for (v, c) in &self.support {
            let mut term = c.clone();
            for (coord, e) in p.coords.iter().zip(v) {
                if *e != 0 {
                    term = &term * &coord.powi(*e, &p.default_precision)?;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Base change along `z^v -> z^(<alpha, v>)` onto the rank-1 ring with
    /// rational exponents; colliding exponents are summed.
    pub fn real_line_substitute(&self, alpha: &[BigRational]) -> ExpPolynomial {
        assert_eq!(self.rank, alpha.len(), "rank mismatch");
        let mut out = ExpPolynomial::zero();
        for (v, c) in &self.support {
            let e: BigRational = alpha
                .iter()
                .zip(v)
                .map(|(a, b)| a * BigRational::from_integer((*b).into()))
                .fold(BigRational::zero(), |acc, x| acc + x);
            out.add_term(e, c.clone());
        }
        out
    }
}

/// A point of the torus `Spec Lambda[z^V]`: invertible coordinates with
/// determinate valuation. `default_precision` bounds the truncation used
/// when a multi-term coordinate must be inverted.
#[derive(Clone, PartialEq, Debug)]
pub struct TorusPoint {
    coords: Vec<NovikovScalar>,
    default_precision: BigRational,
}

impl TorusPoint {
    pub fn new(coords: Vec<NovikovScalar>, default_precision: BigRational) -> Result<Self, ArithError> {
        for c in &coords {
            if c.zero_status() != ZeroStatus::NonZero {
                return Err(ArithError::ZeroWithinPrecision {
                    cutoff: format!("{c}"),
                });
            }
        }
        Ok(TorusPoint {
            coords,
            default_precision,
        })
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[NovikovScalar] {
        &self.coords
    }

    pub fn identity(rank: usize, default_precision: BigRational) -> Self {
        TorusPoint {
            coords: vec![NovikovScalar::one(); rank],
            default_precision,
        }
    }

    /// `p^v` for a character `v`.
    pub fn power(&self, v: &[i64]) -> Result<NovikovScalar, ArithError> {
        assert_eq!(self.rank(), v.len(), "rank mismatch");
        let mut acc = NovikovScalar::one();
        for (c, e) in self.coords.iter().zip(v) {
            if *e != 0 {
                acc = &acc * &c.powi(*e, &self.default_precision)?;
            }
        }
        Ok(acc)
    }

    /// Componentwise product of two points.
    pub fn mul(&self, other: &TorusPoint) -> Result<TorusPoint, ArithError> {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        TorusPoint::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a * b)
                .collect(),
            self.default_precision.clone(),
        )
    }

    pub fn inverse(&self) -> Result<TorusPoint, ArithError> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.invert(&self.default_precision))
            .collect::<Result<Vec<_>, _>>()?;
        TorusPoint::new(coords, self.default_precision.clone())
    }

    /// Splits each coordinate as `T^(val) * unitary-leading-part`; returns
    /// the valuation vector.
    pub fn valuation_vector(&self) -> Vec<BigRational> {
        self.coords
            .iter()
            .map(|c| {
                c.valuation()
                    .finite()
                    .cloned()
                    .expect("point coordinates have determinate valuation")
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|c| *c == NovikovScalar::one())
    }
}

/// Canonical text form `(scalar)*z^(v1,...,vn)` summands joined by ` + `.
impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .support
            .iter()
            .map(|(v, c)| {
                let exps: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})*z^({})", c, exps.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn parse_laurent(s: &str, rank: usize) -> Result<LaurentElement, ParseError> {
    let s = s.trim();
    if s == "0" {
        return Ok(LaurentElement::zero(rank));
    }
    let mut out = LaurentElement::zero(rank);
    for raw in split_top_level(s, '+') {
        let part = raw.trim();
        let (coeff_str, exp_str) = part
            .rsplit_once("*z^(")
            .ok_or_else(|| ParseError::new(format!("malformed Laurent term `{part}`")))?;
        let exp_str = exp_str
            .strip_suffix(')')
            .ok_or_else(|| ParseError::new(format!("unterminated exponent in `{part}`")))?;
        let coeff_str = coeff_str
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| ParseError::new(format!("coefficient must be parenthesized in `{part}`")))?;
        let v: Vec<i64> = exp_str
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| ParseError::new(format!("invalid exponent `{x}`")))
            })
            .collect::<Result<_, _>>()?;
        if v.len() != rank {
            return Err(ParseError::new(format!(
                "exponent vector length {} != rank {rank}",
                v.len()
            )));
        }
        let c = parse_novikov(coeff_str)?;
        out = out.add(&LaurentElement::monomial(c, v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{rat, rat_int};

    fn prec() -> BigRational {
        rat_int(24)
    }

    #[test]
    fn eval_at_one() {
        // z - 1 at p = (1) is 0
        let f = LaurentElement::z_pow(vec![1]).sub(&LaurentElement::one(1));
        let p = TorusPoint::identity(1, prec());
        assert!(f.eval(&p).unwrap().is_exact_zero());
    }

    #[test]
    fn eval_at_t() {
        // z - T at p = (T) is 0
        let f = LaurentElement::z_pow(vec![1])
            .sub(&LaurentElement::constant(1, NovikovScalar::t_pow(1, 1)));
        let p = TorusPoint::new(vec![NovikovScalar::t_pow(1, 1)], prec()).unwrap();
        assert!(f.eval(&p).unwrap().is_exact_zero());
    }

    #[test]
    fn eval_two_vars() {
        // z1*z2 + T at p = (T, T^2) is T^3 + T
        let f = LaurentElement::z_pow(vec![1, 1])
            .add(&LaurentElement::constant(2, NovikovScalar::t_pow(1, 1)));
        let p = TorusPoint::new(
            vec![NovikovScalar::t_pow(1, 1), NovikovScalar::t_pow(2, 1)],
            prec(),
        )
        .unwrap();
        let got = f.eval(&p).unwrap();
        let want = &NovikovScalar::t_pow(3, 1) + &NovikovScalar::t_pow(1, 1);
        assert_eq!(got, want);
    }

    #[test]
    fn real_line_collision() {
        // z1 - z2 under alpha = (1,1) collapses to 0
        let f = LaurentElement::z_pow(vec![1, 0]).sub(&LaurentElement::z_pow(vec![0, 1]));
        let g = f.real_line_substitute(&[rat_int(1), rat_int(1)]);
        assert!(g.is_zero());
    }

    #[test]
    fn real_line_substitution() {
        // z1 + z2 under alpha = (1,2) becomes z + z^2
        let f = LaurentElement::z_pow(vec![1, 0]).add(&LaurentElement::z_pow(vec![0, 1]));
        let g = f.real_line_substitute(&[rat_int(1), rat_int(2)]);
        assert_eq!(g.num_terms(), 2);
        assert!(g.coeff(&rat_int(1)).is_some());
        assert!(g.coeff(&rat_int(2)).is_some());
    }

    #[test]
    fn display_roundtrip() {
        let f = LaurentElement::monomial(
            &NovikovScalar::one() - &NovikovScalar::t_pow(1, 2),
            vec![2, -1],
        )
        .add(&LaurentElement::constant(2, NovikovScalar::from_int(-3)));
        let s = f.to_string();
        assert_eq!(parse_laurent(&s, 2).unwrap(), f, "roundtrip of `{s}`");
    }

    #[test]
    fn eval_is_ring_hom() {
        let f = LaurentElement::z_pow(vec![1]).add(&LaurentElement::constant(
            1,
            NovikovScalar::t_pow(1, 1),
        ));
        let g = LaurentElement::z_pow(vec![-1]).sub(&LaurentElement::one(1));
        let p = TorusPoint::new(
            vec![&NovikovScalar::from_int(2) + &NovikovScalar::t_pow(1, 1)],
            prec(),
        )
        .unwrap();
        let lhs = f.mul(&g).eval(&p).unwrap();
        let rhs = &f.eval(&p).unwrap() * &g.eval(&p).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn point_with_cutoff_propagates() {
        let c = &NovikovScalar::one() + &NovikovScalar::zero_mod(rat(3, 1));
        let p = TorusPoint::new(vec![c], prec()).unwrap();
        let f = LaurentElement::z_pow(vec![2]);
        let got = f.eval(&p).unwrap();
        assert!(got.cutoff().is_finite());
    }
}
