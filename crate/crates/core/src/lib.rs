//! Exact-arithmetic engine for A-infinity categories over the Novikov
//! field, algebraic families of (bi)modules parametrized by tori, bar
//! convolutions with explicit collapse maps, rank stratification of the
//! resulting complexes, exponential-polynomial zero sets, and tropical
//! analysis over polytopes.
//!
//! Everything is exact: coefficients are Gaussian rationals, exponents
//! are rationals, and precision loss (only introduced by inverting
//! multi-term series) is tracked by explicit cutoffs.

pub mod error;
pub mod exppoly;
pub mod gaussian;
pub mod laurent;
pub mod matrix;
pub mod novikov;
pub mod ring;

pub use error::{AffinoidError, AlgebraError, ArithError, ParseError, SheafError};
pub use exppoly::{exp_poly_zeros, ExpPolynomial, ZeroReport};
pub use gaussian::Gaussian;
pub use laurent::{Lattice, LaurentElement, TorusPoint};
pub use matrix::Matrix;
pub use novikov::{Cutoff, NovikovScalar, Valuation, ZeroStatus};
pub use ring::{CoefficientRing, ExpPolyRing, LaurentRing, NovikovField};
