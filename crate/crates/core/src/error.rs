//! Error types shared across the engine.

use thiserror::Error;

/// Parse failure for any of the text formats (scalars, Laurent elements,
/// fixture files). Carries a human-readable message and, when known, a
/// position within the input.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("parse error: {msg}")]
pub struct ParseError {
    pub msg: String,
}

impl ParseError {
    pub fn new(msg: impl Into<String>) -> Self {
        ParseError { msg: msg.into() }
    }
}

/// Arithmetic-level failures in the Novikov field and rings over it.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ArithError {
    /// The element cannot be distinguished from 0 at its current cutoff,
    /// so the requested operation (inversion, pivot selection, ...) is
    /// undecidable.
    #[error("element is zero within precision (cutoff {cutoff}); operation undecidable")]
    ZeroWithinPrecision { cutoff: String },
    /// A zero element was passed where a nonzero one is required.
    #[error("zero input where a nonzero element is required")]
    ZeroInput,
    /// Guard for the zero-finding algorithm: with rational input data every
    /// envelope breakpoint is rational, so hitting this indicates an
    /// internal bug (or a future irrational-exponent extension).
    #[error("irrational breakpoint encountered in envelope computation")]
    IrrationalBreakpoint,
}

/// Structural failures in categories, modules and their operations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("non-composable input string: {0}")]
    NonComposable(String),
    #[error("no units designated for this category")]
    NoUnitsDesignated,
    #[error("unit not designated for object `{0}`")]
    UnitNotDesignated(String),
    #[error("incompatible module kinds for convolution: {0}")]
    IncompatibleKinds(String),
    #[error("convolution does not have the required shape: {0}")]
    WrongShape(String),
    #[error("morphism is not closed: {0}")]
    NotClosed(String),
    #[error("functor is not strict: {0}")]
    NotStrict(String),
    #[error("decoration inconsistent: {0}")]
    DecorationInconsistent(String),
    #[error("decoration mismatch: {0}")]
    DecorationMismatch(String),
    #[error("not a cocycle: d(s) != 0 ({0})")]
    NotCocycle(String),
    #[error("arithmetic failure: {0}")]
    Arith(#[from] ArithError),
}

/// Failures in the affinoid/tropical toolkit.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AffinoidError {
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("0 is not in the interior of the polytope")]
    NotInterior,
    #[error("tied leading terms at 0: {0}; no unique dominating monomial, refusing")]
    TiedLeadingTerms(String),
    #[error("sampled point not acyclic: {0}")]
    SampledPointNotAcyclic(String),
    #[error("refusal: {0}")]
    Refusal(String),
    #[error("arithmetic failure: {0}")]
    Arith(#[from] ArithError),
}

/// Failures in sheaf-analysis operations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SheafError {
    #[error("generic rank not attained on the line: all candidate minors vanish identically")]
    AllMinorsZero,
    #[error("not a cocycle: {0}")]
    NotCocycle(String),
    #[error("unit not designated for object `{0}`")]
    UnitNotDesignated(String),
    #[error("arithmetic failure: {0}")]
    Arith(#[from] ArithError),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
}
