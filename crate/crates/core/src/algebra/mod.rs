//! Exact arithmetic for the ground field, multivariate polynomials and
//! normalized rational functions.

mod content;
mod gcd;
mod heugcd;
mod monomial;
mod multipoly;
mod ratfunc;
mod scalar;
mod sparse;

pub use content::{clear_denominators, content_primitive};
pub use gcd::{content_wrt, poly_gcd};
pub use monomial::{grevlex_cmp, lex_cmp, Monomial};
pub use multipoly::{poly_arith, MultiPoly, PolyOp};
pub use ratfunc::{compose_univariate, ratfunc_arith, ratfunc_normalize, RatFunc};
pub use scalar::{scalar_op, FieldSpec, Scalar, ScalarOp};
pub use sparse::{poly_divmod, SparsePoly, TermOrder, YPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("variable context mismatch: {0} vs {1} variables")]
    ContextMismatch(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unrecognized field specification `{0}`")]
    BadFieldSpec(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero polynomial has no content")]
    ZeroPolynomial,
    #[error("denominator vanishes identically after substitution")]
    DenominatorVanishesIdentically,
    #[error("composition requires a univariate outer function")]
    NotUnivariate,
    #[error("variable index {0} out of range")]
    BadVariable(usize),
    #[error("coefficients must be polynomials")]
    NotPolynomialCoefficients,
    #[error("empty divisor list")]
    EmptyDivisorList,
    #[error("operation unsupported in positive characteristic")]
    UnsupportedInPositiveCharacteristic,
}

/// Field operations the Gröbner engine and elimination routines are allowed to
/// use on coefficients. Implementors never need to expose their internals.
pub trait FieldElement: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` for zero.
    fn inverse(&self) -> Option<Self>;
}

impl FieldElement for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero(self.field())
    }
    fn one_like(&self) -> Self {
        Scalar::one(self.field())
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        Scalar::inverse(self)
    }
}

impl FieldElement for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.field(), self.nvars())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.field(), self.nvars())
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        RatFunc::inverse(self).ok()
    }
}
