//! Constructive generators for subfields of transcendence degree one in a
//! rational function field k(x1, ..., xn).
//!
//! Given generators f1, ..., fr of a subfield K, the pipeline in [`luroth`]
//! computes the ideal of relations of the generic point over K by
//! elimination, classifies the transcendence degree of K from the shape of
//! that ideal, and in the degree-one case extracts a single v with
//! K = k(v) together with checkable certificates.

pub mod algebra;
pub mod exactla;
pub mod exprparse;
pub mod groebner;
pub mod luroth;
pub mod membership;
pub mod selftest;

pub use algebra::{FieldSpec, MultiPoly, RatFunc, Scalar};
