//! Dual-path evaluation of finite trigonometric sums over roots of unity.
//!
//! Every identity is computed twice: once by direct high-precision summation
//! and once from its exact closed form (or semi-closed right side). The two
//! are compared under the tolerance policy in [`numeric::PrecisionContext`].

pub mod charsums;
pub mod check;
pub mod error;
pub mod numeric;
pub mod reciprocity;
pub mod residues;
pub mod rootsums;
pub mod trigsums;
pub mod twoperiod;

pub use check::{CheckReport, Params, Value};
pub use error::{Error, Result};
pub use numeric::{
    approx_equal, eval_poly, make_context, root_of_unity, Float, GaussianRational, HighComplex,
    PrecisionContext, Rational,
};
