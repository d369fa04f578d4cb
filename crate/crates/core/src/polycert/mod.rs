//! Exact polynomial and rational-function arithmetic, plus sign and supremum
//! certification over integer half-lines.

mod poly;
mod ratfunc;
mod ray;

use num_bigint::BigInt;
use thiserror::Error;

pub use poly::{poly_arith, PolyOp, Polynomial};
pub use ratfunc::{rf_arith, Direction, Limit, RationalFunction, RfOp};
pub use ray::{
    closest_to_zero_with_sign, first_nonzero_on_ray, integer_root_free_bound, sign_on_ray, sup_on_ray, Ray, RaySign,
    RaySup, MAX_SCAN_BOUND,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero denominator polynomial")]
    ZeroDenominator,
    #[error("the zero polynomial has no root bound")]
    ZeroPolynomial,
    #[error("denominator vanishes at n = {index} on the ray")]
    PoleOnRay { index: i64 },
    #[error("root bound {bound} exceeds the exhaustive scan limit")]
    ScanTooLong { bound: BigInt },
}
