//! Floating-point cross-check of the symbolic engine on finite sections of a
//! bilateral weighted shift.
//!
//! A truncation of half-width `N` keeps `e_{-N}, …, e_N`. Only the first and
//! last rows of the commutator see missing neighbours, so everything derived
//! from `Q` is built on the block `|n| ≤ N - 1` and compared on `|n| ≤ N - 2`.

mod crosscheck;
mod spectral;
mod sweep;
mod truncation;
pub mod unbounded;

use thiserror::Error;

pub use crosscheck::{concordance, cross_validate, Concordance, NotPsd, TruncationReport};
pub use spectral::{pinv_half, sqrt_half};
pub use sweep::{norm_sweep, power_norm, NormPoint};
pub use truncation::{
    build_truncation, commutator_q, invariance_check, transformed_operator, Truncation, Violation, WeightSource,
};

/// Null-space threshold relative to the largest `|β_n|²` in the truncation.
pub const DEFAULT_RELATIVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("half-width must be at least 2, got {0}")]
    HalfWidth(usize),
    #[error("weight at n = {0} is not a finite number")]
    NonFiniteWeight(i64),
    #[error("tolerance must be finite and nonnegative, got {0}")]
    Tolerance(f64),
    #[error("matrix is not positive semidefinite: entry {value:e} at row {row}")]
    NotPsd { row: usize, value: f64 },
    #[error("sweep half-widths must be ascending")]
    UnsortedSweep,
    #[error(transparent)]
    Symbolic(#[from] nearsub_core::shiftcalc::ShiftError),
}
