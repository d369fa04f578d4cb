//! Finite descriptions of bi-infinite weight-modulus sequences.
//!
//! A [`WeightSpec`] lists `|β_L|, …, |β_R|` explicitly and describes the two
//! infinite ends by closed forms: the left tail covers `n < L`, the right tail
//! `n > R`. Only moduli are stored; every question answered by this crate
//! depends on `|β_n|` alone.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::polycert::{sign_on_ray, sup_on_ray, PolyError, RationalFunction, Ray, RaySign, RaySup};
use crate::rational::{to_f64_nearest, Rational};

/// Degree cap on tail numerators and denominators.
pub const MAX_TAIL_DEGREE: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TailSpec {
    Constant(Rational),
    RationalForm(RationalFunction),
}

impl TailSpec {
    pub fn as_function(&self) -> RationalFunction {
        match self {
            TailSpec::Constant(c) => RationalFunction::from(c.clone()),
            TailSpec::RationalForm(f) => f.clone(),
        }
    }

    pub fn eval(&self, n: i64) -> Option<Rational> {
        match self {
            TailSpec::Constant(c) => Some(c.clone()),
            TailSpec::RationalForm(f) => f.eval_int(n),
        }
    }

    fn scaled(&self, factor: &Rational) -> TailSpec {
        match self {
            TailSpec::Constant(c) => TailSpec::Constant(c * factor),
            TailSpec::RationalForm(f) => TailSpec::RationalForm(f.scale(factor)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSpec {
    pub window_start: i64,
    pub window_values: Vec<Rational>,
    pub left_tail: TailSpec,
    pub right_tail: TailSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("{side} tail has a pole at n = {index}")]
    TailPole { side: Side, index: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("window must hold at least one value")]
    EmptyWindow,
    #[error("zero weight at n = {index}")]
    ZeroWeight { index: i64 },
    #[error("negative weight modulus {value} at n = {index}")]
    NegativeWeight { index: i64, value: Rational },
    #[error("{side} tail constant {value} is not positive")]
    NonPositiveConstant { side: Side, value: Rational },
    #[error("{side} tail degree {degree} exceeds the cap of {MAX_TAIL_DEGREE}")]
    DegreeCap { side: Side, degree: usize },
    #[error("{side} tail is unbounded: deg(num) = {num_degree} > deg(den) = {den_degree}")]
    UnboundedTail { side: Side, num_degree: usize, den_degree: usize },
    #[error("{side} tail has a pole on its domain at n = {index}")]
    TailPole { side: Side, index: i64 },
    #[error("{side} tail is not positive on its domain (value {value} at n = {index})")]
    TailNotPositive { side: Side, index: i64, value: Rational },
    #[error("{side} tail cannot be certified: {source}")]
    Uncertifiable { side: Side, source: PolyError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Certified `sup_n |β_n|`; present exactly when there are no violations.
    pub sup_bound: Option<Rational>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl WeightSpec {
    pub fn new(window_start: i64, window_values: Vec<Rational>, left_tail: TailSpec, right_tail: TailSpec) -> Self {
        WeightSpec { window_start, window_values, left_tail, right_tail }
    }

    /// Index of the last window value.
    pub fn window_end(&self) -> i64 {
        self.window_start + self.window_values.len() as i64 - 1
    }

    pub fn tail(&self, side: Side) -> &TailSpec {
        match side {
            Side::Left => &self.left_tail,
            Side::Right => &self.right_tail,
        }
    }

    /// Domain of a tail: `n < L` on the left, `n > R` on the right.
    pub fn tail_domain(&self, side: Side) -> Ray {
        match side {
            Side::Left => Ray::AtMost(self.window_start - 1),
            Side::Right => Ray::AtLeast(self.window_end() + 1),
        }
    }

    pub fn eval_exact(&self, n: i64) -> Result<Rational, WeightError> {
        let side = if n < self.window_start {
            Side::Left
        } else if n <= self.window_end() {
            return Ok(self.window_values[(n - self.window_start) as usize].clone());
        } else {
            Side::Right
        };
        self.tail(side).eval(n).ok_or(WeightError::TailPole { side, index: n })
    }

    pub fn eval_float(&self, n: i64) -> Result<f64, WeightError> {
        self.eval_exact(n).map(|v| to_f64_nearest(&v))
    }

    /// `|β_n|²`.
    pub fn eval_sq(&self, n: i64) -> Result<Rational, WeightError> {
        self.eval_exact(n).map(|v| &v * &v)
    }

    /// The same sequence multiplied by a positive rational.
    pub fn scaled(&self, factor: &Rational) -> WeightSpec {
        WeightSpec {
            window_start: self.window_start,
            window_values: self.window_values.iter().map(|v| v * factor).collect(),
            left_tail: self.left_tail.scaled(factor),
            right_tail: self.right_tail.scaled(factor),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut sup: Option<Rational> = None;
        let mut raise = |v: Rational| {
            if sup.as_ref().is_none_or(|s| v > *s) {
                sup = Some(v);
            }
        };
        if self.window_values.is_empty() {
            violations.push(Violation::EmptyWindow);
        }
        for (offset, value) in self.window_values.iter().enumerate() {
            let index = self.window_start + offset as i64;
            if value.is_zero() {
                violations.push(Violation::ZeroWeight { index });
            } else if value.is_negative() {
                violations.push(Violation::NegativeWeight { index, value: value.clone() });
            } else {
                raise(value.clone());
            }
        }
        for side in [Side::Left, Side::Right] {
            match validate_tail(self.tail(side), side, self.tail_domain(side)) {
                Ok(tail_sup) => raise(tail_sup),
                Err(v) => violations.extend(v),
            }
        }
        let sup_bound = if violations.is_empty() { sup } else { None };
        ValidationReport { violations, sup_bound }
    }
}

fn validate_tail(tail: &TailSpec, side: Side, domain: Ray) -> Result<Rational, Vec<Violation>> {
    let f = match tail {
        TailSpec::Constant(c) if c.is_positive() => return Ok(c.clone()),
        TailSpec::Constant(c) => return Err(vec![Violation::NonPositiveConstant { side, value: c.clone() }]),
        TailSpec::RationalForm(f) => f,
    };
    let num_degree = f.num().degree().unwrap_or(0);
    let den_degree = f.den().degree().unwrap_or(0);
    let mut violations = Vec::new();
    for degree in [num_degree, den_degree] {
        if degree > MAX_TAIL_DEGREE {
            violations.push(Violation::DegreeCap { side, degree });
            return Err(violations);
        }
    }
    if num_degree > den_degree {
        violations.push(Violation::UnboundedTail { side, num_degree, den_degree });
        return Err(violations);
    }
    let uncertifiable = |source: PolyError| match source {
        PolyError::PoleOnRay { index } => Violation::TailPole { side, index },
        other => Violation::Uncertifiable { side, source: other },
    };
    let sign = sign_on_ray(f, domain).map_err(|e| vec![uncertifiable(e)])?;
    let bad_index = match sign {
        RaySign::StrictlyPositive => None,
        RaySign::IdenticallyZero => Some(domain.endpoint()),
        RaySign::HasZeroAt { zeros, .. } => zeros.first().copied(),
        RaySign::StrictlyNegative => Some(domain.endpoint()),
        RaySign::MixedSign { negative, zeros, .. } => Some(match (zeros.first(), domain) {
            (Some(&z), Ray::AtMost(_)) => z.max(negative),
            (Some(&z), Ray::AtLeast(_)) => z.min(negative),
            (None, _) => negative,
        }),
    };
    if let Some(index) = bad_index {
        let value = f.eval_int(index).unwrap_or_default();
        return Err(vec![Violation::TailNotPositive { side, index, value }]);
    }
    match sup_on_ray(f, domain).map_err(|e| vec![uncertifiable(e)])? {
        RaySup::Bounded { sup, .. } => Ok(sup),
        RaySup::Unbounded => unreachable!("deg(num) <= deg(den) bounds the tail"),
    }
}
