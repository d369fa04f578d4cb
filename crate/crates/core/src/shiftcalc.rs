//! The self-commutator diagonal `d_n = |β_n|² - |β_{n-1}|²` and the squared
//! transformed weights `γ_n² = |β_n|² d_{n+1} / d_n`, exactly.
//!
//! Each quantity is kept in three pieces: a rational function for the left
//! tail, an explicit list across the window and both seams, and a rational
//! function for the right tail.

use std::cmp::Ordering;

use num_traits::Zero;
use thiserror::Error;

use crate::polycert::{sup_on_ray, Direction, Limit, PolyError, RationalFunction, Ray, RaySup};
use crate::rational::Rational;
use crate::weightspec::{WeightError, WeightSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error("not hyponormal at n = {0}: d_n < 0")]
    NotHyponormalAtIndex(i64),
    #[error("γ² is undefined at n = {0} (d_n = 0 < d_(n+1))")]
    GammaUndefined(i64),
    #[error("d_n vanishes at n = {0} inside the requested ray")]
    ZeroDiagonal(i64),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Diagonal of `Q_T = T*T - TT*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QDiagonal {
    window_start: i64,
    window_end: i64,
    /// `|β_n|²` on the left tail.
    left_sq: RationalFunction,
    right_sq: RationalFunction,
    /// Valid for `n < L`.
    pub left_tail_form: RationalFunction,
    /// Valid for `n > R + 1`.
    pub right_tail_form: RationalFunction,
    /// `d_L, …, d_{R+1}`.
    pub seam_values: Vec<Rational>,
}

impl QDiagonal {
    pub fn window_start(&self) -> i64 {
        self.window_start
    }

    pub fn window_end(&self) -> i64 {
        self.window_end
    }

    pub fn at(&self, n: i64) -> Rational {
        if n < self.window_start {
            self.left_tail_form.eval_int(n).expect("left tail form is pole-free on n < L")
        } else if n <= self.window_end + 1 {
            self.seam_values[(n - self.window_start) as usize].clone()
        } else {
            self.right_tail_form.eval_int(n).expect("right tail form is pole-free on n > R + 1")
        }
    }
}

/// `f(n)² - f(n-1)²`.
fn difference_of_squares(sq: &RationalFunction) -> RationalFunction {
    sq.sub(&sq.shift_index(-1))
}

pub fn q_diagonal(spec: &WeightSpec) -> Result<QDiagonal, ShiftError> {
    let left_sq = spec.left_tail.as_function().square();
    let right_sq = spec.right_tail.as_function().square();
    let (l, r) = (spec.window_start, spec.window_end());
    let seam_values = (l..=r + 1)
        .map(|n| Ok(spec.eval_sq(n)? - spec.eval_sq(n - 1)?))
        .collect::<Result<Vec<_>, WeightError>>()?;
    Ok(QDiagonal {
        window_start: l,
        window_end: r,
        left_tail_form: difference_of_squares(&left_sq),
        right_tail_form: difference_of_squares(&right_sq),
        left_sq,
        right_sq,
        seam_values,
    })
}

/// Diagonal entry of the pseudoinverse root, kept under the square root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PinvEntry {
    /// The entry is `d^(-1/2)` for the carried `d > 0`.
    ReciprocalRoot(Rational),
    Zero,
}

pub fn pinv_sqrt_diagonal(q: &QDiagonal, n: i64) -> Result<PinvEntry, ShiftError> {
    let d = q.at(n);
    match d.cmp(&Rational::zero()) {
        Ordering::Less => Err(ShiftError::NotHyponormalAtIndex(n)),
        Ordering::Equal => Ok(PinvEntry::Zero),
        Ordering::Greater => Ok(PinvEntry::ReciprocalRoot(d)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GammaValue {
    Value(Rational),
    /// `d_n = 0` while `d_{n+1} ≠ 0`.
    Undefined,
}

impl GammaValue {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            GammaValue::Value(v) => Some(v),
            GammaValue::Undefined => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GammaTail {
    Form(RationalFunction),
    /// `d` vanishes identically on the tail, so every transformed weight there is 0.
    FlatZero,
}

/// Where the transformed weights vanish identically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlatRegion {
    None,
    /// `γ_n = 0` for every `n ≥` this index, and not for the one before.
    From(i64),
    Everywhere,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GammaBound {
    BoundedWithSup { sup: Rational, attained_at: Option<i64> },
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaAnalysis {
    q: QDiagonal,
    /// `|β_n|²` for `n` in `[L-1, R+1]`.
    explicit_sq: Vec<Rational>,
    /// Valid for `n ≤ L - 2`.
    pub left_tail_form: GammaTail,
    /// Valid for `n ≥ R + 2`.
    pub right_tail_form: GammaTail,
    pub left_limit: Limit,
    pub right_limit: Limit,
    pub flat_region: FlatRegion,
}

fn gamma_tail(sq: &RationalFunction, d: &RationalFunction) -> GammaTail {
    if d.is_zero() {
        return GammaTail::FlatZero;
    }
    let ratio = d.shift_index(1).div(d).expect("nonzero divisor");
    GammaTail::Form(sq.mul(&ratio))
}

fn tail_limit(tail: &GammaTail, direction: Direction) -> Limit {
    match tail {
        GammaTail::Form(f) => f.limit_at_infinity(direction),
        GammaTail::FlatZero => Limit::Finite(Rational::zero()),
    }
}

pub fn gamma_analysis(spec: &WeightSpec, q: &QDiagonal) -> Result<GammaAnalysis, ShiftError> {
    let (l, r) = (spec.window_start, spec.window_end());
    let explicit_sq = (l - 1..=r + 1).map(|n| spec.eval_sq(n)).collect::<Result<Vec<_>, _>>()?;
    let left_tail_form = gamma_tail(&q.left_sq, &q.left_tail_form);
    let right_tail_form = gamma_tail(&q.right_sq, &q.right_tail_form);
    let left_limit = tail_limit(&left_tail_form, Direction::NegInfinity);
    let right_limit = tail_limit(&right_tail_form, Direction::PosInfinity);
    let flat_region = flat_region(q);
    Ok(GammaAnalysis { q: q.clone(), explicit_sq, left_tail_form, right_tail_form, left_limit, right_limit, flat_region })
}

/// `γ_n = 0` exactly when `d_{n+1} = 0` and `d_n ≠ 0`, or both vanish; the
/// region is a final segment when `d` vanishes on a final segment.
fn flat_region(q: &QDiagonal) -> FlatRegion {
    if !q.right_tail_form.is_zero() {
        return FlatRegion::None;
    }
    // Smallest z with d_n = 0 for all n >= z, searched down through the seams.
    let mut z = q.window_end + 2;
    while z > q.window_start && q.seam_values[(z - 1 - q.window_start) as usize].is_zero() {
        z -= 1;
    }
    if z == q.window_start && q.left_tail_form.is_zero() {
        return FlatRegion::Everywhere;
    }
    if z == q.window_start {
        // Left tail zeros directly below the window extend the flat segment.
        while q.left_tail_form.eval_int(z - 1).is_some_and(|d| d.is_zero()) {
            z -= 1;
        }
    }
    FlatRegion::From(z - 1)
}

impl GammaAnalysis {
    pub fn q(&self) -> &QDiagonal {
        &self.q
    }

    fn weight_sq(&self, n: i64) -> Rational {
        let (l, r) = (self.q.window_start, self.q.window_end);
        if n < l - 1 {
            self.q.left_sq.eval_int(n).expect("pole-free tail")
        } else if n <= r + 1 {
            self.explicit_sq[(n - l + 1) as usize].clone()
        } else {
            self.q.right_sq.eval_int(n).expect("pole-free tail")
        }
    }

    /// `γ_n²` from the pointwise definition.
    pub fn at(&self, n: i64) -> GammaValue {
        let d = self.q.at(n);
        let d_next = self.q.at(n + 1);
        if d.is_zero() {
            return if d_next.is_zero() { GammaValue::Value(Rational::zero()) } else { GammaValue::Undefined };
        }
        GammaValue::Value(self.weight_sq(n) * d_next / d)
    }

    fn defined_at(&self, n: i64) -> Result<Rational, ShiftError> {
        match self.at(n) {
            GammaValue::Value(v) => Ok(v),
            GammaValue::Undefined => Err(ShiftError::GammaUndefined(n)),
        }
    }

    /// Supremum of `γ²` over the explicit indices `lo..=hi` and a tail ray.
    fn sup_over(&self, lo: i64, hi: i64, tail: Option<(&GammaTail, Ray)>) -> Result<GammaBound, ShiftError> {
        let mut best: Option<(Rational, Option<i64>)> = None;
        let mut offer = |v: Rational, at: Option<i64>| {
            let better = match &best {
                None => true,
                Some((b, b_at)) => v > *b || (v == *b && b_at.is_none() && at.is_some()),
            };
            if better {
                best = Some((v, at));
            }
        };
        for n in lo..=hi {
            if self.q.at(n).is_zero() {
                return Err(ShiftError::ZeroDiagonal(n));
            }
            offer(self.defined_at(n)?, Some(n));
        }
        match tail {
            Some((GammaTail::FlatZero, ray)) => return Err(ShiftError::ZeroDiagonal(ray.endpoint())),
            Some((GammaTail::Form(f), ray)) => match sup_on_ray(f, ray).map_err(|e| match e {
                PolyError::PoleOnRay { index } => ShiftError::ZeroDiagonal(index),
                other => ShiftError::Poly(other),
            })? {
                RaySup::Unbounded => return Ok(GammaBound::Unbounded),
                RaySup::Bounded { sup, attained_at } => offer(sup, attained_at),
            },
            None => {}
        }
        let (sup, attained_at) = best.expect("nonempty index set");
        Ok(GammaBound::BoundedWithSup { sup, attained_at })
    }
}

/// Supremum of `γ_n²` over `n ≤ upto`. Requires `d_n > 0` for every `n ≤ upto + 1`
/// except possibly `d_{upto+1} = 0`.
pub fn gamma_bounded_on_left_ray(ga: &GammaAnalysis, upto: i64) -> Result<GammaBound, ShiftError> {
    let l = ga.q.window_start;
    let tail_end = upto.min(l - 2);
    ga.sup_over(l - 1, upto, Some((&ga.left_tail_form, Ray::AtMost(tail_end))))
}

/// Supremum of `γ_n²` over `n ≥ from`, under the same positivity requirement.
pub fn gamma_bounded_on_right_ray(ga: &GammaAnalysis, from: i64) -> Result<GammaBound, ShiftError> {
    let r = ga.q.window_end;
    let tail_start = from.max(r + 2);
    ga.sup_over(from, r + 1, Some((&ga.right_tail_form, Ray::AtLeast(tail_start))))
}

/// Supremum over every integer; needs `d_n > 0` everywhere.
pub fn gamma_bounded_everywhere(ga: &GammaAnalysis) -> Result<GammaBound, ShiftError> {
    let left = gamma_bounded_on_left_ray(ga, ga.q.window_start - 2)?;
    let right = gamma_bounded_on_right_ray(ga, ga.q.window_start - 1)?;
    Ok(match (left, right) {
        (GammaBound::Unbounded, _) | (_, GammaBound::Unbounded) => GammaBound::Unbounded,
        (GammaBound::BoundedWithSup { sup: a, attained_at: a_at }, GammaBound::BoundedWithSup { sup: b, attained_at: b_at }) => {
            if a > b || (a == b && a_at.is_some()) {
                GammaBound::BoundedWithSup { sup: a, attained_at: a_at }
            } else {
                GammaBound::BoundedWithSup { sup: b, attained_at: b_at }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycert::Polynomial;
    use crate::rational::{int, rat};
    use crate::fixtures::*;
    use crate::weightspec::TailSpec;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(num), Polynomial::from_ints(den)).unwrap()
    }

    fn analyse(spec: &WeightSpec) -> GammaAnalysis {
        gamma_analysis(spec, &q_diagonal(spec).unwrap()).unwrap()
    }

    #[test]
    fn example_one_diagonal() {
        let q = q_diagonal(&example1()).unwrap();
        assert_eq!(q.at(0), int(3));
        assert_eq!(q.at(-1), rat(3, 4));
        assert_eq!(q.at(1), int(0));
        assert_eq!(q.at(7), int(0));
    }

    #[test]
    fn example_three_right_tail_is_flat() {
        let q = q_diagonal(&example3()).unwrap();
        assert_eq!(q.at(5), int(0));
        assert_eq!(q.at(1), int(3));
        assert!(q.right_tail_form.is_zero());
    }

    #[test]
    fn pinv_entries() {
        let q = q_diagonal(&example1()).unwrap();
        assert_eq!(pinv_sqrt_diagonal(&q, -1).unwrap(), PinvEntry::ReciprocalRoot(rat(3, 4)));
        assert_eq!(pinv_sqrt_diagonal(&q, 4).unwrap(), PinvEntry::Zero);
        let bad = WeightSpec::new(0, vec![int(2), int(1)], TailSpec::Constant(int(1)), TailSpec::Constant(int(2)));
        let q = q_diagonal(&bad).unwrap();
        assert_eq!(pinv_sqrt_diagonal(&q, 1), Err(ShiftError::NotHyponormalAtIndex(1)));
    }

    #[test]
    fn gamma_examples() {
        let ga = analyse(&example1());
        assert_eq!(ga.at(-1), GammaValue::Value(int(4)));
        assert_eq!(ga.at(-2), GammaValue::Value(rat(27, 20)));
        assert_eq!(ga.left_limit, Limit::Finite(int(0)));
        assert_eq!(ga.right_tail_form, GammaTail::FlatZero);
        assert_eq!(ga.flat_region, FlatRegion::From(0));
        for n in 0..6 {
            assert_eq!(ga.at(n), GammaValue::Value(int(0)));
        }

        let ga = analyse(&example2());
        assert_eq!(ga.at(1), GammaValue::Value(rat(9, 4)));
        assert_eq!(ga.at(-1), GammaValue::Value(rat(7, 20)));
        assert_eq!(ga.at(0), GammaValue::Value(rat(80, 63)));
        assert_eq!(ga.right_limit, Limit::Finite(int(4)));
        assert_eq!(ga.left_limit, Limit::Finite(int(0)));
        assert_eq!(ga.flat_region, FlatRegion::None);
    }

    #[test]
    fn gamma_is_undefined_where_a_flat_spot_precedes_a_rise() {
        let ga = analyse(&example3());
        assert_eq!(ga.at(0), GammaValue::Undefined);
        assert_eq!(ga.at(-4), GammaValue::Value(int(0)));
        assert_eq!(ga.at(1), GammaValue::Value(int(0)));
    }

    #[test]
    fn left_ray_bounds() {
        let ga = analyse(&example1());
        assert_eq!(
            gamma_bounded_on_left_ray(&ga, -1).unwrap(),
            GammaBound::BoundedWithSup { sup: int(4), attained_at: Some(-1) }
        );
        let ga = analyse(&example2());
        assert_eq!(
            gamma_bounded_on_right_ray(&ga, 1).unwrap(),
            GammaBound::BoundedWithSup { sup: int(4), attained_at: None }
        );
        assert_eq!(
            gamma_bounded_everywhere(&ga).unwrap(),
            GammaBound::BoundedWithSup { sup: int(4), attained_at: None }
        );
    }

    #[test]
    fn diverging_tail_form_is_unbounded() {
        let mut ga = analyse(&example2());
        ga.left_tail_form = GammaTail::Form(rf(&[0, 0, 1], &[1]));
        assert_eq!(gamma_bounded_on_left_ray(&ga, -2).unwrap(), GammaBound::Unbounded);
    }

    #[test]
    fn flat_spot_inside_requested_ray_is_rejected() {
        let ga = analyse(&example3());
        assert!(gamma_bounded_on_left_ray(&ga, -1).is_err());
    }
}
