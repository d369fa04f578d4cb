//! Exact sign and supremum analysis of a rational function over every integer
//! of a half-line.
//!
//! Outside the Cauchy root bound `B` of numerator and denominator neither
//! polynomial vanishes, so the sign there is the asymptotic sign for that
//! direction. Inside `[-B, B]` the function is evaluated exactly at every
//! integer. Together these cover the whole ray with finitely many
//! evaluations.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::{eval_integer_coeffs, Polynomial};
use super::ratfunc::{Direction, Limit, RationalFunction};
use super::PolyError;
use crate::rational::{sign_of, Rational};

/// Largest root bound for which the residual segment is enumerated.
pub const MAX_SCAN_BOUND: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ray {
    /// All integers `n <= a`.
    AtMost(i64),
    /// All integers `n >= a`.
    AtLeast(i64),
}

impl Ray {
    pub fn endpoint(self) -> i64 {
        match self {
            Ray::AtMost(a) | Ray::AtLeast(a) => a,
        }
    }

    pub fn contains(self, n: i64) -> bool {
        match self {
            Ray::AtMost(a) => n <= a,
            Ray::AtLeast(a) => n >= a,
        }
    }

    fn outward(self) -> Direction {
        match self {
            Ray::AtMost(_) => Direction::NegInfinity,
            Ray::AtLeast(_) => Direction::PosInfinity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RaySign {
    StrictlyPositive,
    StrictlyNegative,
    IdenticallyZero,
    /// Vanishes exactly at `zeros` (ascending) and has sign `elsewhere` at
    /// every other integer of the ray.
    HasZeroAt { zeros: Vec<i64>, elsewhere: Ordering },
    /// Both signs occur. Witnesses are the points nearest the ray endpoint.
    MixedSign { positive: i64, negative: i64, zeros: Vec<i64> },
}

impl RaySign {
    /// True when no value on the ray is negative.
    pub fn is_nonnegative(&self) -> bool {
        match self {
            RaySign::StrictlyPositive | RaySign::IdenticallyZero => true,
            RaySign::HasZeroAt { elsewhere, .. } => *elsewhere == Ordering::Greater,
            RaySign::StrictlyNegative | RaySign::MixedSign { .. } => false,
        }
    }

    /// Integer zeros on the ray; `None` when the function vanishes identically.
    pub fn zeros(&self) -> Option<&[i64]> {
        match self {
            RaySign::IdenticallyZero => None,
            RaySign::HasZeroAt { zeros, .. } | RaySign::MixedSign { zeros, .. } => Some(zeros),
            RaySign::StrictlyPositive | RaySign::StrictlyNegative => Some(&[]),
        }
    }
}

/// Exact supremum of a function over a ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RaySup {
    /// `attained_at` is `None` when the supremum is a limit that no integer
    /// on the ray reaches.
    Bounded { sup: Rational, attained_at: Option<i64> },
    Unbounded,
}

/// Maximal run of consecutive ray integers sharing one sign.
/// Bounds are inclusive; `None` stands for an infinite end.
#[derive(Debug, Clone)]
struct Run {
    lo: Option<i64>,
    hi: Option<i64>,
    sign: Ordering,
}

impl Run {
    fn nearest_to_zero(&self) -> i64 {
        match (self.lo, self.hi) {
            (Some(lo), _) if lo > 0 => lo,
            (_, Some(hi)) if hi < 0 => hi,
            _ => 0,
        }
    }
}

pub fn integer_root_free_bound(p: &Polynomial) -> Result<BigInt, PolyError> {
    p.integer_root_free_bound()
}

fn bound_as_i64(p: &Polynomial) -> Result<i64, PolyError> {
    let b = p.scan_bound()?;
    match b.to_i64() {
        Some(v) if v <= MAX_SCAN_BOUND => Ok(v),
        _ => Err(PolyError::ScanTooLong { bound: b }),
    }
}

fn sign_at(coeffs: &[BigInt], n: i64) -> Ordering {
    let v = eval_integer_coeffs(coeffs, &BigInt::from(n));
    if v.is_zero() {
        Ordering::Equal
    } else if v.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn asymptotic_sign(p: &Polynomial, direction: Direction) -> Ordering {
    let lead = sign_of(p.leading().expect("nonzero polynomial"));
    let odd = p.degree().is_some_and(|d| d % 2 == 1);
    if direction == Direction::NegInfinity && odd {
        lead.reverse()
    } else {
        lead
    }
}

/// Integers of `ray` inside `[lo, hi]`, in ascending order.
fn clip(ray: Ray, lo: i64, hi: i64) -> std::ops::RangeInclusive<i64> {
    match ray {
        Ray::AtMost(a) => lo..=hi.min(a),
        Ray::AtLeast(a) => lo.max(a)..=hi,
    }
}

/// Sign runs of a nonzero function over the ray, ascending by position.
fn scan(f: &RationalFunction, ray: Ray) -> Result<Vec<Run>, PolyError> {
    let den = f.den().to_integer_coeffs();
    let den_bound = bound_as_i64(f.den())?;
    for n in clip(ray, -den_bound, den_bound) {
        if sign_at(&den, n) == Ordering::Equal {
            return Err(PolyError::PoleOnRay { index: n });
        }
    }
    debug_assert!(!f.is_zero());
    let num = f.num().to_integer_coeffs();
    let bound = den_bound.max(bound_as_i64(f.num())?);
    let product = |a: Ordering, b: Ordering| match (a, b) {
        (Ordering::Equal, _) | (_, Ordering::Equal) => Ordering::Equal,
        (x, y) if x == y => Ordering::Greater,
        _ => Ordering::Less,
    };
    let neg_sign = product(asymptotic_sign(f.num(), Direction::NegInfinity), asymptotic_sign(f.den(), Direction::NegInfinity));
    let pos_sign = product(asymptotic_sign(f.num(), Direction::PosInfinity), asymptotic_sign(f.den(), Direction::PosInfinity));

    let mut runs: Vec<Run> = Vec::new();
    let mut push = |lo: Option<i64>, hi: Option<i64>, sign: Ordering| {
        if let Some(last) = runs.last_mut() {
            if last.sign == sign && sign != Ordering::Equal {
                last.hi = hi;
                return;
            }
        }
        runs.push(Run { lo, hi, sign });
    };

    // Far negative side: every ray integer below -bound.
    match ray {
        Ray::AtMost(a) => push(None, Some(a.min(-bound - 1)), neg_sign),
        Ray::AtLeast(a) if a < -bound => push(Some(a), Some(-bound - 1), neg_sign),
        Ray::AtLeast(_) => {}
    }
    for n in clip(ray, -bound, bound) {
        let s = product(sign_at(&num, n), sign_at(&den, n));
        push(Some(n), Some(n), s);
    }
    match ray {
        Ray::AtLeast(a) => push(Some(a.max(bound + 1)), None, pos_sign),
        Ray::AtMost(a) if a > bound => push(Some(bound + 1), Some(a), pos_sign),
        Ray::AtMost(_) => {}
    }
    Ok(runs)
}

/// Ray point of `run` closest to the ray endpoint.
fn nearest_endpoint(run: &Run, ray: Ray) -> i64 {
    match ray {
        Ray::AtLeast(_) => run.lo.expect("runs on an upward ray start finitely"),
        Ray::AtMost(_) => run.hi.expect("runs on a downward ray end finitely"),
    }
}

pub fn sign_on_ray(f: &RationalFunction, ray: Ray) -> Result<RaySign, PolyError> {
    if f.is_zero() {
        return Ok(RaySign::IdenticallyZero);
    }
    let runs = scan(f, ray)?;
    let witness = |sign: Ordering| {
        let candidates = runs.iter().filter(|r| r.sign == sign).map(|r| nearest_endpoint(r, ray));
        match ray {
            Ray::AtLeast(_) => candidates.min(),
            Ray::AtMost(_) => candidates.max(),
        }
    };
    let zeros: Vec<i64> = runs
        .iter()
        .filter(|r| r.sign == Ordering::Equal)
        .map(|r| r.lo.expect("zeros are enumerated points"))
        .collect();
    Ok(match (witness(Ordering::Greater), witness(Ordering::Less)) {
        (Some(positive), Some(negative)) => RaySign::MixedSign { positive, negative, zeros },
        (Some(_), None) if zeros.is_empty() => RaySign::StrictlyPositive,
        (None, Some(_)) if zeros.is_empty() => RaySign::StrictlyNegative,
        (Some(_), None) => RaySign::HasZeroAt { zeros, elsewhere: Ordering::Greater },
        (None, Some(_)) => RaySign::HasZeroAt { zeros, elsewhere: Ordering::Less },
        (None, None) => unreachable!("a nonzero rational function has infinitely many nonzero values"),
    })
}

/// Ray integer of smallest absolute value (ties toward negative) at which `f`
/// has the given sign.
pub fn closest_to_zero_with_sign(f: &RationalFunction, ray: Ray, sign: Ordering) -> Result<Option<i64>, PolyError> {
    if f.is_zero() {
        return Ok((sign == Ordering::Equal).then(|| nearest_to_zero_on(ray)));
    }
    let runs = scan(f, ray)?;
    Ok(runs
        .iter()
        .filter(|r| r.sign == sign)
        .map(Run::nearest_to_zero)
        .min_by_key(|&n| (n.unsigned_abs(), n)))
}

fn nearest_to_zero_on(ray: Ray) -> i64 {
    match ray {
        Ray::AtMost(a) => a.min(0),
        Ray::AtLeast(a) => a.max(0),
    }
}

/// First ray integer (walking outward from the endpoint) at which `f` is
/// nonzero; `None` when `f` vanishes identically.
pub fn first_nonzero_on_ray(f: &RationalFunction, ray: Ray) -> Result<Option<i64>, PolyError> {
    if f.is_zero() {
        return Ok(None);
    }
    let runs = scan(f, ray)?;
    let nonzero = runs.iter().filter(|r| r.sign != Ordering::Equal).map(|r| nearest_endpoint(r, ray));
    Ok(match ray {
        Ray::AtLeast(_) => nonzero.min(),
        Ray::AtMost(_) => nonzero.max(),
    })
}

/// Exact supremum of `f` over the ray.
///
/// The outward difference `h(n) = f(n ± 1) - f(n)` has finitely many sign runs,
/// and on each run `f` is monotone, so the supremum is the largest of the run
/// endpoint values and, on an infinite run where `f` rises outward, the limit.
pub fn sup_on_ray(f: &RationalFunction, ray: Ray) -> Result<RaySup, PolyError> {
    if !f.is_zero() {
        scan(f, ray)?;
    }
    let step: i64 = match ray {
        Ray::AtMost(_) => -1,
        Ray::AtLeast(_) => 1,
    };
    let value = |n: i64| f.eval_int(n).ok_or(PolyError::PoleOnRay { index: n });
    let outward_diff = f.shift_index(step).sub(f);
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
    if outward_diff.is_zero() {
        let a = ray.endpoint();
        offer(value(a)?, Some(a));
    } else {
        for run in scan(&outward_diff, ray)? {
            match (run.lo, run.hi) {
                (Some(lo), Some(hi)) => {
                    // f is monotone on [lo, hi] extended one step outward.
                    let (x, y) = if step > 0 { (lo, hi + 1) } else { (lo - 1, hi) };
                    offer(value(x)?, Some(x));
                    offer(value(y)?, Some(y));
                }
                (lo, hi) => {
                    let inner = if step > 0 { lo.expect("finite inner end") } else { hi.expect("finite inner end") };
                    offer(value(inner)?, Some(inner));
                    if run.sign == Ordering::Greater {
                        match f.limit_at_infinity(ray.outward()) {
                            Limit::Finite(l) => offer(l, None),
                            Limit::Infinite(Ordering::Greater) => return Ok(RaySup::Unbounded),
                            Limit::Infinite(_) => {}
                        }
                    }
                }
            }
        }
    }
    let (sup, attained_at) = best.expect("ray is nonempty");
    Ok(RaySup::Bounded { sup, attained_at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(num), Polynomial::from_ints(den)).unwrap()
    }

    #[test]
    fn modulus_of_reciprocal_is_positive_on_negative_ray() {
        assert_eq!(sign_on_ray(&rf(&[-1], &[0, 1]), Ray::AtMost(-1)).unwrap(), RaySign::StrictlyPositive);
    }

    #[test]
    fn quadratic_on_positive_ray_changes_sign_at_two() {
        // n^2 - 4 is -3 at n = 1, 0 at n = 2 and positive beyond.
        assert_eq!(
            sign_on_ray(&rf(&[-4, 0, 1], &[1]), Ray::AtLeast(1)).unwrap(),
            RaySign::MixedSign { positive: 3, negative: 1, zeros: vec![2] }
        );
        assert_eq!(
            sign_on_ray(&rf(&[-4, 0, 1], &[1]), Ray::AtLeast(2)).unwrap(),
            RaySign::HasZeroAt { zeros: vec![2], elsewhere: Ordering::Greater }
        );
    }

    #[test]
    fn identity_on_ray_below_three_is_mixed() {
        assert_eq!(
            sign_on_ray(&rf(&[0, 1], &[1]), Ray::AtMost(3)).unwrap(),
            RaySign::MixedSign { positive: 3, negative: -1, zeros: vec![0] }
        );
    }

    #[test]
    fn poles_are_reported() {
        assert_eq!(
            sign_on_ray(&rf(&[1], &[3, 1]), Ray::AtMost(0)),
            Err(PolyError::PoleOnRay { index: -3 })
        );
        assert!(sign_on_ray(&rf(&[1], &[3, 1]), Ray::AtLeast(-2)).is_ok());
    }

    #[test]
    fn far_rays_use_asymptotic_sign_on_both_sides() {
        // n^3 on n >= -1000: negative for n < 0 even though the start is far.
        let cube = rf(&[0, 0, 0, 1], &[1]);
        assert_eq!(
            sign_on_ray(&cube, Ray::AtLeast(-1000)).unwrap(),
            RaySign::MixedSign { positive: 1, negative: -1000, zeros: vec![0] }
        );
        assert_eq!(
            sign_on_ray(&cube, Ray::AtMost(1000)).unwrap(),
            RaySign::MixedSign { positive: 1000, negative: -1, zeros: vec![0] }
        );
        assert_eq!(sign_on_ray(&cube, Ray::AtLeast(5000)).unwrap(), RaySign::StrictlyPositive);
    }

    #[test]
    fn closest_to_zero_prefers_negative_on_ties() {
        // (n - 2)(n + 2) is negative on -1..=1, closest to zero is 0.
        let f = rf(&[-4, 0, 1], &[1]);
        assert_eq!(closest_to_zero_with_sign(&f, Ray::AtLeast(-10), Ordering::Less).unwrap(), Some(0));
        assert_eq!(closest_to_zero_with_sign(&f, Ray::AtLeast(-10), Ordering::Greater).unwrap(), Some(-3));
        assert_eq!(closest_to_zero_with_sign(&f, Ray::AtLeast(50), Ordering::Greater).unwrap(), Some(50));
        assert_eq!(closest_to_zero_with_sign(&f, Ray::AtLeast(50), Ordering::Less).unwrap(), None);
    }

    #[test]
    fn first_nonzero_skips_zeros() {
        let f = rf(&[-4, 0, 1], &[1]);
        assert_eq!(first_nonzero_on_ray(&f, Ray::AtLeast(2)).unwrap(), Some(3));
        assert_eq!(first_nonzero_on_ray(&f, Ray::AtMost(-2)).unwrap(), Some(-3));
        assert_eq!(first_nonzero_on_ray(&RationalFunction::zero(), Ray::AtMost(0)).unwrap(), None);
    }

    #[test]
    fn sup_of_decreasing_modulus_is_attained_at_endpoint() {
        // -1/n on n <= -1: 1, 1/2, 1/3, ...
        assert_eq!(
            sup_on_ray(&rf(&[-1], &[0, 1]), Ray::AtMost(-1)).unwrap(),
            RaySup::Bounded { sup: int(1), attained_at: Some(-1) }
        );
    }

    #[test]
    fn sup_of_increasing_function_is_its_limit() {
        // 2 - 1/n on n >= 1 increases to 2 without reaching it.
        assert_eq!(
            sup_on_ray(&rf(&[-1, 2], &[0, 1]), Ray::AtLeast(1)).unwrap(),
            RaySup::Bounded { sup: int(2), attained_at: None }
        );
        assert_eq!(sup_on_ray(&rf(&[0, 1], &[1]), Ray::AtLeast(0)).unwrap(), RaySup::Unbounded);
    }

    #[test]
    fn sup_with_interior_bump() {
        // n / (n^2 + 4) on n >= 0 peaks at n = 2 with value 1/4.
        assert_eq!(
            sup_on_ray(&rf(&[0, 1], &[4, 0, 1]), Ray::AtLeast(0)).unwrap(),
            RaySup::Bounded { sup: rat(1, 4), attained_at: Some(2) }
        );
    }
}
