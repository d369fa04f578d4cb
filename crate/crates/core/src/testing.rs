//! Seeded random weight specs for property tests and oracle sweeps.

use rand::Rng;

use crate::polycert::{Polynomial, RationalFunction};
use crate::rational::{int, rat, Rational};
use crate::weightspec::{TailSpec, WeightSpec};

fn small_positive(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(1..=6), rng.gen_range(1..=4))
}

/// Step between consecutive window values; zero about a third of the time.
fn step(rng: &mut impl Rng, allow_flat: bool) -> Rational {
    if allow_flat && rng.gen_bool(0.3) {
        int(0)
    } else {
        rat(rng.gen_range(1..=4), rng.gen_range(2..=6))
    }
}

fn poly(coeffs: Vec<Rational>) -> Polynomial {
    Polynomial::from_coeffs(coeffs)
}

/// `a + sign * b / (c - n)^power` written over a common denominator.
fn left_form(a: &Rational, b: &Rational, c: i64, power: u32, sign: i64) -> RationalFunction {
    let base = poly(vec![int(c), int(-1)]);
    let den = (1..power).fold(base.clone(), |acc, _| &acc * &base);
    let num = &den.scale(a) + &Polynomial::constant(b * int(sign));
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// `a - b / (n - c)^power`.
fn right_form(a: &Rational, b: &Rational, c: i64, power: u32) -> RationalFunction {
    let base = poly(vec![int(-c), int(1)]);
    let den = (1..power).fold(base.clone(), |acc, _| &acc * &base);
    let num = &den.scale(a) - &Polynomial::constant(b.clone());
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// Hyponormal spec: left tail nondecreasing towards the window, monotone
/// window with occasional equalities, right tail nondecreasing above it.
pub fn random_hyponormal_spec(rng: &mut impl Rng) -> WeightSpec {
    let l: i64 = rng.gen_range(-4..=4);
    let len: usize = rng.gen_range(1..=5);
    let r = l + len as i64 - 1;

    let left = if rng.gen_bool(0.25) {
        TailSpec::Constant(small_positive(rng))
    } else {
        let (a, b) = (small_positive(rng), small_positive(rng));
        let c = l + rng.gen_range(0..=3);
        TailSpec::RationalForm(left_form(&a, &b, c, rng.gen_range(1..=2), 1))
    };
    let mut current = left.eval(l - 1).expect("pole-free at L - 1");
    let mut window = Vec::with_capacity(len);
    for _ in 0..len {
        current = &current + &step(rng, true);
        window.push(current.clone());
    }
    let floor = &current + &step(rng, true);
    let right = if rng.gen_bool(0.35) {
        TailSpec::Constant(floor)
    } else {
        let b = small_positive(rng);
        let c = r - rng.gen_range(0..=3);
        let power = rng.gen_range(1..=2);
        let first = int(r + 1 - c).pow(power as i32);
        TailSpec::RationalForm(right_form(&(&floor + &(&b / &first)), &b, c, power))
    };
    WeightSpec::new(l, window, left, right)
}

/// Spec that decreases somewhere: a dip in the window or a decreasing left tail.
pub fn random_non_hyponormal_spec(rng: &mut impl Rng) -> WeightSpec {
    let mut spec = random_hyponormal_spec(rng);
    if rng.gen_bool(0.5) {
        let i = rng.gen_range(0..spec.window_values.len());
        let below = spec.eval_exact(spec.window_start + i as i64 - 1).expect("validated shape");
        spec.window_values[i] = below * rat(1, 2);
    } else {
        let b = small_positive(rng);
        let a = &b + &small_positive(rng);
        spec.left_tail = TailSpec::RationalForm(left_form(&a, &b, spec.window_start, 1, -1));
    }
    spec
}

/// Strict increase up to a plateau that continues through a constant right
/// tail: the near subnormal configuration with a flat final segment.
pub fn random_theorem2_spec(rng: &mut impl Rng) -> WeightSpec {
    loop {
        let mut spec = random_hyponormal_spec(rng);
        if matches!(spec.left_tail, TailSpec::Constant(_)) {
            continue;
        }
        let l = spec.window_start;
        let mut current = spec.left_tail.eval(l - 1).expect("pole-free");
        let plateau_at = rng.gen_range(0..spec.window_values.len());
        for (i, v) in spec.window_values.iter_mut().enumerate() {
            if i <= plateau_at {
                current = &current + &step(rng, false);
            }
            *v = current.clone();
        }
        spec.right_tail = TailSpec::Constant(current);
        return spec;
    }
}

/// Mostly hyponormal, about one in ten not.
pub fn random_spec(rng: &mut impl Rng) -> WeightSpec {
    match rng.gen_range(0..10) {
        0 => random_non_hyponormal_spec(rng),
        1 | 2 => random_theorem2_spec(rng),
        _ => random_hyponormal_spec(rng),
    }
}
