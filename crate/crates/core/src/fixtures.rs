//! The canonical specs: three worked examples and a flat-pair instance.

use crate::polycert::{Polynomial, RationalFunction};
use crate::rational::{int, rat, Rational};
use crate::weightspec::{TailSpec, WeightSpec};

fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::new(Polynomial::from_ints(num), Polynomial::from_ints(den)).expect("nonzero denominator")
}

/// `-1/n`, the modulus of `1/n` for `n ≤ -1`.
pub fn reciprocal_modulus() -> RationalFunction {
    rf(&[-1], &[0, 1])
}

/// `|β_n| = |1/n|` for `n ≤ -1`, `β_0 = 2`, `β_n = 2` for `n ≥ 1`.
pub fn example1() -> WeightSpec {
    WeightSpec::new(0, vec![int(2)], TailSpec::RationalForm(reciprocal_modulus()), TailSpec::Constant(int(2)))
}

/// `|β_n| = |1/(n-1)|` for `n ≤ -1`, `β_0 = 2/3`, `β_n = 2 - 1/n` for `n ≥ 1`.
pub fn example2() -> WeightSpec {
    WeightSpec::new(
        0,
        vec![rat(2, 3)],
        TailSpec::RationalForm(rf(&[-1], &[-1, 1])),
        TailSpec::RationalForm(rf(&[-1, 2], &[0, 1])),
    )
}

/// `|β_n| = λ` for `n ≤ 0` and `μ` for `n ≥ 1`.
pub fn example3_with(lambda: Rational, mu: Rational) -> WeightSpec {
    WeightSpec::new(0, vec![lambda.clone()], TailSpec::Constant(lambda), TailSpec::Constant(mu))
}

pub fn example3() -> WeightSpec {
    example3_with(int(1), int(2))
}

/// `|β_n| = |1/n|` for `n ≤ -1`, then `2, 2, 3` at `n = 0, 1, 2` and `3` beyond:
/// the pattern `1 < 2 = 2 < 3` around `j0 = 0`.
pub fn theorem4() -> WeightSpec {
    WeightSpec::new(
        0,
        vec![int(2), int(2), int(3)],
        TailSpec::RationalForm(reciprocal_modulus()),
        TailSpec::Constant(int(3)),
    )
}
