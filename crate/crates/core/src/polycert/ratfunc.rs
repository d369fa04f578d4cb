use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::poly::Polynomial;
use super::PolyError;
use crate::rational::{sign_of, Rational};

/// Reduced quotient `num / den` of polynomials in the index variable.
///
/// Canonical form: `gcd(num, den) = 1`, `den` monic, and the zero function is
/// `0 / 1`. Structural equality is therefore equality of functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    PosInfinity,
    NegInfinity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Limit {
    Finite(Rational),
    /// Diverges; the ordering is the sign of the divergence.
    Infinite(Ordering),
}

impl Limit {
    pub fn is_finite(&self) -> bool {
        matches!(self, Limit::Finite(_))
    }
}

pub fn rf_arith(a: &RationalFunction, b: &RationalFunction, op: RfOp) -> Result<RationalFunction, PolyError> {
    let (num, den) = match op {
        RfOp::Add => (&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den),
        RfOp::Sub => (&(&a.num * &b.den) - &(&b.num * &a.den), &a.den * &b.den),
        RfOp::Mul => (&a.num * &b.num, &a.den * &b.den),
        RfOp::Div => {
            if b.is_zero() {
                return Err(PolyError::DivisionByZero);
            }
            (&a.num * &b.den, &a.den * &b.num)
        }
    };
    RationalFunction::new(num, den)
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Polynomial::gcd(&num, &den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lead = den.leading().expect("nonzero denominator").recip();
        Ok(RationalFunction { num: num.scale(&lead), den: den.scale(&lead) })
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction { num: Polynomial::constant(c), den: Polynomial::one() }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value if the function does not depend on `n`.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0) / self.den.coeff(0))
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn eval_int(&self, n: i64) -> Option<Rational> {
        self.eval(&crate::rational::int(n))
    }

    /// `g(n) = f(n + delta)`.
    pub fn shift_index(&self, delta: i64) -> RationalFunction {
        // Substitution preserves coprimality and the leading coefficients.
        RationalFunction { num: self.num.compose_shift(delta), den: self.den.compose_shift(delta) }
    }

    pub fn scale(&self, factor: &Rational) -> RationalFunction {
        if factor.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(factor), den: self.den.clone() }
    }

    pub fn square(&self) -> RationalFunction {
        RationalFunction { num: &self.num * &self.num, den: &self.den * &self.den }
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        rf_arith(self, other, RfOp::Add).expect("add cannot fail")
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        rf_arith(self, other, RfOp::Sub).expect("sub cannot fail")
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        rf_arith(self, other, RfOp::Mul).expect("mul cannot fail")
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction, PolyError> {
        rf_arith(self, other, RfOp::Div)
    }

    pub fn limit_at_infinity(&self, direction: Direction) -> Limit {
        let (Some(dn), Some(dd)) = (self.num.degree(), self.den.degree()) else {
            return Limit::Finite(Rational::zero());
        };
        let ratio = self.num.leading().expect("nonzero") / self.den.leading().expect("nonzero");
        match dn.cmp(&dd) {
            Ordering::Less => Limit::Finite(Rational::zero()),
            Ordering::Equal => Limit::Finite(ratio),
            Ordering::Greater => {
                let mut sign = sign_of(&ratio);
                if direction == Direction::NegInfinity && (dn - dd) % 2 == 1 {
                    sign = sign.reverse();
                }
                Limit::Infinite(sign)
            }
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self::constant(c)
        }
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}
