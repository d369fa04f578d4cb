//! Decides hyponormality and near subnormality of bilateral weighted shifts
//! `T e_n = β_n e_{n+1}` whose weight moduli are given by a finite window and
//! two closed-form tails, and emits exact, replayable certificates.

pub mod classifier;
pub mod fixtures;
pub mod polycert;
pub mod rational;
pub mod shiftcalc;
#[cfg(feature = "testing")]
pub mod testing;
pub mod weightspec;

pub use classifier::{check_hyponormal, classify, replay, Certificate, Classification, Theorem, Verdict};
pub use polycert::{Polynomial, RationalFunction};
pub use rational::Rational;
pub use weightspec::{TailSpec, WeightSpec};
