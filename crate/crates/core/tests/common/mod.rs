#![allow(dead_code)]

use std::cmp::Ordering;

use nearsub_core::rational::Rational;
use nearsub_core::testing::random_spec;
use nearsub_core::WeightSpec;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

pub fn spec_strategy() -> impl Strategy<Value = WeightSpec> {
    any::<u64>().prop_map(|seed| random_spec(&mut StdRng::seed_from_u64(seed)))
}

pub fn seeded_specs(seed: u64, count: usize) -> Vec<WeightSpec> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random_spec(&mut rng)).collect()
}

pub fn sq(spec: &WeightSpec, n: i64) -> Rational {
    let b = spec.eval_exact(n).unwrap();
    &b * &b
}

/// Brute-force comparison of consecutive moduli over a finite range.
pub fn relation(spec: &WeightSpec, n: i64) -> Ordering {
    sq(spec, n).cmp(&sq(spec, n + 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reference {
    NotHyponormal { witness: i64 },
    Normal,
    Theorem1,
    Theorem2 { k: i64 },
    Theorem2Converse { k: i64 },
    Theorem3 { j0: i64 },
    Theorem4 { j0: i64 },
}

/// Classification from exact comparisons over `[L - margin, R + margin]` alone.
/// Sound for specs whose tails have no isolated equalities, which holds for
/// the generated families.
pub fn reference_classify(spec: &WeightSpec, margin: i64) -> Reference {
    let (lo, hi) = (spec.window_start - margin, spec.window_end() + margin);
    let rel: Vec<(i64, Ordering)> = (lo..=hi).map(|n| (n, relation(spec, n))).collect();
    if let Some(witness) = rel
        .iter()
        .filter(|(_, r)| *r == Ordering::Greater)
        .map(|(n, _)| *n)
        .min_by_key(|&n| (n.unsigned_abs(), n))
    {
        return Reference::NotHyponormal { witness };
    }
    let at = |n: i64| rel[(n - lo) as usize].1;
    if rel.iter().all(|(_, r)| *r == Ordering::Equal) {
        return Reference::Normal;
    }
    if (lo..=spec.window_start - 2).all(|n| at(n) == Ordering::Equal) {
        let r = rel.iter().find(|(_, r)| *r == Ordering::Less).unwrap().0;
        return Reference::Theorem3 { j0: r };
    }
    let Some(k) = rel.iter().find(|(_, r)| *r == Ordering::Equal).map(|(n, _)| *n) else {
        return Reference::Theorem1;
    };
    if (k..=hi).all(|n| at(n) == Ordering::Equal) {
        return Reference::Theorem2 { k };
    }
    for j in k..hi {
        if at(j - 1) == Ordering::Less && at(j) == Ordering::Equal && at(j + 1) == Ordering::Less {
            return Reference::Theorem4 { j0: j };
        }
    }
    Reference::Theorem2Converse { k }
}
