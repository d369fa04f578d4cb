//! Hyponormality certification and the dispatch over the four structure
//! theorems for bilateral weighted shifts.

mod certificate;
mod structure;

use std::fmt;

use thiserror::Error;

pub use certificate::{replay, Certificate, GammaSummary, Quantity, Replay, ReplayPoint, ReplayValue};
pub use structure::{check_hyponormal, HyponormalCheck, Relation, Shape, StructureProfile};

use crate::polycert::{Limit, PolyError};
use crate::rational::format_sqrt;
use crate::shiftcalc::{gamma_analysis, gamma_bounded_everywhere, gamma_bounded_on_left_ray, GammaBound, ShiftError};
use crate::weightspec::{Violation, WeightError, WeightSpec};
use structure::{profile, Relations};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("invalid weight spec: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// `|β_n| ≤ |β_{n+1}|` for all `n` fails.
    Hyponormality,
    Normality,
    Theorem1,
    Theorem1Converse,
    Theorem2,
    Theorem2Converse,
    Theorem3,
    Theorem4,
    Unresolved,
}

impl Theorem {
    pub const ALL: [Theorem; 9] = [
        Theorem::Hyponormality,
        Theorem::Normality,
        Theorem::Theorem1,
        Theorem::Theorem1Converse,
        Theorem::Theorem2,
        Theorem::Theorem2Converse,
        Theorem::Theorem3,
        Theorem::Theorem4,
        Theorem::Unresolved,
    ];

    /// Stable identifier used in reports.
    pub fn tag(self) -> &'static str {
        match self {
            Theorem::Hyponormality => "hyponormality",
            Theorem::Normality => "normality",
            Theorem::Theorem1 => "theorem1",
            Theorem::Theorem1Converse => "theorem1-converse",
            Theorem::Theorem2 => "theorem2",
            Theorem::Theorem2Converse => "theorem2-converse",
            Theorem::Theorem3 => "theorem3",
            Theorem::Theorem4 => "theorem4",
            Theorem::Unresolved => "unresolved",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.tag() == tag)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Hyponormality => "hyponormality criterion",
            Theorem::Normality => "normality",
            Theorem::Theorem1 => "Theorem 1",
            Theorem::Theorem1Converse => "Theorem 1, converse",
            Theorem::Theorem2 => "Theorem 2",
            Theorem::Theorem2Converse => "Theorem 2, converse",
            Theorem::Theorem3 => "Theorem 3",
            Theorem::Theorem4 => "Theorem 4",
            Theorem::Unresolved => "unresolved",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    NotHyponormal { witness: i64 },
    Normal,
    NearSubnormal { via: Theorem },
    HyponormalNotNearSubnormal { via: Theorem, witness: Option<i64> },
    Undecided,
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::NotHyponormal { .. } => "NotHyponormal",
            Classification::Normal => "Normal",
            Classification::NearSubnormal { .. } => "NearSubnormal",
            Classification::HyponormalNotNearSubnormal { .. } => "HyponormalNotNearSubnormal",
            Classification::Undecided => "Undecided",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub classification: Classification,
    pub certificate: Certificate,
}

fn limit_text(limit: &Limit) -> String {
    match limit {
        Limit::Finite(v) => format_sqrt(v),
        Limit::Infinite(_) => "infinite".to_string(),
    }
}

impl Verdict {
    /// One-line human summary.
    pub fn summary(&self) -> String {
        let cert = &self.certificate;
        match &self.classification {
            Classification::NotHyponormal { witness } => {
                format!("NOT hyponormal, |β_n| > |β_(n+1)| at n = {witness}")
            }
            Classification::Normal => "Normal".to_string(),
            Classification::NearSubnormal { via: Theorem::Theorem2 } => {
                let k = cert.k.expect("Theorem 2 certificates carry k");
                let left = cert.gamma.as_ref().map(|g| limit_text(&g.left_limit)).unwrap_or_default();
                format!("NearSubnormal (Theorem 2), k = {k}, left γ limit {left}")
            }
            Classification::NearSubnormal { via } => match &cert.gamma {
                Some(g) => format!(
                    "NearSubnormal ({via}), left γ limit {}, right γ limit {}",
                    limit_text(&g.left_limit),
                    limit_text(&g.right_limit)
                ),
                None => format!("NearSubnormal ({via})"),
            },
            Classification::HyponormalNotNearSubnormal { via, .. } => format!("Hyponormal, NOT near subnormal ({via})"),
            Classification::Undecided => "Undecided".to_string(),
        }
    }
}

/// Outcome of the dispatch before the certificate is assembled.
struct Decision {
    classification: Classification,
    theorem: Theorem,
    k: Option<i64>,
    j0: Option<i64>,
    obstruction: Option<i64>,
    gamma_sup: Option<GammaBound>,
}

impl Decision {
    fn new(classification: Classification, theorem: Theorem) -> Self {
        Decision { classification, theorem, k: None, j0: None, obstruction: None, gamma_sup: None }
    }

    fn not_near_subnormal(via: Theorem, witness: Option<i64>) -> Self {
        Decision::new(Classification::HyponormalNotNearSubnormal { via, witness }, via)
    }
}

pub fn classify(spec: &WeightSpec) -> Result<Verdict, ClassifyError> {
    let validation = spec.validate();
    if !validation.is_ok() {
        return Err(ClassifyError::Invalid(validation.violations));
    }
    let weight_sup = validation.sup_bound.expect("valid specs carry a bound");
    let rel = Relations::new(spec)?;
    let profile = match profile(spec, &rel)? {
        HyponormalCheck::NotHyponormal { witness } => {
            let decision = Decision::new(Classification::NotHyponormal { witness }, Theorem::Hyponormality);
            return certificate::assemble(spec, &rel.q, None, None, decision, weight_sup);
        }
        HyponormalCheck::Hyponormal(p) => p,
    };
    let ga = gamma_analysis(spec, &rel.q)?;
    let decision = dispatch(&profile, &ga)?;
    certificate::assemble(spec, &rel.q, Some(profile), Some(&ga), decision, weight_sup)
}

fn dispatch(profile: &StructureProfile, ga: &crate::shiftcalc::GammaAnalysis) -> Result<Decision, ClassifyError> {
    if profile.is_globally_constant() {
        return Ok(Decision::new(Classification::Normal, Theorem::Normality));
    }
    if let Shape::Constant(_) = profile.left_shape {
        // The first rise r leaves e_r in the kernel of Q while T e_r is not.
        let r = profile.first_rise_after(profile.window_start - 2).expect("a nonconstant sequence rises somewhere");
        let mut d = Decision::not_near_subnormal(Theorem::Theorem3, Some(r + 1));
        d.j0 = Some(r);
        d.obstruction = Some(r);
        return Ok(d);
    }
    let Some(k) = profile.first_equality_index else {
        let bounded = ga.left_limit.is_finite() && ga.right_limit.is_finite();
        if !bounded {
            return Ok(Decision::not_near_subnormal(Theorem::Theorem1Converse, None));
        }
        let mut d = Decision::new(Classification::NearSubnormal { via: Theorem::Theorem1 }, Theorem::Theorem1);
        d.gamma_sup = Some(gamma_bounded_everywhere(ga)?);
        return Ok(d);
    };
    if profile.all_equal_from(k) {
        let bound = gamma_bounded_on_left_ray(ga, k - 1)?;
        let mut d = match bound {
            GammaBound::BoundedWithSup { .. } => {
                Decision::new(Classification::NearSubnormal { via: Theorem::Theorem2 }, Theorem::Theorem2)
            }
            GammaBound::Unbounded => Decision::not_near_subnormal(Theorem::Theorem2Converse, None),
        };
        d.k = Some(k);
        d.gamma_sup = Some(bound);
        return Ok(d);
    }
    let pattern = profile
        .equality_candidates(k)
        .into_iter()
        .find(|&j| profile.relation(j - 1) == Relation::Lt && profile.relation(j + 1) == Relation::Lt);
    let mut d = match pattern {
        Some(j0) => {
            let mut d = Decision::not_near_subnormal(Theorem::Theorem4, Some(j0));
            d.j0 = Some(j0);
            d.obstruction = Some(j0 + 1);
            d
        }
        None => {
            let r = profile.first_rise_after(k).expect("condition (I) fails, so a later rise exists");
            let mut d = Decision::not_near_subnormal(Theorem::Theorem2Converse, Some(r + 1));
            d.obstruction = Some(r);
            d
        }
    };
    d.k = Some(k);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::fixtures::*;
    use crate::weightspec::TailSpec;

    #[test]
    fn example_two_profile() {
        let HyponormalCheck::Hyponormal(p) = check_hyponormal(&example2()).unwrap() else { panic!() };
        assert_eq!(p.left_shape, Shape::StrictIncrease);
        assert_eq!(p.right_shape, Shape::StrictIncrease);
        assert_eq!(p.first_equality_index, None);
    }

    #[test]
    fn example_three_profile() {
        let HyponormalCheck::Hyponormal(p) = check_hyponormal(&example3()).unwrap() else { panic!() };
        assert_eq!(p.left_shape, Shape::Constant(int(1)));
        assert_eq!(p.right_shape, Shape::Constant(int(2)));
    }

    #[test]
    fn decreasing_window_is_not_hyponormal() {
        let spec = WeightSpec::new(0, vec![int(2), int(1)], TailSpec::Constant(int(1)), TailSpec::Constant(int(2)));
        assert_eq!(check_hyponormal(&spec).unwrap(), HyponormalCheck::NotHyponormal { witness: 0 });
        let v = classify(&spec).unwrap();
        assert_eq!(v.classification, Classification::NotHyponormal { witness: 0 });
    }

    #[test]
    fn not_hyponormal_witness_prefers_smallest_magnitude_then_negative() {
        // Drops at n = -1 (3 > 1) and at n = 1 (3 > 2).
        let spec = WeightSpec::new(-1, vec![int(3), int(1), int(3), int(2)], TailSpec::Constant(int(1)), TailSpec::Constant(int(3)));
        assert_eq!(check_hyponormal(&spec).unwrap(), HyponormalCheck::NotHyponormal { witness: -1 });
    }

    #[test]
    fn example_one_is_near_subnormal_by_theorem_two() {
        let v = classify(&example1()).unwrap();
        assert_eq!(v.classification, Classification::NearSubnormal { via: Theorem::Theorem2 });
        assert_eq!(v.certificate.k, Some(0));
        assert_eq!(v.summary(), "NearSubnormal (Theorem 2), k = 0, left γ limit 0");
        assert_eq!(v.certificate.gamma.as_ref().unwrap().left_limit, Limit::Finite(int(0)));
    }

    #[test]
    fn example_two_is_near_subnormal_by_theorem_one() {
        let v = classify(&example2()).unwrap();
        assert_eq!(v.classification, Classification::NearSubnormal { via: Theorem::Theorem1 });
        let g = v.certificate.gamma.as_ref().unwrap();
        assert_eq!(g.right_limit, Limit::Finite(int(4)));
        assert_eq!(g.left_limit, Limit::Finite(int(0)));
    }

    #[test]
    fn example_three_is_theorem_three() {
        let v = classify(&example3()).unwrap();
        assert_eq!(
            v.classification,
            Classification::HyponormalNotNearSubnormal { via: Theorem::Theorem3, witness: Some(1) }
        );
        assert_eq!(v.certificate.j0, Some(0));
        assert_eq!(v.summary(), "Hyponormal, NOT near subnormal (Theorem 3)");
    }

    #[test]
    fn flat_pair_between_rises_is_theorem_four() {
        let v = classify(&theorem4()).unwrap();
        assert_eq!(
            v.classification,
            Classification::HyponormalNotNearSubnormal { via: Theorem::Theorem4, witness: Some(0) }
        );
        assert_eq!(v.certificate.j0, Some(0));
        assert_eq!(v.certificate.obstruction_index, Some(1));
    }

    #[test]
    fn constant_sequence_is_normal() {
        let spec = WeightSpec::new(3, vec![rat(5, 2); 2], TailSpec::Constant(rat(5, 2)), TailSpec::Constant(rat(5, 2)));
        assert_eq!(classify(&spec).unwrap().classification, Classification::Normal);
    }

    #[test]
    fn longer_plateau_then_rise_is_theorem_two_converse() {
        // 1 < 2 = 2 = 2 < 3: no flat pair flanked by rises on both sides.
        let spec = WeightSpec::new(
            0,
            vec![int(2), int(2), int(2), int(3)],
            TailSpec::RationalForm(reciprocal_modulus()),
            TailSpec::Constant(int(3)),
        );
        let v = classify(&spec).unwrap();
        assert_eq!(
            v.classification,
            Classification::HyponormalNotNearSubnormal { via: Theorem::Theorem2Converse, witness: Some(3) }
        );
        assert_eq!(v.certificate.k, Some(0));
        assert_eq!(v.certificate.obstruction_index, Some(2));
    }

    #[test]
    fn invalid_spec_is_rejected() {
        let spec = WeightSpec::new(0, vec![int(0)], TailSpec::Constant(int(1)), TailSpec::Constant(int(1)));
        assert!(matches!(classify(&spec), Err(ClassifyError::Invalid(_))));
    }

    #[test]
    fn theorem_tags_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(Theorem::from_tag(t.tag()), Some(t));
        }
    }
}
