use std::collections::BTreeSet;
use std::fmt;

use super::{classify, ClassifyError, Decision, StructureProfile, Theorem};
use crate::polycert::Limit;
use crate::rational::Rational;
use crate::shiftcalc::{gamma_analysis, q_diagonal, FlatRegion, GammaAnalysis, GammaBound, GammaValue, QDiagonal};
use crate::weightspec::WeightSpec;

/// Distance of the far spot checks from the window.
const FAR_OFFSET: i64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSummary {
    pub left_limit: Limit,
    pub right_limit: Limit,
    /// Supremum of `γ²` over the range the applied theorem needs.
    pub sup: Option<GammaBound>,
    pub flat_region: FlatRegion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    /// `|β_n|`.
    Weight,
    /// `d_n`.
    QDiag,
    /// `γ_n²`.
    GammaSq,
}

impl Quantity {
    pub fn tag(self) -> &'static str {
        match self {
            Quantity::Weight => "weight",
            Quantity::QDiag => "q_diag",
            Quantity::GammaSq => "gamma_sq",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Quantity> {
        [Quantity::Weight, Quantity::QDiag, Quantity::GammaSq].into_iter().find(|q| q.tag() == tag)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayValue {
    Exact(Rational),
    Undefined,
}

impl fmt::Display for ReplayValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayValue::Exact(v) => write!(f, "{v}"),
            ReplayValue::Undefined => f.write_str("undefined"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayPoint {
    pub index: i64,
    pub quantity: Quantity,
    pub value: ReplayValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub structure: Option<StructureProfile>,
    pub gamma: Option<GammaSummary>,
    pub theorem: Theorem,
    pub k: Option<i64>,
    pub j0: Option<i64>,
    /// Basis index `m` with `e_m` in the kernel of `Q_T` but `T e_m` not.
    pub obstruction_index: Option<i64>,
    /// Certified `sup |β_n|`.
    pub weight_sup: Rational,
    pub replay_points: Vec<ReplayPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Replay {
    Consistent,
    Inconsistent(String),
}

fn point_value(spec: &WeightSpec, q: &QDiagonal, ga: &GammaAnalysis, index: i64, quantity: Quantity) -> Result<ReplayValue, ClassifyError> {
    Ok(match quantity {
        Quantity::Weight => ReplayValue::Exact(spec.eval_exact(index)?),
        Quantity::QDiag => ReplayValue::Exact(q.at(index)),
        Quantity::GammaSq => match ga.at(index) {
            GammaValue::Value(v) => ReplayValue::Exact(v),
            GammaValue::Undefined => ReplayValue::Undefined,
        },
    })
}

pub(super) fn assemble(
    spec: &WeightSpec,
    q: &QDiagonal,
    structure: Option<StructureProfile>,
    ga: Option<&GammaAnalysis>,
    decision: Decision,
    weight_sup: Rational,
) -> Result<super::Verdict, ClassifyError> {
    let owned;
    let ga = match ga {
        Some(ga) => ga,
        None => {
            owned = gamma_analysis(spec, q)?;
            &owned
        }
    };
    let (l, r) = (spec.window_start, spec.window_end());
    let mut indices: BTreeSet<i64> = (l - 3..=r + 3).collect();
    let witness = match &decision.classification {
        super::Classification::NotHyponormal { witness } => Some(*witness),
        super::Classification::HyponormalNotNearSubnormal { witness, .. } => *witness,
        _ => None,
    };
    for anchor in [decision.k, decision.j0, decision.obstruction, witness].into_iter().flatten() {
        indices.extend(anchor - 2..=anchor + 2);
    }
    indices.insert(l - FAR_OFFSET);
    indices.insert(r + FAR_OFFSET);
    let mut replay_points = Vec::new();
    for index in indices {
        for quantity in [Quantity::Weight, Quantity::QDiag, Quantity::GammaSq] {
            replay_points.push(ReplayPoint { index, quantity, value: point_value(spec, q, ga, index, quantity)? });
        }
    }
    let gamma = structure.as_ref().map(|_| GammaSummary {
        left_limit: ga.left_limit.clone(),
        right_limit: ga.right_limit.clone(),
        sup: decision.gamma_sup.clone(),
        flat_region: ga.flat_region,
    });
    let certificate = Certificate {
        structure,
        gamma,
        theorem: decision.theorem,
        k: decision.k,
        j0: decision.j0,
        obstruction_index: decision.obstruction,
        weight_sup,
        replay_points,
    };
    Ok(super::Verdict { classification: decision.classification, certificate })
}

/// Recomputes every spot check and structural claim of `cert` against `spec`.
pub fn replay(cert: &Certificate, spec: &WeightSpec) -> Replay {
    let report = spec.validate();
    if !report.is_ok() {
        return Replay::Inconsistent(format!("spec fails validation: {}", report.violations[0]));
    }
    let recomputed = (|| -> Result<_, ClassifyError> {
        let q = q_diagonal(spec)?;
        let ga = gamma_analysis(spec, &q)?;
        for point in &cert.replay_points {
            let value = point_value(spec, &q, &ga, point.index, point.quantity)?;
            if value != point.value {
                return Ok(Err(format!(
                    "{} at n = {}: recorded {}, recomputed {}",
                    point.quantity, point.index, point.value, value
                )));
            }
        }
        Ok(Ok(classify(spec)?))
    })();
    let fresh = match recomputed {
        Err(e) => return Replay::Inconsistent(format!("recomputation failed: {e}")),
        Ok(Err(detail)) => return Replay::Inconsistent(detail),
        Ok(Ok(v)) => v.certificate,
    };
    let mismatch = |field: &str| Replay::Inconsistent(format!("{field} differs from the recomputed certificate"));
    if fresh.theorem != cert.theorem {
        return mismatch("theorem");
    }
    if fresh.structure != cert.structure {
        return mismatch("structure");
    }
    if fresh.k != cert.k {
        return mismatch("k");
    }
    if fresh.j0 != cert.j0 {
        return mismatch("j0");
    }
    if fresh.obstruction_index != cert.obstruction_index {
        return mismatch("obstruction index");
    }
    if fresh.gamma != cert.gamma {
        return mismatch("gamma summary");
    }
    if fresh.weight_sup != cert.weight_sup {
        return mismatch("weight sup");
    }
    Replay::Consistent
}
