use nearsub_core::classifier::Classification;
use nearsub_core::rational::to_f64_nearest;
use nearsub_core::shiftcalc::{gamma_analysis, q_diagonal, FlatRegion, GammaBound, GammaValue};
use nearsub_core::{Theorem, Verdict, WeightSpec};
use num_traits::Signed;

use crate::sweep::{norm_sweep, NormPoint};
use crate::truncation::{build_truncation, commutator_q, invariance_check, transformed_operator, Violation};
use crate::OracleError;

/// Where the spectral step found a negative entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NotPsd {
    pub index: i64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncationReport {
    pub half_width: usize,
    pub dim: usize,
    /// Absolute null-space threshold.
    pub tol: f64,
    pub max_weight_sq: f64,
    pub q_diag_residual: f64,
    pub q_offdiag_residual: f64,
    /// Largest interior `|Q_nn|`.
    pub q_interior_max: f64,
    /// `None` when `Q` is not PSD.
    pub gamma_residual: Option<f64>,
    /// Indices where an exact `d_n` is positive but below `tol`.
    pub gamma_skipped: usize,
    /// Largest interior `|S|` subdiagonal entry on the flat region, if any.
    pub flat_zero_max: Option<f64>,
    pub invariance_violations: Vec<Violation>,
    pub not_psd: Option<NotPsd>,
    pub norm_trace: Vec<NormPoint>,
}

impl TruncationReport {
    pub fn interior_radius(&self) -> i64 {
        self.half_width as i64 - 2
    }
}

/// Runs one truncation of half-width `half_width` and an optional norm sweep,
/// comparing every interior entry with the exact engine.
pub fn cross_validate(spec: &WeightSpec, half_width: usize, rel_tol: f64, sweep: &[usize]) -> Result<TruncationReport, OracleError> {
    let t = build_truncation(spec, half_width, rel_tol)?;
    let q = commutator_q(&t);
    let exact = q_diagonal(spec)?;
    let exact_d: Vec<(i64, f64)> = t.interior().map(|n| (n, to_f64_nearest(&exact.at(n)))).collect();

    let mut q_diag_residual = 0.0f64;
    let mut q_interior_max = 0.0f64;
    for &(n, d) in &exact_d {
        let r = t.row_of(n).expect("interior row");
        q_diag_residual = q_diag_residual.max((q[(r, r)] - d).abs());
        q_interior_max = q_interior_max.max(q[(r, r)].abs());
    }
    let mut q_offdiag_residual = 0.0f64;
    for n in t.interior() {
        let i = t.row_of(n).expect("interior row");
        for m in t.interior() {
            let j = t.row_of(m).expect("interior row");
            if i != j {
                q_offdiag_residual = q_offdiag_residual.max(q[(i, j)].abs());
            }
        }
    }

    let mut report = TruncationReport {
        half_width,
        dim: t.dim(),
        tol: t.tol(),
        max_weight_sq: t.max_weight_sq(),
        q_diag_residual,
        q_offdiag_residual,
        q_interior_max,
        gamma_residual: None,
        gamma_skipped: 0,
        flat_zero_max: None,
        invariance_violations: invariance_check(&t, &q),
        not_psd: None,
        norm_trace: Vec::new(),
    };

    let s = match transformed_operator(&t, &q) {
        Ok(s) => s,
        Err(OracleError::NotPsd { row, value }) => {
            report.not_psd = Some(NotPsd { index: t.index_of(row), value });
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let ga = gamma_analysis(spec, &exact)?;
    let ambiguous = |n: i64| {
        let d = exact.at(n);
        d.is_positive() && to_f64_nearest(&d) <= t.tol()
    };
    let in_flat = |n: i64| match ga.flat_region {
        FlatRegion::None => false,
        FlatRegion::From(z) => n >= z,
        FlatRegion::Everywhere => true,
    };
    let mut gamma_residual = 0.0f64;
    for n in t.interior() {
        let entry = s[(t.row_of(n + 1).expect("interior"), t.row_of(n).expect("interior"))];
        if in_flat(n) {
            report.flat_zero_max = Some(report.flat_zero_max.unwrap_or(0.0).max(entry.abs()));
        }
        if ambiguous(n) || ambiguous(n + 1) {
            report.gamma_skipped += 1;
            continue;
        }
        if let GammaValue::Value(g) = ga.at(n) {
            gamma_residual = gamma_residual.max((entry.abs() - to_f64_nearest(&g).sqrt()).abs());
        }
    }
    report.gamma_residual = Some(gamma_residual);
    report.norm_trace = norm_sweep(spec, sweep, rel_tol)?;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Concordance {
    Agrees,
    Disagrees(String),
    /// No claim either way.
    Inconclusive(String),
}

impl std::fmt::Display for Concordance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Concordance::Agrees => f.write_str("oracle AGREES with symbolic verdict"),
            Concordance::Disagrees(why) => write!(f, "oracle DISAGREES with symbolic verdict: {why}"),
            Concordance::Inconclusive(why) => write!(f, "{why}; no concordance claimed"),
        }
    }
}

/// Indices the interior must contain before the truncation can speak for
/// the verdict.
fn required_span(spec: &WeightSpec, verdict: &Verdict) -> (i64, i64) {
    let cert = &verdict.certificate;
    let witness = match &verdict.classification {
        Classification::NotHyponormal { witness } => Some(*witness + 1),
        Classification::HyponormalNotNearSubnormal { witness, .. } => *witness,
        _ => None,
    };
    let (mut lo, mut hi) = (spec.window_start - 2, spec.window_end() + 2);
    for a in [cert.k, cert.j0, cert.obstruction_index, witness].into_iter().flatten() {
        lo = lo.min(a - 2);
        hi = hi.max(a + 2);
    }
    (lo, hi)
}

pub fn concordance(spec: &WeightSpec, verdict: &Verdict, report: &TruncationReport) -> Concordance {
    let radius = report.interior_radius();
    let (lo, hi) = required_span(spec, verdict);
    if lo < -radius || hi > radius {
        return Concordance::Inconclusive(format!("insufficient interior: |n| ≤ {radius} does not cover [{lo}, {hi}]"));
    }
    let violations = &report.invariance_violations;
    let trace_max = report.norm_trace.iter().map(|p| p.norm).fold(0.0, f64::max);
    let cert = &verdict.certificate;
    match &verdict.classification {
        Classification::NotHyponormal { .. } => match report.not_psd {
            Some(NotPsd { index, .. }) => {
                let exact = q_diagonal(spec).map(|q| q.at(index));
                match exact {
                    Ok(d) if d.is_negative() => Concordance::Agrees,
                    _ => Concordance::Disagrees(format!("negative entry at n = {index} where d_n ≥ 0")),
                }
            }
            None => Concordance::Disagrees("commutator is positive semidefinite on the interior".into()),
        },
        _ if report.not_psd.is_some() => {
            let p = report.not_psd.expect("checked");
            Concordance::Disagrees(format!("spec not hyponormal at index {} for the oracle", p.index))
        }
        Classification::Normal => {
            let small = report.q_interior_max <= report.tol && trace_max <= report.tol.sqrt();
            if small && violations.is_empty() {
                Concordance::Agrees
            } else {
                Concordance::Disagrees("commutator does not vanish".into())
            }
        }
        Classification::NearSubnormal { .. } => {
            if let Some(v) = violations.first() {
                return Concordance::Disagrees(format!("kernel of Q not invariant at n = {}", v.index));
            }
            let sup = match &cert.gamma.as_ref().and_then(|g| g.sup.clone()) {
                Some(GammaBound::BoundedWithSup { sup, .. }) => to_f64_nearest(sup).sqrt(),
                _ => return Concordance::Disagrees("certificate carries no γ bound".into()),
            };
            match report.norm_trace.iter().find(|p| p.norm > sup * (1.0 + 1e-6) + 1e-9) {
                Some(p) => Concordance::Disagrees(format!("‖S_N‖ = {} exceeds sup γ = {sup} at N = {}", p.norm, p.half_width)),
                None => Concordance::Agrees,
            }
        }
        Classification::HyponormalNotNearSubnormal { via: Theorem::Theorem1Converse, .. } => {
            match (report.norm_trace.first(), report.norm_trace.last()) {
                (Some(a), Some(b)) if report.norm_trace.len() >= 2 => {
                    if b.norm > 1.5 * a.norm {
                        Concordance::Agrees
                    } else {
                        Concordance::Disagrees("norm trace does not grow".into())
                    }
                }
                _ => Concordance::Inconclusive("unbounded γ needs a norm sweep".into()),
            }
        }
        Classification::HyponormalNotNearSubnormal { .. } => match cert.obstruction_index {
            Some(m) if violations.iter().any(|v| v.index == m) => Concordance::Agrees,
            Some(m) => Concordance::Disagrees(format!("no invariance violation at n = {m}")),
            None if !violations.is_empty() => Concordance::Agrees,
            None => Concordance::Disagrees("no invariance violation".into()),
        },
        Classification::Undecided => Concordance::Inconclusive("symbolic verdict undecided".into()),
    }
}
