//! Reports in two renderings: pretty JSON (see `schema/report.schema.json`)
//! and line-oriented text. Both are produced from the same [`Report`].

use std::fmt::Write as _;

use nearsub_core::classifier::{GammaSummary, Replay, StructureProfile};
use nearsub_core::polycert::Limit;
use nearsub_core::rational::{format_sqrt, to_f64_nearest, Rational};
use nearsub_core::shiftcalc::{FlatRegion, GammaBound};
use nearsub_core::{Classification, Verdict};
use nearsub_oracle::{Concordance, TruncationReport};
use serde::{Deserialize, Serialize};

pub const EVIDENCE_NOTE: &str = "finite-section results are evidence; the symbolic certificate is the proof";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub name: Option<String>,
    pub summary: String,
    pub verdict: VerdictDto,
    pub certificate: CertificateDto,
    pub oracle: Option<OracleDto>,
    pub annotations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDto {
    pub class: String,
    pub theorem: String,
    pub witness: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactDto {
    pub exact: String,
    pub decimal: String,
}

impl ExactDto {
    fn new(value: &Rational) -> Self {
        ExactDto { exact: value.to_string(), decimal: to_f64_nearest(value).to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDto {
    pub left_shape: String,
    /// One symbol per `n` in `[L - 1, R]`.
    pub window_relations: String,
    pub right_shape: String,
    pub first_equality_index: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum LimitDto {
    Finite { gamma_sq: ExactDto, gamma: String },
    Infinite { sign: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SupDto {
    Bounded { gamma_sq: ExactDto, gamma: String, attained_at: Option<i64> },
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FlatDto {
    None,
    From { index: i64 },
    Everywhere,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaDto {
    pub left_limit: LimitDto,
    pub right_limit: LimitDto,
    pub sup: Option<SupDto>,
    pub flat_region: FlatDto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDto {
    pub k: Option<i64>,
    pub j0: Option<i64>,
    pub obstruction_index: Option<i64>,
    pub weight_sup: ExactDto,
    pub structure: Option<StructureDto>,
    pub gamma: Option<GammaDto>,
    pub replay: String,
    pub replay_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolationDto {
    pub index: i64,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NotPsdDto {
    pub index: i64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormPointDto {
    pub half_width: usize,
    pub norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConcordanceDto {
    /// `agrees`, `disagrees` or `inconclusive`.
    pub status: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleDto {
    pub half_width: usize,
    pub dim: usize,
    pub tol: f64,
    pub max_weight_sq: f64,
    pub q_diag_residual: f64,
    pub q_offdiag_residual: f64,
    pub gamma_residual: Option<f64>,
    pub gamma_skipped: usize,
    pub flat_zero_max: Option<f64>,
    pub invariance_violations: Vec<ViolationDto>,
    pub not_psd: Option<NotPsdDto>,
    pub norm_trace: Vec<NormPointDto>,
    pub concordance: ConcordanceDto,
}

fn limit_dto(limit: &Limit) -> LimitDto {
    match limit {
        Limit::Finite(v) => LimitDto::Finite { gamma_sq: ExactDto::new(v), gamma: format_sqrt(v) },
        Limit::Infinite(sign) => LimitDto::Infinite { sign: if sign.is_lt() { "-" } else { "+" }.to_string() },
    }
}

fn gamma_dto(g: &GammaSummary) -> GammaDto {
    GammaDto {
        left_limit: limit_dto(&g.left_limit),
        right_limit: limit_dto(&g.right_limit),
        sup: g.sup.as_ref().map(|s| match s {
            GammaBound::BoundedWithSup { sup, attained_at } => {
                SupDto::Bounded { gamma_sq: ExactDto::new(sup), gamma: format_sqrt(sup), attained_at: *attained_at }
            }
            GammaBound::Unbounded => SupDto::Unbounded,
        }),
        flat_region: match g.flat_region {
            FlatRegion::None => FlatDto::None,
            FlatRegion::From(index) => FlatDto::From { index },
            FlatRegion::Everywhere => FlatDto::Everywhere,
        },
    }
}

fn structure_dto(p: &StructureProfile) -> StructureDto {
    StructureDto {
        left_shape: p.left_shape.to_string(),
        window_relations: p.window_relations.iter().map(|r| r.symbol()).collect(),
        right_shape: p.right_shape.to_string(),
        first_equality_index: p.first_equality_index,
    }
}

pub fn oracle_dto(r: &TruncationReport, concordance: &Concordance) -> OracleDto {
    let status = match concordance {
        Concordance::Agrees => "agrees",
        Concordance::Disagrees(_) => "disagrees",
        Concordance::Inconclusive(_) => "inconclusive",
    };
    OracleDto {
        half_width: r.half_width,
        dim: r.dim,
        tol: r.tol,
        max_weight_sq: r.max_weight_sq,
        q_diag_residual: r.q_diag_residual,
        q_offdiag_residual: r.q_offdiag_residual,
        gamma_residual: r.gamma_residual,
        gamma_skipped: r.gamma_skipped,
        flat_zero_max: r.flat_zero_max,
        invariance_violations: r.invariance_violations.iter().map(|v| ViolationDto { index: v.index, magnitude: v.magnitude }).collect(),
        not_psd: r.not_psd.map(|p| NotPsdDto { index: p.index, value: p.value }),
        norm_trace: r
            .norm_trace
            .iter()
            .map(|p| NormPointDto { half_width: p.half_width, norm: p.norm, iterations: p.iterations, converged: p.converged })
            .collect(),
        concordance: ConcordanceDto { status: status.to_string(), message: concordance.to_string() },
    }
}

impl Report {
    pub fn new(name: Option<&str>, verdict: &Verdict, replay: &Replay) -> Self {
        let cert = &verdict.certificate;
        let witness = match &verdict.classification {
            Classification::NotHyponormal { witness } => Some(*witness),
            Classification::HyponormalNotNearSubnormal { witness, .. } => *witness,
            _ => None,
        };
        Report {
            name: name.map(str::to_string),
            summary: verdict.summary(),
            verdict: VerdictDto {
                class: verdict.classification.tag().to_string(),
                theorem: cert.theorem.tag().to_string(),
                witness,
            },
            certificate: CertificateDto {
                k: cert.k,
                j0: cert.j0,
                obstruction_index: cert.obstruction_index,
                weight_sup: ExactDto::new(&cert.weight_sup),
                structure: cert.structure.as_ref().map(structure_dto),
                gamma: cert.gamma.as_ref().map(gamma_dto),
                replay: match replay {
                    Replay::Consistent => "consistent".to_string(),
                    Replay::Inconsistent(why) => format!("inconsistent: {why}"),
                },
                replay_points: cert.replay_points.len(),
            },
            oracle: None,
            annotations: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let opt = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
        let mut line = |key: &str, value: &str| writeln!(out, "{key}: {value}").expect("string write");
        if let Some(name) = &self.name {
            line("spec", name);
        }
        line("summary", &self.summary);
        line("class", &self.verdict.class);
        line("theorem", &self.verdict.theorem);
        line("witness", &opt(self.verdict.witness));
        let c = &self.certificate;
        line("k", &opt(c.k));
        line("j0", &opt(c.j0));
        line("obstruction index", &opt(c.obstruction_index));
        line("weight sup", &exact_text(&c.weight_sup));
        if let Some(s) = &c.structure {
            line("left shape", &s.left_shape);
            line("window relations", &s.window_relations);
            line("right shape", &s.right_shape);
            line("first equality", &opt(s.first_equality_index));
        }
        if let Some(g) = &c.gamma {
            line("left γ² limit", &limit_text(&g.left_limit));
            line("right γ² limit", &limit_text(&g.right_limit));
            let sup = match &g.sup {
                None => "-".to_string(),
                Some(SupDto::Unbounded) => "unbounded".to_string(),
                Some(SupDto::Bounded { gamma_sq, gamma, attained_at }) => {
                    let at = attained_at.map_or("not attained".to_string(), |n| format!("attained at n = {n}"));
                    format!("{} (γ = {gamma}), {at}", exact_text(gamma_sq))
                }
            };
            line("γ² sup", &sup);
            let flat = match g.flat_region {
                FlatDto::None => "none".to_string(),
                FlatDto::From { index } => format!("n ≥ {index}"),
                FlatDto::Everywhere => "everywhere".to_string(),
            };
            line("flat region", &flat);
        }
        line("replay", &format!("{} ({} points)", c.replay, c.replay_points));
        if let Some(o) = &self.oracle {
            oracle_text(o, &mut line);
        }
        for a in &self.annotations {
            line("note", a);
        }
        out
    }
}

fn exact_text(v: &ExactDto) -> String {
    if v.exact == v.decimal {
        v.exact.clone()
    } else {
        format!("{} ≈ {}", v.exact, v.decimal)
    }
}

fn limit_text(l: &LimitDto) -> String {
    match l {
        LimitDto::Finite { gamma_sq, gamma } => format!("{} (γ → {gamma})", exact_text(gamma_sq)),
        LimitDto::Infinite { sign } => format!("{sign}infinity"),
    }
}

fn opt_f64(v: Option<f64>) -> String {
    v.map_or("-".to_string(), |x| format!("{x:e}"))
}

fn oracle_text(o: &OracleDto, line: &mut impl FnMut(&str, &str)) {
    line("oracle truncation", &format!("N = {}, dim = {}, tol = {:e}", o.half_width, o.dim, o.tol));
    line("oracle q diag residual", &format!("{:e}", o.q_diag_residual));
    line("oracle q offdiag residual", &format!("{:e}", o.q_offdiag_residual));
    line("oracle γ residual", &opt_f64(o.gamma_residual));
    line("oracle γ skipped", &o.gamma_skipped.to_string());
    line("oracle flat region max", &opt_f64(o.flat_zero_max));
    if let Some(p) = &o.not_psd {
        line("oracle", &format!("spec not hyponormal at index {} (Q_nn = {:e})", p.index, p.value));
    }
    if o.invariance_violations.is_empty() {
        line("oracle violations", "none");
    }
    for v in &o.invariance_violations {
        line("oracle violation", &format!("n = {}, ‖Q T e_n‖ = {}", v.index, v.magnitude));
    }
    for p in &o.norm_trace {
        let flag = if p.converged { "" } else { ", not converged" };
        line("oracle norm", &format!("N = {}: {} ({} iterations{flag})", p.half_width, p.norm, p.iterations));
    }
    line("oracle concordance", &o.concordance.message);
}
