//! The JSON spec file: a window of exact weights plus two tails.

use nearsub_core::polycert::{Polynomial, RationalFunction};
use nearsub_core::rational::{parse_rational, Rational};
use nearsub_core::{TailSpec, WeightSpec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub window_start: i64,
    pub window_values: Vec<String>,
    pub left_tail: TailFile,
    pub right_tail: TailFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TailFile {
    Constant { value: String },
    /// Coefficients in ascending powers of `n`.
    Rational { num: Vec<String>, den: Vec<String> },
}

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("spec file is not valid JSON for a weight spec (line {line}, column {column}): {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("spec failed validation: {}", .0.join("; "))]
    Invalid(Vec<String>),
}

fn rational_at(field: &str, text: &str) -> Result<Rational, SpecFileError> {
    parse_rational(text).map_err(|e| SpecFileError::Field { field: field.to_string(), message: e.to_string() })
}

fn polynomial_at(field: &str, coeffs: &[String]) -> Result<Polynomial, SpecFileError> {
    let values = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| rational_at(&format!("{field}[{i}]"), c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::from_coeffs(values))
}

fn tail_at(field: &str, tail: &TailFile) -> Result<TailSpec, SpecFileError> {
    match tail {
        TailFile::Constant { value } => Ok(TailSpec::Constant(rational_at(&format!("{field}.value"), value)?)),
        TailFile::Rational { num, den } => {
            let num = polynomial_at(&format!("{field}.num"), num)?;
            let den = polynomial_at(&format!("{field}.den"), den)?;
            let f = RationalFunction::new(num, den).map_err(|_| SpecFileError::Field {
                field: format!("{field}.den"),
                message: "zero denominator polynomial".into(),
            })?;
            Ok(TailSpec::RationalForm(f))
        }
    }
}

fn polynomial_strings(p: &Polynomial) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".to_string()];
    }
    p.coeffs().iter().map(Rational::to_string).collect()
}

impl TailFile {
    pub fn from_tail(tail: &TailSpec) -> Self {
        match tail {
            TailSpec::Constant(c) => TailFile::Constant { value: c.to_string() },
            TailSpec::RationalForm(f) => TailFile::Rational { num: polynomial_strings(f.num()), den: polynomial_strings(f.den()) },
        }
    }
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self, SpecFileError> {
        serde_json::from_str(text).map_err(|e| SpecFileError::Json { line: e.line(), column: e.column(), message: e.to_string() })
    }

    /// Builds the spec and runs validation.
    pub fn to_spec(&self) -> Result<WeightSpec, SpecFileError> {
        let values = self
            .window_values
            .iter()
            .enumerate()
            .map(|(i, v)| rational_at(&format!("window_values[{i}]"), v))
            .collect::<Result<Vec<_>, _>>()?;
        let spec = WeightSpec::new(
            self.window_start,
            values,
            tail_at("left_tail", &self.left_tail)?,
            tail_at("right_tail", &self.right_tail)?,
        );
        let report = spec.validate();
        if !report.is_ok() {
            return Err(SpecFileError::Invalid(report.violations.iter().map(ToString::to_string).collect()));
        }
        Ok(spec)
    }

    pub fn from_spec(spec: &WeightSpec, name: Option<&str>, notes: Option<&str>) -> Self {
        SpecFile {
            name: name.map(str::to_string),
            notes: notes.map(str::to_string),
            window_start: spec.window_start,
            window_values: spec.window_values.iter().map(Rational::to_string).collect(),
            left_tail: TailFile::from_tail(&spec.left_tail),
            right_tail: TailFile::from_tail(&spec.right_tail),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("spec files serialize");
        text.push('\n');
        text
    }
}
