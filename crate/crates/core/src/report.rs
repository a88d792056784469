//! Analysis reports and their two renderings.
//!
//! The machine rendering is pretty-printed JSON. The text rendering walks the
//! same JSON value, so both always carry identical data.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

use crate::classify::{AlphaReport, LawCheck, NamedClass, NamedVerdict, RouteDiscrepancy, Setting, TheoremCheck};
use crate::curvature::CurvatureAnalysis;
use crate::ftensor::BasicClass;
use crate::sampling::{SamplingConfig, Witness};
use crate::structure::AxiomCheck;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Clean,
    /// No valid structure: `ε = −1` or a failed unit constraint.
    Rejected,
    InputError,
    /// Two routes that must agree did not.
    Inconsistent,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Clean => 0,
            Status::Rejected => 1,
            Status::InputError => 2,
            Status::Inconsistent => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainSection {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub z: [f64; 2],
    pub require_positive: Vec<String>,
    pub require_nonzero: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManifoldSection {
    pub epsilon: i8,
    pub f: String,
    pub xi: [String; 3],
    pub constants: BTreeMap<String, String>,
    pub domain: DomainSection,
    pub sampling: SamplingConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValiditySection {
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub axioms: Vec<AxiomCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasicSection {
    pub classes: Vec<String>,
    pub theta_is_two: bool,
    pub decomposition_valid: bool,
    pub max_residual: f64,
    pub max_g10_identity_defect: f64,
    pub witnesses: BTreeMap<BasicClass, Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetailSection {
    pub setting: Setting,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaReport>,
    pub theorem_checks: Vec<TheoremCheck>,
    pub vanishing_laws: Vec<LawCheck>,
    pub max_f_space_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RouteSection {
    pub agree: bool,
    pub discrepancies: Vec<RouteDiscrepancy>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub magnitude: Option<f64>,
}

impl Failure {
    pub fn new(check: impl Into<String>, witness: Option<Witness>) -> Self {
        Failure { check: check.into(), message: None, point: witness.map(|w| w.point), magnitude: witness.map(|w| w.magnitude) }
    }

    pub fn with_message(mut self, message: impl Into<String>) -> Self {
        self.message = Some(message.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub status: Status,
    pub manifold: ManifoldSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure_validity: Option<ValiditySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basic_classes: Option<BasicSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub named_classes: Option<BTreeMap<NamedClass, NamedVerdict>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification_details: Option<DetailSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<CurvatureAnalysis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route_agreement: Option<RouteSection>,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

impl Report {
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    pub fn render(&self, format: Format) -> String {
        let v = self.to_value();
        match format {
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Text => render_text(&v),
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_) | Value::String(_) | Value::Bool(_))) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        _ => None,
    }
}

/// Small objects of scalars render on one line.
fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    let o = v.as_object()?;
    if o.len() > 3 {
        return None;
    }
    let parts: Option<Vec<String>> = o.iter().map(|(k, x)| scalar(x).map(|s| format!("{k}: {s}"))).collect();
    parts.map(|p| format!("{{{}}}", p.join(", ")))
}

fn walk(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match inline(x) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        walk(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match inline(x) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        walk(out, x, depth + 1);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}

pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    walk(&mut out, v, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_tree() {
        let v = json!({"a": 1, "b": {"c": [1, 2], "d": [{"e": true}, {"f": {"g": 1, "h": 2, "i": 3, "j": 4}}]}});
        let t = render_text(&v);
        assert_eq!(
            t,
            "a: 1\nb:\n  c: [1, 2]\n  d:\n    - {e: true}\n    -\n      f:\n        g: 1\n        h: 2\n        i: 3\n        j: 4\n"
        );
    }
}
