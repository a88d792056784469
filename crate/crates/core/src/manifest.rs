//! Manifest documents describing one structure to analyze.
//!
//! ```toml
//! name = "almost-paracosymplectic"
//! description = "xi = (e^((Cz+C1)/2), 1, 0), f = Cx + z^2"
//! epsilon = 1
//! f = "C*x + z^2"
//! xi = ["exp((C*z + C1)/2)", "1", "0"]
//! require_positive = []
//! require_nonzero = []
//!
//! [constants]
//! C = "2"
//! C1 = "0"
//!
//! [domain]
//! x = [0.5, 2.0]
//! y = [0.5, 2.0]
//! z = [0.5, 2.0]
//!
//! [sampling]
//! samples = 64
//! seed = 42
//! tol = 1e-9
//! ```
//!
//! Expressions are strings in the scalar-field grammar. Constants are exact
//! rationals written as strings (`"2"`, `"-1/3"`, `"0.25"`) or integers.
//! `description`, the `require_*` lists, `[constants]` and `[sampling]` are
//! optional. Unknown keys are rejected.

use std::ops::Range;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use crate::field::{parse_rational, Constants, ParseError, ScalarField};
use crate::sampling::{Domain, Interval, SamplingConfig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ManifestErrorKind {
    #[error("{0}")]
    Toml(String),
    #[error("in `{field}`: {source}")]
    Expression { field: String, source: ParseError },
    #[error("constant `{0}`: {1}")]
    Constant(String, String),
    #[error("domain: {0}")]
    Domain(String),
    #[error("sampling: {0}")]
    Sampling(String),
    #[error("epsilon must be 1 or -1, got {0}")]
    Epsilon(i64),
    #[error("{0}")]
    Io(String),
}

/// A manifest error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ManifestError {
    pub kind: ManifestErrorKind,
    pub line: usize,
    pub column: usize,
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn error_at(text: &str, span: Range<usize>, kind: ManifestErrorKind) -> ManifestError {
    let (line, column) = position(text, span.start);
    ManifestError { kind, line, column }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDomain {
    x: Spanned<[f64; 2]>,
    y: Spanned<[f64; 2]>,
    z: Spanned<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSampling {
    samples: Option<Spanned<i64>>,
    seed: Option<Spanned<i64>>,
    tol: Option<Spanned<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    name: String,
    description: Option<String>,
    epsilon: Spanned<i64>,
    f: Spanned<String>,
    xi: Spanned<Vec<Spanned<String>>>,
    #[serde(default)]
    constants: std::collections::BTreeMap<String, Spanned<toml::Value>>,
    domain: RawDomain,
    #[serde(default)]
    require_positive: Vec<Spanned<String>>,
    #[serde(default)]
    require_nonzero: Vec<Spanned<String>>,
    sampling: Option<RawSampling>,
}

/// Sources of the expressions, kept for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifestSource {
    pub f: String,
    pub xi: [String; 3],
    pub require_positive: Vec<String>,
    pub require_nonzero: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub name: String,
    pub description: Option<String>,
    /// As written; `−1` is accepted here and rejected when the structure is
    /// built.
    pub epsilon: i8,
    pub f: ScalarField,
    pub xi: [ScalarField; 3],
    pub constants: Constants,
    pub domain: Domain,
    pub sampling: SamplingConfig,
    pub source: ManifestSource,
}

const RESERVED: [&str; 5] = ["x", "y", "z", "exp", "sqrt"];

impl Manifest {
    pub fn load(path: &Path) -> Result<Self, ManifestError> {
        let text = std::fs::read_to_string(path).map_err(|e| ManifestError {
            kind: ManifestErrorKind::Io(format!("{}: {e}", path.display())),
            line: 0,
            column: 0,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ManifestError> {
        let raw: RawManifest = toml::from_str(text).map_err(|e| {
            let span = e.span().unwrap_or(0..0);
            error_at(text, span, ManifestErrorKind::Toml(e.message().trim().to_string()))
        })?;

        let epsilon = match *raw.epsilon.get_ref() {
            1 => 1,
            -1 => -1,
            other => return Err(error_at(text, raw.epsilon.span(), ManifestErrorKind::Epsilon(other))),
        };

        let mut constants = Constants::new();
        for (name, value) in &raw.constants {
            let bad = |msg: &str| error_at(text, value.span(), ManifestErrorKind::Constant(name.clone(), msg.into()));
            let valid_name = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid_name || RESERVED.contains(&name.as_str()) {
                return Err(bad("not a usable identifier"));
            }
            let r = match value.get_ref() {
                toml::Value::String(s) => parse_rational(s),
                toml::Value::Integer(i) => parse_rational(&i.to_string()),
                _ => None,
            };
            constants.insert(name.clone(), r.ok_or_else(|| bad("expected a rational such as \"2\" or \"-1/3\""))?);
        }

        // The string value starts one character after its span start (the quote).
        let expr = |field: &str, s: &Spanned<String>| {
            ScalarField::parse(s.get_ref(), &constants).map_err(|source| {
                let mut err = error_at(text, s.span(), ManifestErrorKind::Toml(String::new()));
                err.column += source.column;
                err.kind = ManifestErrorKind::Expression { field: field.into(), source };
                err
            })
        };

        let f = expr("f", &raw.f)?;
        let xi_items = raw.xi.get_ref();
        if xi_items.len() != 3 {
            return Err(error_at(
                text,
                raw.xi.span(),
                ManifestErrorKind::Toml(format!("xi must list exactly three expressions, found {}", xi_items.len())),
            ));
        }
        let xi = [expr("xi[0]", &xi_items[0])?, expr("xi[1]", &xi_items[1])?, expr("xi[2]", &xi_items[2])?];

        let interval = |name: &str, s: &Spanned<[f64; 2]>| {
            let [lo, hi] = *s.get_ref();
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(error_at(
                    text,
                    s.span(),
                    ManifestErrorKind::Domain(format!("{name} interval [{lo}, {hi}] is not a finite closed interval")),
                ));
            }
            Ok(Interval::new(lo, hi))
        };
        let mut domain = Domain::new(interval("x", &raw.domain.x)?, interval("y", &raw.domain.y)?, interval("z", &raw.domain.z)?);
        for (i, s) in raw.require_positive.iter().enumerate() {
            domain = domain.require_positive(expr(&format!("require_positive[{i}]"), s)?);
        }
        for (i, s) in raw.require_nonzero.iter().enumerate() {
            domain = domain.require_nonzero(expr(&format!("require_nonzero[{i}]"), s)?);
        }

        let mut sampling = SamplingConfig::default();
        if let Some(rs) = &raw.sampling {
            if let Some(n) = &rs.samples {
                if *n.get_ref() < 1 {
                    return Err(error_at(text, n.span(), ManifestErrorKind::Sampling("samples must be positive".into())));
                }
                sampling.samples = *n.get_ref() as usize;
            }
            if let Some(seed) = &rs.seed {
                if *seed.get_ref() < 0 {
                    return Err(error_at(text, seed.span(), ManifestErrorKind::Sampling("seed must be nonnegative".into())));
                }
                sampling.seed = *seed.get_ref() as u64;
            }
            if let Some(tol) = &rs.tol {
                if !(*tol.get_ref() > 0.0 && tol.get_ref().is_finite()) {
                    return Err(error_at(text, tol.span(), ManifestErrorKind::Sampling("tol must be positive".into())));
                }
                sampling.tol = *tol.get_ref();
            }
        }

        Ok(Manifest {
            name: raw.name,
            description: raw.description,
            epsilon,
            f,
            xi,
            constants,
            domain,
            sampling,
            source: ManifestSource {
                f: raw.f.into_inner(),
                xi: [0, 1, 2].map(|i| xi_items[i].get_ref().clone()),
                require_positive: raw.require_positive.into_iter().map(Spanned::into_inner).collect(),
                require_nonzero: raw.require_nonzero.into_iter().map(Spanned::into_inner).collect(),
            },
        })
    }
}
