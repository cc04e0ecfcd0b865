//! The JSON file format for modular data.
//!
//! ```json
//! {
//!   "name": "semion",
//!   "conductor": 4,
//!   "rank": 2,
//!   "S": [
//!     [["1", "0"], ["1", "0"]],
//!     [["1", "0"], ["-1", "0"]]
//!   ],
//!   "theta_exponents": [0, 1]
//! }
//! ```
//!
//! Each `S` entry lists all `φ(conductor)` power-basis coefficients as
//! rational strings in lowest terms; `θ_i = ζ_conductor^theta_exponents[i]`.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use modkit_core::cyclo::{self, parse_rational, render_rational, CycNum};
use modkit_core::mdata::{DatumError, ModularDatum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Deserializer};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {field}: {message}")]
    Syntax {
        field: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

impl FormatError {
    fn invalid(field: impl Into<String>, message: impl fmt::Display) -> Self {
        FormatError::Invalid {
            field: field.into(),
            message: message.to_string(),
        }
    }

    /// The offending field, as a path like `S[1][0][2]`.
    pub fn field(&self) -> Option<&str> {
        match self {
            FormatError::Io { .. } => None,
            FormatError::Syntax { field, .. } | FormatError::Invalid { field, .. } => Some(field),
        }
    }
}

/// A coefficient string that must already be in lowest terms.
struct Coeff(BigRational);

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Coeff).map_err(de::Error::custom)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDatum {
    name: String,
    conductor: u32,
    rank: usize,
    #[serde(rename = "S")]
    s: Vec<Vec<Vec<Coeff>>>,
    theta_exponents: Vec<i64>,
}

/// Parses and validates a datum from JSON text.
pub fn parse_datum(text: &str) -> Result<ModularDatum, FormatError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let raw: RawDatum = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = match e.path().to_string() {
            p if p == "." => String::from("<root>"),
            p => p,
        };
        let inner = e.into_inner();
        let message = strip_position(&inner.to_string());
        FormatError::Syntax {
            field,
            line: inner.line(),
            column: inner.column(),
            message,
        }
    })?;
    de.end().map_err(|e| FormatError::Syntax {
        field: String::from("<root>"),
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    build(raw)
}

/// serde_json appends " at line L column C", which the caller reports.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn build(raw: RawDatum) -> Result<ModularDatum, FormatError> {
    let m = raw.conductor;
    if m == 0 {
        return Err(FormatError::invalid("conductor", "must be positive"));
    }
    if raw.rank == 0 {
        return Err(FormatError::invalid("rank", "must be positive"));
    }
    if raw.s.len() != raw.rank {
        return Err(FormatError::invalid(
            "S",
            format!("has {} rows but rank is {}", raw.s.len(), raw.rank),
        ));
    }
    let width = cyclo::phi(m);
    let mut rows = Vec::with_capacity(raw.rank);
    for (i, row) in raw.s.into_iter().enumerate() {
        if row.len() != raw.rank {
            return Err(FormatError::invalid(
                format!("S[{i}]"),
                format!(
                    "S is not square: row has {} entries, rank is {}",
                    row.len(),
                    raw.rank
                ),
            ));
        }
        let mut out = Vec::with_capacity(row.len());
        for (j, coeffs) in row.into_iter().enumerate() {
            if coeffs.len() != width {
                return Err(FormatError::invalid(
                    format!("S[{i}][{j}]"),
                    format!(
                        "expected {width} coefficients for conductor {m}, got {}",
                        coeffs.len()
                    ),
                ));
            }
            let x = CycNum::new(m, coeffs.into_iter().map(|c| c.0).collect())
                .map_err(|e| FormatError::invalid(format!("S[{i}][{j}]"), e))?;
            out.push(x);
        }
        rows.push(out);
    }
    if raw.theta_exponents.len() != raw.rank {
        return Err(FormatError::invalid(
            "theta_exponents",
            format!(
                "has {} entries but rank is {}",
                raw.theta_exponents.len(),
                raw.rank
            ),
        ));
    }
    for (k, &e) in raw.theta_exponents.iter().enumerate() {
        if !(0..m as i64).contains(&e) {
            return Err(FormatError::invalid(
                format!("theta_exponents[{k}]"),
                format!("{e} is outside 0..{m}"),
            ));
        }
    }
    if raw.theta_exponents[0] != 0 {
        return Err(FormatError::invalid(
            "theta_exponents[0]",
            format!(
                "theta_0 must be 1 (exponent 0), got {}",
                raw.theta_exponents[0]
            ),
        ));
    }
    ModularDatum::new(raw.name, m, rows, &raw.theta_exponents).map_err(|e| {
        let field = match &e {
            DatumError::NonIntegralEntry { i, j } | DatumError::EntryConductor { i, j, .. } => {
                format!("S[{i}][{j}]")
            }
            DatumError::UnitEntry => String::from("S[0][0]"),
            DatumError::ThetaLength { .. } | DatumError::ThetaZero(_) => {
                String::from("theta_exponents")
            }
            _ => String::from("S"),
        };
        FormatError::invalid(field, e)
    })
}

fn coefficients(x: &CycNum) -> Vec<String> {
    let den: &BigInt = x.denominator();
    x.numerators()
        .iter()
        .map(|n| render_rational(&BigRational::new(n.clone(), den.clone())))
        .collect()
}

/// Renders a datum with one `S` row per line.
pub fn render_datum(md: &ModularDatum) -> String {
    let quote = |s: &str| serde_json::to_string(s).expect("strings serialize");
    let mut out = String::new();
    let r = md.rank();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"name\": {},", quote(md.name())).unwrap();
    writeln!(out, "  \"conductor\": {},", md.conductor()).unwrap();
    writeln!(out, "  \"rank\": {r},").unwrap();
    writeln!(out, "  \"S\": [").unwrap();
    for i in 0..r {
        let entries: Vec<String> = (0..r)
            .map(|j| {
                let cs: Vec<String> = coefficients(md.s_entry(i, j))
                    .iter()
                    .map(|c| quote(c))
                    .collect();
                format!("[{}]", cs.join(", "))
            })
            .collect();
        let sep = if i + 1 < r { "," } else { "" };
        writeln!(out, "    [{}]{sep}", entries.join(", ")).unwrap();
    }
    writeln!(out, "  ],").unwrap();
    let theta: Vec<String> = md.theta_exponents().iter().map(|e| e.to_string()).collect();
    writeln!(out, "  \"theta_exponents\": [{}]", theta.join(", ")).unwrap();
    writeln!(out, "}}").unwrap();
    out
}

pub fn load_datum(path: &Path) -> Result<ModularDatum, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_datum(&text)
}

pub fn save_datum(md: &ModularDatum, path: &Path) -> Result<(), FormatError> {
    fs::write(path, render_datum(md)).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}
