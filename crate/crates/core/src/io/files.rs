//! JSON state and operator files.
//!
//! ```json
//! {"dim": 2, "re": [1, 0], "im": [0, 0], "units": "m"}
//! {"dim": 2, "re": [[0, 1], [1, 0]], "im": [[0, 0], [0, 0]]}
//! ```

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error as CoreError;
use crate::hilbert::{HermitianOperator, StateVector};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: line {line}, column {column}: {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: field `{field}`: {message}")]
    Field {
        path: String,
        field: String,
        message: String,
    },
    #[error("{path}: {source}")]
    Invalid { path: String, source: CoreError },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dim: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<String>,
}

/// A parsed state together with its units label.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledState {
    pub state: StateVector,
    pub units: Option<String>,
}

fn field_err(path: &str, field: impl Into<String>, message: impl Into<String>) -> FileError {
    FileError::Field {
        path: path.to_string(),
        field: field.into(),
        message: message.into(),
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, FileError> {
    serde_json::from_str(text).map_err(|e| FileError::Syntax {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn read(path: &Path) -> Result<String, FileError> {
    fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

impl StateFile {
    pub fn from_state(state: &StateVector, units: Option<String>) -> Self {
        Self {
            dim: state.dim(),
            re: state.amplitudes().iter().map(|z| z.re).collect(),
            im: state.amplitudes().iter().map(|z| z.im).collect(),
            units,
        }
    }

    pub fn into_state(self, path: &str) -> Result<LabeledState, FileError> {
        for (name, v) in [("re", &self.re), ("im", &self.im)] {
            if v.len() != self.dim {
                return Err(field_err(
                    path,
                    name,
                    format!("expected {} entries, found {}", self.dim, v.len()),
                ));
            }
            if let Some(i) = v.iter().position(|x| !x.is_finite()) {
                return Err(field_err(path, format!("{name}[{i}]"), "not finite"));
            }
        }
        let state = StateVector::from_parts(&self.re, &self.im).map_err(|source| {
            FileError::Invalid {
                path: path.to_string(),
                source,
            }
        })?;
        Ok(LabeledState {
            state,
            units: self.units,
        })
    }
}

impl OperatorFile {
    pub fn from_operator(op: &HermitianOperator) -> Self {
        let n = op.dim();
        let rows = |f: fn(&Complex64) -> f64| {
            (0..n)
                .map(|i| (0..n).map(|j| f(&op.entry(i, j))).collect())
                .collect()
        };
        Self {
            dim: n,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
            units: op.units().map(str::to_string),
        }
    }

    pub fn into_operator(self, path: &str) -> Result<HermitianOperator, FileError> {
        let n = self.dim;
        for (name, m) in [("re", &self.re), ("im", &self.im)] {
            if m.len() != n {
                return Err(field_err(path, name, format!("expected {n} rows, found {}", m.len())));
            }
            for (i, row) in m.iter().enumerate() {
                if row.len() != n {
                    return Err(field_err(
                        path,
                        format!("{name}[{i}]"),
                        format!("expected {n} entries, found {}", row.len()),
                    ));
                }
                if let Some(j) = row.iter().position(|x| !x.is_finite()) {
                    return Err(field_err(path, format!("{name}[{i}][{j}]"), "not finite"));
                }
            }
        }
        let entries = self
            .re
            .iter()
            .flatten()
            .zip(self.im.iter().flatten())
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        let op = HermitianOperator::new(n, entries).map_err(|source| FileError::Invalid {
            path: path.to_string(),
            source,
        })?;
        Ok(match self.units {
            Some(u) => op.with_units(u),
            None => op,
        })
    }
}

pub fn parse_state_str(text: &str, path: &str) -> Result<LabeledState, FileError> {
    parse_json::<StateFile>(text, path)?.into_state(path)
}

pub fn parse_operator_str(text: &str, path: &str) -> Result<HermitianOperator, FileError> {
    parse_json::<OperatorFile>(text, path)?.into_operator(path)
}

pub fn parse_state(path: &Path) -> Result<LabeledState, FileError> {
    parse_state_str(&read(path)?, &path.display().to_string())
}

pub fn parse_operator(path: &Path) -> Result<HermitianOperator, FileError> {
    parse_operator_str(&read(path)?, &path.display().to_string())
}

pub fn state_to_json(state: &StateVector, units: Option<&str>) -> String {
    serde_json::to_string(&StateFile::from_state(state, units.map(str::to_string)))
        .expect("state file serializes")
}

pub fn operator_to_json(op: &HermitianOperator) -> String {
    serde_json::to_string(&OperatorFile::from_operator(op)).expect("operator file serializes")
}
