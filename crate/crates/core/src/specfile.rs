//! JSON spec documents:
//!
//! ```json
//! { "N": 2, "M": [1, 1], "Aminus": [[1,1],[1,1]], "A": [[1,1],[1,1]], "Aplus": [[1,1],[1,1]] }
//! ```
//!
//! An optional `"subsets"` object with keys `minus`, `mid`, `plus` lists the
//! copy-index subsets explicitly, each indexed `[n][n']`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{SpecError, SubsetFamily, SubshiftSpec};
use crate::matrix::IntMatrix;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: Vec<usize>,
    #[serde(rename = "Aminus")]
    pub a_minus: IntMatrix,
    #[serde(rename = "A")]
    pub a: IntMatrix,
    #[serde(rename = "Aplus")]
    pub a_plus: IntMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subsets: Option<SubsetFamily>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecFileError {
    #[error("malformed spec JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("N = {n} but M lists {len} copy counts")]
    CopyCount { n: usize, len: usize },
    #[error(transparent)]
    Spec(#[from] SpecError),
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self, SpecFileError> {
        serde_json::from_str(text).map_err(|e| SpecFileError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn from_spec(spec: &SubshiftSpec) -> Self {
        SpecFile {
            n: spec.classes(),
            m: spec.copies().to_vec(),
            a_minus: spec.a_minus().clone(),
            a: spec.a().clone(),
            a_plus: spec.a_plus().clone(),
            subsets: spec.subsets().cloned(),
        }
    }

    pub fn to_spec(&self) -> Result<SubshiftSpec, SpecFileError> {
        if self.m.len() != self.n {
            return Err(SpecFileError::CopyCount { n: self.n, len: self.m.len() });
        }
        let (am, a, ap) = (self.a_minus.clone(), self.a.clone(), self.a_plus.clone());
        Ok(match &self.subsets {
            None => SubshiftSpec::new(self.m.clone(), am, a, ap)?,
            Some(s) => SubshiftSpec::with_checked_subsets(self.m.clone(), am, a, ap, s.clone())?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec files always serialize")
    }
}

/// Parses and validates in one step.
pub fn load_spec(text: &str) -> Result<SubshiftSpec, SpecFileError> {
    SpecFile::parse(text)?.to_spec()
}
