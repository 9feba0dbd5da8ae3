//! Uniform verdicts for all checks, as they appear in JSON reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check could not be carried out, e.g. unsupported input.
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub module: String,
    pub check: String,
    pub algebra: String,
    pub status: Status,
    pub witness: Value,
}

impl CheckOutcome {
    pub fn new(
        module: &str,
        check: &str,
        algebra: &str,
        passed: bool,
        witness: impl Serialize,
    ) -> Self {
        CheckOutcome {
            module: module.into(),
            check: check.into(),
            algebra: algebra.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            witness: serde_json::to_value(witness).unwrap_or(Value::Null),
        }
    }

    /// Theorem violations count as failures, everything else as errors.
    pub fn from_error(module: &str, check: &str, algebra: &str, err: &Error) -> Self {
        let status = match err {
            Error::TheoremViolation(_) | Error::Inconsistent(_) => Status::Fail,
            _ => Status::Error,
        };
        CheckOutcome {
            module: module.into(),
            check: check.into(),
            algebra: algebra.into(),
            status,
            witness: serde_json::json!({ "error": err.to_string() }),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// One named identity inside a composite check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl IdentityResult {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        IdentityResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}
