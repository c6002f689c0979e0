//! Structured pass/fail outcomes shared by the verification routines.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    /// The worse of two outcomes (`Fail` > `Inconclusive` > `Pass`).
    pub fn and(self, other: Status) -> Status {
        self.max(other)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
        })
    }
}

/// `{check, status, witnesses, failing_case?, seed}`.
///
/// Witnesses live in a `BTreeMap`, so the JSON key order is fixed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub status: Status,
    pub witnesses: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_case: Option<Value>,
    pub seed: Option<String>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            status: Status::Pass,
            witnesses: BTreeMap::new(),
            failing_case: None,
            seed: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn witness(&mut self, key: impl Into<String>, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).expect("witness serializes");
        self.witnesses.insert(key.into(), v);
        self
    }

    /// Marks the report failed; the first failing case is kept.
    pub fn fail(&mut self, case: impl Serialize) -> &mut Self {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.failing_case = Some(serde_json::to_value(case).expect("case serializes"));
        }
        self
    }

    pub fn inconclusive(&mut self, case: impl Serialize) -> &mut Self {
        if self.status == Status::Pass {
            self.status = Status::Inconclusive;
            self.failing_case = Some(serde_json::to_value(case).expect("case serializes"));
        }
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed.to_string());
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.status)?;
        if let Some(c) = &self.failing_case {
            write!(f, " (case {c})")?;
        }
        Ok(())
    }
}
