//! Machine-readable verifier reports.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

impl Status {
    /// Fail dominates Unknown, which dominates Pass.
    pub fn combine(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Unknown, _) | (_, Status::Unknown) => Status::Unknown,
            _ => Status::Pass,
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub details: Vec<String>,
    pub witnesses: Vec<String>,
}

impl Report {
    pub fn new(check: &str) -> Report {
        Report { check: check.to_string(), status: Status::Pass, details: vec![], witnesses: vec![] }
    }

    /// Records a detail line and folds its status into the report.
    pub fn record(&mut self, status: Status, line: impl Into<String>) {
        self.status = self.status.combine(status);
        self.details.push(format!("{status}: {}", line.into()));
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    pub fn witness(&mut self, w: impl Into<String>) {
        self.witnesses.push(w.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }
}
