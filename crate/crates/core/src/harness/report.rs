use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Outcome of a command, mapped to process exit codes by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Inconclusive,
    AssertionFailed,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::AssertionFailed => "assertion_failed",
        })
    }
}

impl Status {
    /// The worse of two outcomes.
    pub fn and(self, other: Status) -> Status {
        self.max(other)
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::AssertionFailed => 2,
            Status::Inconclusive => 3,
        }
    }
}

/// Exit code for an error that aborted a command.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::CertificateRejected(_) => 2,
        Error::Inconclusive(_) | Error::Truncated { .. } => 3,
        _ => 4,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub command: String,
    pub tool_version: String,
    pub config_hash: String,
    pub seed: u64,
    pub field: String,
    pub algebra_hash: Option<String>,
    pub elapsed_ms: u64,
}

/// A command's result: a JSON body plus a flat table for the TSV view.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub header: ReportHeader,
    pub status: Status,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub messages: Vec<String>,
    #[serde(skip)]
    pub table: Vec<Vec<String>>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Tab-separated table followed by `#`-prefixed status lines.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for row in &self.table {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        for m in &self.messages {
            out.push_str("# ");
            out.push_str(m);
            out.push('\n');
        }
        out.push_str(&format!("# status\t{}\n", self.status));
        out
    }

    /// The JSON body with every `elapsed_ms` field removed, for comparing runs.
    pub fn stable_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        strip_timing(&mut v);
        v
    }
}

/// Removes every `elapsed_ms` key, recursively.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

pub(crate) struct Stopwatch(Instant);

impl Stopwatch {
    pub fn start() -> Self {
        Stopwatch(Instant::now())
    }

    pub fn ms(&self) -> u64 {
        self.0.elapsed().as_millis() as u64
    }
}
