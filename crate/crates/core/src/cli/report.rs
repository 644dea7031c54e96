//! The machine-readable report shared by every command.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::exactla::{Field, Matrix};
use crate::modcat::Verdict;

pub const TOOL: &str = "stratakit";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One check. `status` says whether the check behaved as a correct
/// computation should; `verdict` is the mathematical answer, if any.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub citation: String,
    pub status: Status,
    pub verdict: Option<Verdict>,
    pub witness: Option<String>,
    pub certificate: Value,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, citation: &str, ok: bool) -> Self {
        CheckRecord {
            name: name.into(),
            citation: citation.into(),
            status: Status::from_bool(ok),
            verdict: None,
            witness: None,
            certificate: Value::Null,
        }
    }

    pub fn verdict(mut self, v: Verdict) -> Self {
        self.verdict = Some(v);
        self
    }

    pub fn witness(mut self, w: Option<String>) -> Self {
        self.witness = w;
        self
    }

    pub fn certificate(mut self, c: impl Serialize) -> Self {
        self.certificate = serde_json::to_value(c).unwrap_or(Value::Null);
        self
    }

    /// A check that could not be carried out.
    pub fn failed(name: impl Into<String>, citation: &str, err: &Error) -> Self {
        CheckRecord::new(name, citation, false).witness(Some(err.to_string()))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

impl ErrorInfo {
    pub fn of(e: &Error) -> Self {
        ErrorInfo { kind: error_kind(e).into(), message: e.to_string() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub mode: Option<String>,
    pub input_hash: Option<String>,
    pub field: Option<String>,
    pub seed: u64,
    pub oracle: bool,
    pub n: Option<usize>,
    pub checks: Vec<CheckRecord>,
    pub error: Option<ErrorInfo>,
    pub summary: Summary,
    pub exit_code: i32,
    /// Wall-clock seconds, only when requested.
    pub timing: Option<f64>,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            mode: None,
            input_hash: None,
            field: None,
            seed,
            oracle: false,
            n: None,
            checks: Vec::new(),
            error: None,
            summary: Summary::default(),
            exit_code: 0,
            timing: None,
        }
    }

    /// Fill in the summary and exit code from the checks and error.
    pub fn finish(mut self) -> Self {
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        self.summary = Summary { total: self.checks.len(), passed, failed: self.checks.len() - passed };
        if self.exit_code == 0 && self.summary.failed > 0 {
            self.exit_code = 2;
        }
        self
    }

    pub fn fail_with(mut self, e: &Error) -> Self {
        self.exit_code = exit_code(e);
        self.error = Some(ErrorInfo::of(e));
        self.finish()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}", self.tool, self.version, self.command);
        if let Some(m) = &self.mode {
            out.push_str(&format!(" --mode {m}"));
        }
        out.push('\n');
        if let Some(f) = &self.field {
            out.push_str(&format!("field {f}\n"));
        }
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let verdict = c.verdict.map(|v| format!(" [{}]", verdict_text(v))).unwrap_or_default();
            out.push_str(&format!("{status} {}{verdict}\n", c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!("     witness: {w}\n"));
            }
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error {}: {}\n", e.kind, e.message));
        }
        out.push_str(&format!(
            "{} checks, {} passed, {} failed, exit {}\n",
            self.summary.total, self.summary.passed, self.summary.failed, self.exit_code
        ));
        out
    }
}

pub fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "YES",
        Verdict::No => "NO",
        Verdict::Undecided => "UNDECIDED",
    }
}

pub fn input_hash(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "PARSE",
        Error::Schema(_) => "SCHEMA",
        Error::NonAdmissible(_) => "NON-ADMISSIBLE",
        Error::PossiblyInfinite(_) => "POSSIBLY-INFINITE",
        Error::InvalidIdempotent(_) => "INVALID-IDEMPOTENT",
        Error::DimensionMismatch(_) => "DIMENSION-MISMATCH",
        Error::InvalidPoset(_) => "INVALID-POSET",
        Error::InvalidGluing(_) => "INVALID-GLUING",
        Error::Invariant(_) => "INVARIANT",
        Error::IterationBound(..) => "ITERATION-BOUND",
        Error::OracleOverRationals => "ORACLE-OVER-RATIONALS",
        Error::UnsupportedField(_) => "UNSUPPORTED-FIELD",
    }
}

/// 1 for unreadable input, 3 for an oracle request over `Q`, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Schema(_) | Error::UnsupportedField(_) => 1,
        Error::OracleOverRationals => 3,
        _ => 2,
    }
}

/// Rows of a matrix as exact field elements.
pub fn matrix_strings<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
}
