//! Report documents: ordered key-value sections, check verdicts and errors.

use std::fmt;

use serde::Serialize;

use super::Options;
use crate::error::Error;
use crate::field::Field;

/// Version of the machine-readable report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    /// 1-based request index.
    pub index: usize,
    pub kind: String,
    pub name: String,
    pub entries: Vec<Entry>,
}

impl Section {
    pub fn new(index: usize, kind: &str, name: &str) -> Section {
        Section {
            index,
            kind: kind.to_string(),
            name: name.to_string(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push(Entry {
            key: key.into(),
            value: value.to_string(),
        });
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|e| e.key == key).map(|e| e.value.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RequestError {
    pub index: usize,
    pub subject: String,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Failed,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::InputError => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::InputError => "input-error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportOptions {
    pub degree_bound: u32,
    pub poincare_n: usize,
    pub truncation: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    pub field: String,
    pub options: ReportOptions,
    pub sections: Vec<Section>,
    pub checks: Vec<CheckResult>,
    pub errors: Vec<RequestError>,
    pub status: Status,
}

impl ReportDocument {
    pub fn new(command: &str, field: Field, options: Options) -> ReportDocument {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            field: field.to_string(),
            options: ReportOptions {
                degree_bound: options.degree_bound,
                poincare_n: options.poincare_n,
                truncation: options.truncation,
            },
            sections: Vec::new(),
            checks: Vec::new(),
            errors: Vec::new(),
            status: Status::Ok,
        }
    }

    /// A report for a document that could not be read or parsed.
    pub fn input_error(command: &str, options: Options, err: &Error) -> ReportDocument {
        let mut r = ReportDocument::new(command, Field::default(), options);
        r.errors.push(RequestError {
            index: 0,
            subject: "document".into(),
            message: err.to_string(),
        });
        r.finish();
        r
    }

    /// Sets the status from the checks and errors.
    pub fn finish(&mut self) {
        self.status = if !self.errors.is_empty() {
            Status::InputError
        } else if self.checks.iter().any(|c| !c.passed) {
            Status::Failed
        } else {
            Status::Ok
        };
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn section(&self, kind: &str, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.kind == kind && s.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

impl fmt::Display for ReportDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "formalglue-report {}", self.schema_version)?;
        writeln!(f, "command: {}", self.command)?;
        writeln!(f, "field: {}", self.field)?;
        let o = &self.options;
        writeln!(
            f,
            "options: degree-bound={} poincare-n={} truncation={}",
            o.degree_bound, o.poincare_n, o.truncation
        )?;
        for s in &self.sections {
            writeln!(f)?;
            writeln!(f, "[{}] {} {}", s.index, s.kind, s.name)?;
            for e in &s.entries {
                writeln!(f, "  {}: {}", e.key, e.value)?;
            }
        }
        if !self.checks.is_empty() {
            writeln!(f)?;
            writeln!(f, "[checks]")?;
            for c in &self.checks {
                let verdict = if c.passed { "PASS" } else { "FAIL" };
                writeln!(f, "  {verdict} {} {}: {}", c.check, c.subject, c.detail)?;
            }
        }
        if !self.errors.is_empty() {
            writeln!(f)?;
            writeln!(f, "[errors]")?;
            for e in &self.errors {
                writeln!(f, "  [{}] {}: {}", e.index, e.subject, e.message)?;
            }
        }
        writeln!(f)?;
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        writeln!(
            f,
            "summary: {} passed, {} failed, {} errors",
            self.checks.len() - failed,
            failed,
            self.errors.len()
        )?;
        writeln!(f, "status: {}", self.status.as_str())
    }
}
