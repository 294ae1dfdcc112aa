use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::verify::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRow {
    pub identity: String,
    pub tuple: Vec<String>,
    pub residual: String,
}

/// What every verb reports. `status` is `pass` exactly when `failures` is
/// empty, unless the command could not run at all (`error`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub failures: Vec<FailureRow>,
    pub counters: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            status: Status::Pass,
            failures: Vec::new(),
            counters: BTreeMap::new(),
            output: None,
            message: None,
            timing_ms: None,
        }
    }

    pub fn error(command: &str, message: impl Into<String>) -> Self {
        let mut r = Report::new(command);
        r.status = Status::Error;
        r.message = Some(message.into());
        r
    }

    pub fn fail(&mut self, identity: &str, tuple: Vec<String>, residual: impl Into<String>) {
        self.failures.push(FailureRow {
            identity: identity.to_string(),
            tuple,
            residual: residual.into(),
        });
        self.status = Status::Fail;
    }

    pub fn count(&mut self, key: &str, n: u64) {
        *self.counters.entry(key.to_string()).or_default() += n;
    }

    /// Appends the failures and counts of a checker report.
    pub fn absorb(&mut self, rep: &CheckReport) {
        self.count("checked", rep.checked as u64);
        for f in &rep.failures {
            self.fail(&f.identity, f.tuple.clone(), f.residual.to_string());
        }
        let n = self.failures.len() as u64;
        self.counters.insert("failures".into(), n);
    }

    pub fn from_check(command: &str, rep: &CheckReport) -> Self {
        let mut r = Report::new(command);
        r.counters.insert("failures".into(), 0);
        r.absorb(rep);
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// One-line summary plus a line per failure, for stderr.
    pub fn human(&self) -> String {
        let mut s = match self.status {
            Status::Pass => format!("{}: pass", self.command),
            Status::Fail => format!("{}: fail ({} failure(s))", self.command, self.failures.len()),
            Status::Error => format!("{}: error", self.command),
        };
        if let Some(n) = self.counters.get("checked") {
            s.push_str(&format!(", {n} checks"));
        }
        if let Some(t) = self.timing_ms {
            s.push_str(&format!(", {t:.1} ms"));
        }
        s.push('\n');
        if let Some(m) = &self.message {
            s.push_str(&format!("  {m}\n"));
        }
        for f in &self.failures {
            s.push_str(&format!("  {} ({}): {}\n", f.identity, f.tuple.join(", "), f.residual));
        }
        s
    }
}
