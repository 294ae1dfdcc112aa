//! Residual reports shared by every checker.

use std::fmt;

use crate::confcore::ModValue;
use crate::par;

/// One identity that failed on one basis tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub identity: String,
    pub tuple: Vec<String>,
    pub residual: ModValue,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    /// Number of (identity, tuple) instances evaluated.
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }

    /// Records one instance; a nonzero residual becomes a failure.
    pub fn record(&mut self, identity: &str, tuple: Vec<String>, residual: ModValue) {
        self.checked += 1;
        if !residual.is_zero() {
            self.failures.push(Failure {
                identity: identity.to_string(),
                tuple,
                residual,
            });
        }
    }

    pub fn failures_for<'a>(&'a self, identity: &'a str) -> impl Iterator<Item = &'a Failure> + 'a {
        self.failures.iter().filter(move |f| f.identity == identity)
    }

    /// Distinct identity ids that failed, in first-failure order.
    pub fn failed_identities(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for f in &self.failures {
            if !out.contains(&f.identity) {
                out.push(f.identity.clone());
            }
        }
        out
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass ({} checks)", self.checked);
        }
        writeln!(f, "fail ({} of {} checks)", self.failures.len(), self.checked)?;
        for x in &self.failures {
            writeln!(f, "  {} ({}): {}", x.identity, x.tuple.join(", "), x.residual)?;
        }
        Ok(())
    }
}

/// Runs `check` on every tuple (in parallel when enabled) and merges the
/// partial reports in tuple order.
pub fn check_tuples<F>(tuples: &[Vec<usize>], check: F) -> CheckReport
where
    F: Fn(&[usize]) -> CheckReport + Sync + Send,
{
    let parts = par::map(tuples, |t| check(t));
    let mut out = CheckReport::default();
    for p in parts {
        out.merge(p);
    }
    out
}
