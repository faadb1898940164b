//! Pass/fail reports produced by the checkers.

use std::fmt;

use serde::Serialize;

/// Failure messages are kept up to a limit; the count is always exact.
const KEEP_FAILURES: usize = 50;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: 0, failure_count: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Records one check; the message is only built on failure.
    pub fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(message());
        }
    }

    pub fn fail(&mut self, message: String) {
        self.failure_count += 1;
        if self.failures.len() < KEEP_FAILURES {
            self.failures.push(message);
        }
    }

    pub fn absorb(&mut self, other: Report) {
        self.checks += other.checks;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < KEEP_FAILURES {
                self.failures.push(format!("{}: {f}", other.title));
            }
        }
    }

    pub fn any_failure_contains(&self, needle: &str) -> bool {
        self.failures.iter().any(|f| f.contains(needle))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ({} checks", self.title, self.checks)?;
        if self.failure_count > 0 {
            write!(f, ", {} failed", self.failure_count)?;
        }
        write!(f, ")")?;
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}
