//! Validation reports: every checker returns a list of per-instance residuals
//! rather than a bare boolean, so failures point at the offending instance.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckItem {
    /// Which identity or axiom instance was checked, e.g. `pentagon(t,t,t,t)`.
    pub what: String,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub tolerance: f64,
    /// Only failing (or otherwise noteworthy) instances are recorded
    /// individually; `checked` counts everything that ran.
    pub checked: usize,
    pub max_residual: f64,
    pub failures: Vec<CheckItem>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new(tolerance: f64) -> Self {
        ValidationReport { tolerance, ..Default::default() }
    }

    pub fn record(&mut self, what: impl FnOnce() -> String, residual: f64) {
        self.checked += 1;
        if residual > self.max_residual {
            self.max_residual = residual;
        }
        if !(residual <= self.tolerance) {
            self.failures.push(CheckItem { what: what(), residual, pass: false });
        }
    }

    /// Record a hard structural failure (shape problems, missing data).
    pub fn fail(&mut self, what: impl Into<String>) {
        self.checked += 1;
        self.max_residual = f64::INFINITY;
        self.failures.push(CheckItem { what: what.into(), residual: f64::INFINITY, pass: false });
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, prefix: &str, other: ValidationReport) {
        self.checked += other.checked;
        self.max_residual = self.max_residual.max(other.max_residual);
        for mut item in other.failures {
            item.what = format!("{prefix}: {}", item.what);
            self.failures.push(item);
        }
        for n in other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "{}: {} checks, max residual {:.3e} (tol {:.1e})",
            if self.pass() { "PASS" } else { "FAIL" },
            self.checked,
            self.max_residual,
            self.tolerance
        )?;
        for item in &self.failures {
            writeln!(f, "  FAIL {}  residual {:.3e}", item.what, item.residual)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
