//! Structured pass/fail reports produced by every verifier.

use std::fmt;

use serde::Serialize;

/// At most this many failure witnesses are kept per condition.
pub const MAX_WITNESSES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub condition: String,
    pub passed: bool,
    /// Number of individual instances examined.
    pub checked: usize,
    pub failure_count: usize,
    pub witnesses: Vec<String>,
}

impl CheckOutcome {
    pub fn new(condition: impl Into<String>) -> Self {
        Self { condition: condition.into(), passed: true, checked: 0, failure_count: 0, witnesses: Vec::new() }
    }

    /// Builds an outcome from per-instance results, `Some(witness)` marking a failure.
    pub fn from_results(condition: impl Into<String>, results: impl IntoIterator<Item = Option<String>>) -> Self {
        let mut out = Self::new(condition);
        for r in results {
            out.checked += 1;
            if let Some(w) = r {
                out.fail(w);
            }
        }
        out
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(witness());
        }
    }

    fn fail(&mut self, witness: String) {
        self.passed = false;
        self.failure_count += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub title: String,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: CheckOutcome) {
        self.checks.push(check);
    }

    /// Appends the checks of `other`, prefixing each condition with its title.
    pub fn absorb(&mut self, other: VerificationReport) {
        for mut c in other.checks {
            c.condition = format!("{}: {}", other.title, c.condition);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, condition_prefix: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.condition.starts_with(condition_prefix))
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [{}]", self.title, if self.passed() { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            writeln!(
                f,
                "  {} {} ({} checked, {} failed)",
                if c.passed { "ok  " } else { "FAIL" },
                c.condition,
                c.checked,
                c.failure_count
            )?;
            for w in &c.witnesses {
                writeln!(f, "       witness: {w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_are_capped() {
        let c = CheckOutcome::from_results("x", (0..25).map(|i| Some(i.to_string())));
        assert!(!c.passed);
        assert_eq!(c.failure_count, 25);
        assert_eq!(c.witnesses.len(), MAX_WITNESSES);
    }

    #[test]
    fn absorb_prefixes() {
        let mut a = VerificationReport::new("outer");
        let mut b = VerificationReport::new("inner");
        b.push(CheckOutcome::from_results("cond", [None]));
        a.absorb(b);
        assert_eq!(a.checks[0].condition, "inner: cond");
        assert!(a.passed());
    }
}
