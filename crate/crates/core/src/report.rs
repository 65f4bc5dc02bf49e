use serde::{Deserialize, Serialize};

/// One named pass/fail check with a human-readable detail line (sample
/// counts, or a counterexample description on failure).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

/// Outcome of a batch verification: a titled list of checks.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, details: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            details: details.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        format!(
            "{}: {}/{} checks passed",
            self.title,
            self.checks.len() - failed,
            self.checks.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_aggregates_checks() {
        let mut r = Report::new("demo");
        r.push("a", true, "ok");
        assert!(r.passed());
        r.push("b", false, "broken");
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.summary(), "demo: 1/2 checks passed");
    }
}
