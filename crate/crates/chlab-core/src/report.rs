//! Summary record shared by the numerical verification routines.

use serde::Serialize;

/// Outcome of a verification run over many instances.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    /// Name of the check.
    pub check: String,
    /// Number of instances examined.
    pub instances: usize,
    /// Labels of the instances that failed.
    pub failures: Vec<String>,
    /// Largest residual observed.
    pub max_residual: f64,
}

impl VerificationReport {
    /// An empty report for the named check.
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            instances: 0,
            failures: Vec::new(),
            max_residual: 0.0,
        }
    }

    /// Records one instance with its residual.
    pub fn record(&mut self, residual: f64, ok: bool) {
        let label = format!("instance {}", self.instances);
        self.record_named(label, residual, ok);
    }

    /// Records one labelled instance with its residual.
    pub fn record_named(&mut self, label: impl Into<String>, residual: f64, ok: bool) {
        self.instances += 1;
        if !ok {
            self.failures.push(label.into());
        }
        self.max_residual = self.max_residual.max(residual);
    }

    /// True when every instance passed and at least one was examined.
    pub fn passed(&self) -> bool {
        self.instances > 0 && self.failures.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_failures_and_residuals() {
        let mut r = VerificationReport::new("demo");
        assert!(!r.passed());
        r.record(0.5, true);
        assert!(r.passed());
        r.record(2.0, false);
        assert_eq!((r.instances, r.max_residual), (2, 2.0));
        assert_eq!(r.failures, vec!["instance 1".to_string()]);
        assert!(!r.passed());
    }

    #[test]
    fn serializes_with_fixed_fields() {
        let mut r = VerificationReport::new("demo");
        r.record_named("case a", 0.25, false);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"check":"demo","instances":1,"failures":["case a"],"max_residual":0.25}"#
        );
    }
}
