//! Run reports: metrics, assertion outcomes, and the verbatim config echo.
//!
//! A report serializes to the same flat key-value text as the configuration
//! it echoes, so a run's inputs and outputs diff with the same tools.

use std::fs;
use std::io;
use std::path::Path;

use super::config::KeyValues;
use super::ConfigError;

/// One checked tolerance: `pass` iff `value <= bound` (NaN fails).
#[derive(Debug, Clone, PartialEq)]
pub struct AssertOutcome {
    pub metric: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Everything a pipeline reports about one run.
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub pipeline: String,
    pub config: Vec<(String, String)>,
    pub metrics: Vec<(String, f64)>,
    pub asserts: Vec<AssertOutcome>,
}

impl RunReport {
    pub fn new(pipeline: &str, config: &KeyValues) -> Self {
        RunReport {
            pipeline: pipeline.to_string(),
            config: config.pairs().to_vec(),
            metrics: Vec::new(),
            asserts: Vec::new(),
        }
    }

    /// Records a scalar metric (insertion order is preserved in the output).
    pub fn metric(&mut self, name: &str, value: f64) {
        self.metrics.push((name.to_string(), value));
    }

    pub fn get_metric(&self, name: &str) -> Option<f64> {
        self.metrics.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    /// Checks every `assert.<metric> = <bound>` entry of the config against
    /// the recorded metrics.
    ///
    /// # Errors
    ///
    /// [`ConfigError::BadValue`] for an unparsable bound or an assertion
    /// naming a metric the pipeline never reported.
    pub fn apply_asserts(&mut self, config: &KeyValues) -> Result<(), ConfigError> {
        let entries: Vec<(String, String)> = config
            .section("assert")
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        for (metric, raw_bound) in entries {
            let key = format!("assert.{metric}");
            let bound: f64 = raw_bound.parse().map_err(|_| ConfigError::BadValue {
                key: key.clone(),
                value: raw_bound.clone(),
                expected: "a real upper bound",
            })?;
            let value = self.get_metric(&metric).ok_or_else(|| ConfigError::BadValue {
                key,
                value: raw_bound,
                expected: "the name of a reported metric",
            })?;
            let pass = value <= bound;
            self.asserts.push(AssertOutcome { metric, value, bound, pass });
        }
        Ok(())
    }

    /// True when no checked tolerance failed (vacuously true without an
    /// assert block).
    pub fn all_pass(&self) -> bool {
        self.asserts.iter().all(|a| a.pass)
    }

    /// Flat key-value rendering: pipeline, config echo, metrics (17
    /// significant digits), assertion verdicts, and overall status.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("pipeline = {}\n", self.pipeline));
        for (key, value) in &self.config {
            out.push_str(&format!("config.{key} = {value}\n"));
        }
        for (name, value) in &self.metrics {
            out.push_str(&format!("metric.{name} = {value:.16e}\n"));
        }
        for a in &self.asserts {
            let verdict = if a.pass { "pass" } else { "fail" };
            out.push_str(&format!(
                "assert.{} = {verdict} ({:.16e} vs bound {:.16e})\n",
                a.metric, a.value, a.bound
            ));
        }
        let status = if self.all_pass() { "pass" } else { "fail" };
        out.push_str(&format!("status = {status}\n"));
        out
    }

    pub fn write(&self, path: &Path) -> io::Result<()> {
        fs::write(path, self.render())
    }
}

// --- tests -------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn asserts_pass_and_fail_on_the_recorded_metrics() {
        let kv = KeyValues::parse(
            "signal.omega = 6\nassert.max_error = 1e-3\nassert.guard_fraction = 0.02\n",
        )
        .unwrap();
        let mut report = RunReport::new("recover-orbit", &kv);
        report.metric("max_error", 4.0e-4);
        report.metric("guard_fraction", 0.05);
        report.apply_asserts(&kv).unwrap();
        assert!(report.asserts[0].pass);
        assert!(!report.asserts[1].pass);
        assert!(!report.all_pass());

        let text = report.render();
        assert!(text.starts_with("pipeline = recover-orbit\n"));
        assert!(text.contains("config.signal.omega = 6\n"));
        assert!(text.contains("metric.max_error = 4.0000000000000002e-4\n"));
        assert!(text.contains("assert.guard_fraction = fail"));
        assert!(text.ends_with("status = fail\n"));
    }

    #[test]
    fn asserting_an_unknown_metric_is_a_config_error() {
        let kv = KeyValues::parse("assert.no_such_metric = 1\n").unwrap();
        let mut report = RunReport::new("simulate", &kv);
        match report.apply_asserts(&kv) {
            Err(ConfigError::BadValue { key, .. }) => {
                assert_eq!(key, "assert.no_such_metric");
            }
            other => panic!("expected BadValue, got {other:?}"),
        }
    }

    #[test]
    fn reports_without_asserts_pass_vacuously() {
        let kv = KeyValues::parse("").unwrap();
        let mut report = RunReport::new("simulate", &kv);
        report.metric("samples", 100.0);
        report.apply_asserts(&kv).unwrap();
        assert!(report.all_pass());
        assert!(report.render().ends_with("status = pass\n"));
    }
}
