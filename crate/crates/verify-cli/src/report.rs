use serde::{Deserialize, Serialize};

/// Parameters a report was produced with, embedded for reproducibility.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct Params {
    pub seed: u64,
    pub tol: f64,
}

/// One verified inequality instance. For a bound `lhs <= rhs` the slack is
/// `rhs - lhs`; for an identity the slack is `-|lhs - rhs|`. Either way the
/// instance passes exactly when the slack is at least minus the report
/// tolerance (strict instances additionally demand a positive slack).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Instance {
    pub id: String,
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
}

/// Outcome of one named check over a batch of instances.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerificationReport {
    pub check: String,
    pub params: Params,
    pub instances: Vec<Instance>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, seed: u64, tol: f64) -> Self {
        VerificationReport {
            check: check.into(),
            params: Params { seed, tol },
            instances: Vec::new(),
            pass: true,
        }
    }

    fn push(&mut self, instance: Instance) {
        self.pass = self.pass && instance.pass;
        self.instances.push(instance);
    }

    /// Records `lhs <= rhs` up to the report tolerance.
    pub fn push_le(&mut self, id: impl Into<String>, k: usize, lhs: f64, rhs: f64) {
        let slack = rhs - lhs;
        let pass = slack >= -self.params.tol;
        self.push(Instance {
            id: id.into(),
            k,
            lhs,
            rhs,
            slack,
            pass,
        });
    }

    /// Records `lhs == rhs` up to the report tolerance.
    pub fn push_eq(&mut self, id: impl Into<String>, k: usize, lhs: f64, rhs: f64) {
        let slack = -(lhs - rhs).abs();
        let pass = slack >= -self.params.tol;
        self.push(Instance {
            id: id.into(),
            k,
            lhs,
            rhs,
            slack,
            pass,
        });
    }

    /// Records `lhs < rhs` strictly; the positive margin is the slack.
    pub fn push_strict(&mut self, id: impl Into<String>, k: usize, lhs: f64, rhs: f64) {
        let slack = rhs - lhs;
        let pass = slack > 0.0;
        self.push(Instance {
            id: id.into(),
            k,
            lhs,
            rhs,
            slack,
            pass,
        });
    }

    /// Records an instance that was deliberately not evaluated (for example
    /// a ratio bound on a balanced graph, where the statement degenerates).
    /// Skips never fail.
    pub fn push_skipped(&mut self, id: impl Into<String>, k: usize, note: &str) {
        self.push(Instance {
            id: format!("{} [skipped: {note}]", id.into()),
            k,
            lhs: 0.0,
            rhs: 0.0,
            slack: 0.0,
            pass: true,
        });
    }

    /// Folds another report's instances into this one, prefixing their ids.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut instance in other.instances {
            instance.id = format!("{prefix}{}", instance.id);
            self.push(instance);
        }
    }

    /// Worst slack over all instances, `+inf` when empty.
    pub fn min_slack(&self) -> f64 {
        self.instances
            .iter()
            .map(|i| i.slack)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Plain-text rendering: one line per instance plus a verdict line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "check {} (seed {}, tol {:.1e})\n",
            self.check, self.params.seed, self.params.tol
        ));
        for i in &self.instances {
            out.push_str(&format!(
                "  [{}] k={} lhs={:+.9e} rhs={:+.9e} slack={:+.3e} {}\n",
                i.id,
                i.k,
                i.lhs,
                i.rhs,
                i.slack,
                if i.pass { "ok" } else { "VIOLATED" }
            ));
        }
        out.push_str(&format!(
            "result: {} ({} instances)\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.instances.len()
        ));
        out
    }
}
