//! Check records shared by the checkers and the command-line front end.

use std::fmt;

use serde::Serialize;

/// Verdict of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undetermined,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Undetermined => "undetermined",
        })
    }
}

/// One failing evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub indices: String,
    pub witness: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of a single evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Skipped,
    Fail(Failure),
}

/// Aggregated counts for one identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub identity: String,
    pub anchor: String,
    pub cutoff: String,
    pub indices: String,
    pub status: Status,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
}

/// Failures kept per report.
pub const MAX_WITNESSES: usize = 5;

impl CheckReport {
    pub fn new(identity: &str, anchor: &str, cutoff: impl fmt::Display, indices: impl fmt::Display) -> Self {
        CheckReport {
            identity: identity.into(),
            anchor: anchor.into(),
            cutoff: cutoff.to_string(),
            indices: indices.to_string(),
            status: Status::Undetermined,
            passed: 0,
            failed: 0,
            skipped: 0,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Pass => self.passed += 1,
            Outcome::Skipped => self.skipped += 1,
            Outcome::Fail(f) => {
                self.failed += 1;
                if self.failures.len() < MAX_WITNESSES {
                    self.failures.push(f);
                }
            }
        }
        self.refresh();
    }

    /// Adds counts evaluated in bulk.
    pub fn add_counts(&mut self, passed: usize, failed: usize, skipped: usize) {
        self.passed += passed;
        self.failed += failed;
        self.skipped += skipped;
        self.refresh();
    }

    pub fn absorb(&mut self, other: &CheckReport) {
        self.passed += other.passed;
        self.skipped += other.skipped;
        self.failed += other.failed;
        for f in &other.failures {
            if self.failures.len() < MAX_WITNESSES {
                self.failures.push(f.clone());
            }
        }
        self.refresh();
    }

    fn refresh(&mut self) {
        self.status = if self.failed > 0 {
            Status::Fail
        } else if self.passed > 0 {
            Status::Pass
        } else {
            Status::Undetermined
        };
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{:<28} {:<12} passed={} failed={} skipped={} cutoff={} indices={}",
            self.identity, self.status, self.passed, self.failed, self.skipped, self.cutoff, self.indices
        )
    }
}

/// Header metadata carried by every full report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportHeader {
    pub algebra: String,
    pub kind: String,
    pub cutoff: String,
    pub indices: String,
    pub seed: Option<u64>,
}

/// A full verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub header: ReportHeader,
    pub status: Status,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn new(header: ReportHeader, checks: Vec<CheckReport>) -> Self {
        let passed = checks.iter().map(|c| c.passed).sum();
        let failed: usize = checks.iter().map(|c| c.failed).sum();
        let skipped = checks.iter().map(|c| c.skipped).sum();
        let status = if failed > 0 {
            Status::Fail
        } else if checks.iter().any(|c| c.status == Status::Undetermined) && passed == 0 {
            Status::Undetermined
        } else {
            Status::Pass
        };
        Report { header, status, passed, failed, skipped, checks }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let h = &self.header;
        let mut out = String::new();
        out.push_str(&format!("algebra: {}\n", h.algebra));
        out.push_str(&format!("kind: {}\n", h.kind));
        out.push_str(&format!("cutoff: {}\n", h.cutoff));
        out.push_str(&format!("indices: {}\n", h.indices));
        if let Some(seed) = h.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        for c in &self.checks {
            out.push_str(&c.summary_line());
            out.push('\n');
            for f in &c.failures {
                out.push_str(&format!("  witness {} at {}: lhs = {} ; rhs = {}\n", f.witness, f.indices, f.lhs, f.rhs));
            }
        }
        out.push_str(&format!(
            "total: {} passed={} failed={} skipped={}\n",
            self.status, self.passed, self.failed, self.skipped
        ));
        out
    }
}
