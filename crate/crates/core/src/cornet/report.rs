use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;

use super::exec::{run_cases, salt, CaseRng, Exec};

/// Counterexamples kept per report; the violation count is always exact.
pub const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: u64,
    pub n_max: u64,
    pub exec: Exec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            cases: 200,
            n_max: 6,
            exec: Exec::Parallel,
        }
    }
}

/// Result of one sampled case.
#[derive(Clone, Debug)]
pub enum Case {
    Pass,
    /// The law's premise did not hold for any candidate.
    Vacuous,
    Fail(Value),
    /// Neither pass nor fail: an observation worth reporting.
    Finding(Value),
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub law: String,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub premise_hits: Option<u64>,
    pub violations: u64,
    pub counterexamples: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Collects case outcomes in case order.
    pub fn tally(law: &str, outcomes: Vec<Case>, elapsed: Duration) -> Self {
        let mut report = LawReport {
            law: law.to_string(),
            cases: outcomes.len() as u64,
            premise_hits: None,
            violations: 0,
            counterexamples: Vec::new(),
            findings: Vec::new(),
            note: None,
            elapsed,
        };
        let mut vacuous = 0;
        for o in outcomes {
            match o {
                Case::Pass => {}
                Case::Vacuous => vacuous += 1,
                Case::Fail(v) => {
                    report.violations += 1;
                    if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
                        report.counterexamples.push(v);
                    }
                }
                Case::Finding(v) => {
                    if report.findings.len() < MAX_COUNTEREXAMPLES {
                        report.findings.push(v);
                    }
                }
            }
        }
        if vacuous > 0 {
            report.premise_hits = Some(report.cases - vacuous);
        }
        report
    }

    /// Runs `cfg.cases` seeded cases of one law.
    pub fn run<F>(law: &str, cfg: &SuiteConfig, f: F) -> Self
    where
        F: Fn(u64, &mut CaseRng) -> Case + Sync + Send,
    {
        let start = Instant::now();
        let outcomes = run_cases(cfg.exec, cfg.seed ^ salt(law), cfg.cases, f);
        LawReport::tally(law, outcomes, start.elapsed())
    }

    /// Like [`LawReport::run`] but reports premise hits even when every case hit.
    pub fn run_conditional<F>(law: &str, cfg: &SuiteConfig, f: F) -> Self
    where
        F: Fn(u64, &mut CaseRng) -> Case + Sync + Send,
    {
        let mut r = Self::run(law, cfg, f);
        r.premise_hits.get_or_insert(r.cases);
        r
    }
}

/// `(n, m)` for case `i`, cycling through all pairs in `1..=n_max`.
pub fn multipliers(case: u64, n_max: u64) -> (u64, u64) {
    (case % n_max + 1, (case / n_max) % n_max + 1)
}
