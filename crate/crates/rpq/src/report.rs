//! Outcome types shared by every audit surface.
//!
//! A [`CheckReport`] records how one claim fared over one parameter grid
//! under one deformation. Failures always carry exact counterexamples; skips
//! are counted, never silent.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Verdict for one checked claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    /// Every grid cell satisfied the claim exactly (or within tolerance for
    /// numeric series checks).
    Pass,
    /// At least one cell produced distinct sides; see `counterexamples`.
    Fail,
    /// Equality holds only after multiplying one side by the documented
    /// power of the deformation's `unit`; exact for `unit = 1` kinds.
    PassWithUnitCorrection,
    /// The claim was not asserted under this deformation (outside its
    /// validity domain); the reason is recorded in `notes`.
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let token = match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::PassWithUnitCorrection => "pass_with_unit_correction",
            CheckStatus::Skipped => "skipped",
        };
        f.write_str(token)
    }
}

/// One grid cell where the two sides disagreed, recorded exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Parameter assignment, e.g. `{"n": "3", "kappa": "1"}`.
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
}

impl Counterexample {
    pub fn new<K, V>(params: impl IntoIterator<Item = (K, V)>, lhs: String, rhs: String) -> Self
    where
        K: Into<String>,
        V: fmt::Display,
    {
        let params = params
            .into_iter()
            .map(|(k, v)| (k.into(), v.to_string()))
            .collect();
        Counterexample { params, lhs, rhs }
    }
}

/// Failing cells kept per report; the cell counter still counts the rest.
pub(crate) const MAX_COUNTEREXAMPLES: usize = 8;

/// Outcome of one claim verified over one parameter grid.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    /// Registry token or audit-section name, e.g. `PASCAL_1` or
    /// `STIRLING_ORTHOGONALITY`.
    pub identity: String,
    /// Short stable label tying the claim to its source equation.
    pub paper_eq: String,
    pub status: CheckStatus,
    /// Grid cells evaluated (excluding skipped cells).
    pub cells: u64,
    /// Grid cells excluded as outside the claim's domain.
    pub skipped: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Human-readable caveats (why a claim was skipped, which corrected form
    /// was certified, and so on).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    /// Measured facts worth surfacing that are not pass/fail verdicts, such
    /// as observed deviation factors of a displayed formula.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<String>,
    /// Deformation summary, for log lines; not part of the wire shape.
    #[serde(skip)]
    pub deformation: String,
    /// Grid summary, for log lines; not part of the wire shape.
    #[serde(skip)]
    pub grid: String,
}

impl CheckReport {
    pub fn new(
        identity: impl Into<String>,
        paper_eq: impl Into<String>,
        deformation: impl Into<String>,
    ) -> Self {
        CheckReport {
            identity: identity.into(),
            paper_eq: paper_eq.into(),
            status: CheckStatus::Pass,
            cells: 0,
            skipped: 0,
            counterexamples: Vec::new(),
            notes: None,
            observations: Vec::new(),
            deformation: deformation.into(),
            grid: String::new(),
        }
    }

    pub fn record_pass(&mut self) {
        self.cells += 1;
    }

    pub fn record_skip(&mut self) {
        self.skipped += 1;
    }

    pub fn record_fail(&mut self, counterexample: Counterexample) {
        self.cells += 1;
        if self.status != CheckStatus::Skipped {
            self.status = CheckStatus::Fail;
        }
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(counterexample);
        }
    }

    /// Compares one cell and records the outcome; equality passes.
    pub fn check_cell<K, V>(
        &mut self,
        params: impl IntoIterator<Item = (K, V)>,
        lhs: &impl fmt::Display,
        rhs: &impl fmt::Display,
        equal: bool,
    ) where
        K: Into<String>,
        V: fmt::Display,
    {
        if equal {
            self.record_pass();
        } else {
            self.record_fail(Counterexample::new(params, lhs.to_string(), rhs.to_string()));
        }
    }

    /// Downgrades a clean pass to the unit-corrected verdict.
    pub fn mark_unit_corrected(&mut self) {
        if self.status == CheckStatus::Pass {
            self.status = CheckStatus::PassWithUnitCorrection;
        }
    }

    /// Marks the whole claim as not asserted here, with the reason.
    pub fn mark_skipped(&mut self, reason: impl Into<String>) {
        self.status = CheckStatus::Skipped;
        self.append_note(reason);
    }

    pub fn append_note(&mut self, note: impl Into<String>) {
        let note = note.into();
        match &mut self.notes {
            Some(existing) => {
                existing.push_str("; ");
                existing.push_str(&note);
            }
            None => self.notes = Some(note),
        }
    }

    pub fn observe(&mut self, observation: impl Into<String>) {
        self.observations.push(observation.into());
    }
}

/// Roll-up of report statuses; the CLI prints it after the report array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AuditSummary {
    pub pass: u64,
    pub fail: u64,
    pub unit_corrected: u64,
    pub skipped: u64,
}

impl AuditSummary {
    pub fn of(reports: &[CheckReport]) -> Self {
        let mut summary = AuditSummary { pass: 0, fail: 0, unit_corrected: 0, skipped: 0 };
        for r in reports {
            match r.status {
                CheckStatus::Pass => summary.pass += 1,
                CheckStatus::Fail => summary.fail += 1,
                CheckStatus::PassWithUnitCorrection => summary.unit_corrected += 1,
                CheckStatus::Skipped => summary.skipped += 1,
            }
        }
        summary
    }

    pub fn has_failures(&self) -> bool {
        self.fail > 0
    }
}

/// A check could not run at all (as opposed to running and failing).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("parameters outside the claim's validity domain: {0}")]
    DomainViolation(String),
    #[error("exact evaluation requested for an infinite series: {0}")]
    NonTerminatingSeries(String),
}
