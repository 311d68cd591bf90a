use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// A documented discrepancy with the published presentation.
    Anomaly,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Anomaly => "anomaly",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    pub location: String,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub objects: Vec<String>,
    pub result: Outcome,
    pub residuals: Vec<Residual>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: &str, objects: &[&str]) -> Self {
        CheckReport {
            check: check.to_string(),
            objects: objects.iter().map(|s| s.to_string()).collect(),
            result: Outcome::Pass,
            residuals: vec![],
            notes: vec![],
        }
    }

    pub fn residual(&mut self, location: impl Into<String>, element: impl fmt::Display) {
        self.residuals.push(Residual { location: location.into(), element: element.to_string() });
        if self.result == Outcome::Pass {
            self.result = Outcome::Fail;
        }
    }

    pub fn fail(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
        self.result = Outcome::Fail;
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Downgrade a failure to a documented anomaly.
    pub fn mark_anomaly(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
        self.result = Outcome::Anomaly;
    }

    pub fn passed(&self) -> bool {
        self.result == Outcome::Pass
    }

    /// Fold a sub-check into this one; its residuals and notes are prefixed.
    pub fn absorb(&mut self, prefix: &str, other: &CheckReport) {
        for r in &other.residuals {
            self.residuals.push(Residual { location: format!("{prefix}: {}", r.location), element: r.element.clone() });
        }
        for n in &other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
        self.result = match (self.result, other.result) {
            (Outcome::Fail, _) | (_, Outcome::Fail) => Outcome::Fail,
            (Outcome::Anomaly, _) | (_, Outcome::Anomaly) => Outcome::Anomaly,
            _ => Outcome::Pass,
        };
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}] {} {}", self.result, self.check, self.objects.join(", "))?;
        for r in &self.residuals {
            writeln!(f, "    residual at {}: {}", r.location, r.element)?;
        }
        for n in &self.notes {
            writeln!(f, "    note: {n}")?;
        }
        Ok(())
    }
}
