//! The report stream: one record per checked identity.

use homcoder_core::{parse_scalar, CheckReport, Scalar, Witness};
use serde::{Deserialize, Serialize};

/// `witness_index` is the basis input (one index per tensor factor) on
/// which the identity failed; `lhs`/`rhs` are both sides evaluated there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub name: String,
    pub passed: bool,
    pub witness_index: Option<Vec<usize>>,
    pub lhs: Option<Vec<String>>,
    pub rhs: Option<Vec<String>>,
}

fn strings(values: &[Scalar]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

impl From<&CheckReport> for ReportRecord {
    fn from(report: &CheckReport) -> Self {
        let witness = report.witness();
        Self {
            name: report.identity_name.clone(),
            passed: report.passed(),
            witness_index: witness.map(|w| w.input.clone()),
            lhs: witness.map(|w| strings(&w.lhs)),
            rhs: witness.map(|w| strings(&w.rhs)),
        }
    }
}

impl ReportRecord {
    /// Rebuilds the library report; `None` if the record is inconsistent
    /// or holds a malformed rational.
    pub fn to_check_report(&self) -> Option<CheckReport> {
        let scalars = |v: &Vec<String>| {
            v.iter()
                .map(|s| parse_scalar(s))
                .collect::<Option<Vec<_>>>()
        };
        let witness = match (&self.witness_index, &self.lhs, &self.rhs) {
            (None, None, None) => None,
            (Some(input), Some(lhs), Some(rhs)) => Some(Witness {
                input: input.clone(),
                lhs: scalars(lhs)?,
                rhs: scalars(rhs)?,
            }),
            _ => return None,
        };
        if witness.is_some() == self.passed {
            return None;
        }
        Some(CheckReport::from_parts(self.name.clone(), witness))
    }

    /// One human-readable line.
    pub fn line(&self) -> String {
        if self.passed {
            return format!("{} PASS", self.name);
        }
        let list = |v: &Option<Vec<String>>| v.as_deref().unwrap_or_default().join(", ");
        format!(
            "{} FAIL at {:?}: lhs = [{}], rhs = [{}]",
            self.name,
            self.witness_index.as_deref().unwrap_or_default(),
            list(&self.lhs),
            list(&self.rhs)
        )
    }
}

pub fn records(reports: &[CheckReport]) -> Vec<ReportRecord> {
    reports.iter().map(ReportRecord::from).collect()
}

/// Parses a JSON report list back into library reports.
pub fn parse_reports(text: &str) -> Result<Vec<CheckReport>, String> {
    let records: Vec<ReportRecord> = serde_json::from_str(text).map_err(|e| e.to_string())?;
    records
        .iter()
        .map(|r| {
            r.to_check_report()
                .ok_or_else(|| format!("inconsistent record `{}`", r.name))
        })
        .collect()
}
