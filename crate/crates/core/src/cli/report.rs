//! Verification reports and their text and JSON renderings.

use std::io::Write;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub paper_ref: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckLine {
    /// Pass iff `residual ≤ tolerance`.
    pub fn measured(name: &str, paper_ref: &str, residual: f64, tolerance: f64) -> Self {
        let status = if residual <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            name: name.into(),
            status,
            residual: Some(residual),
            tolerance: Some(tolerance),
            paper_ref: paper_ref.into(),
            degree: None,
            note: None,
        }
    }

    pub fn skipped(name: &str, paper_ref: &str, note: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Skipped,
            residual: None,
            tolerance: None,
            paper_ref: paper_ref.into(),
            degree: None,
            note: Some(note.into()),
        }
    }

    pub fn failed(name: &str, paper_ref: &str, note: impl Into<String>) -> Self {
        Self {
            status: Status::Fail,
            ..Self::skipped(name, paper_ref, note)
        }
    }

    pub fn with_degree(mut self, degree: usize) -> Self {
        self.degree = Some(degree);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckLine>,
    pub verdict: Verdict,
    /// Wall time; never serialized so reports stay byte-identical.
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

/// Prefix of the checks that form the validation gate.
pub const VALIDATION_PREFIX: &str = "validate.";

impl VerificationReport {
    pub fn new(checks: Vec<CheckLine>) -> Self {
        let verdict = if checks.iter().any(|c| c.status == Status::Fail) {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        Self {
            checks,
            verdict,
            elapsed: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn check(&self, name: &str) -> Option<&CheckLine> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// 0 on pass, 1 when the validation gate fails, 2 on any other failure.
    pub fn exit_code(&self) -> i32 {
        let failed = |c: &&CheckLine| c.status == Status::Fail;
        if self
            .checks
            .iter()
            .filter(failed)
            .any(|c| c.name.starts_with(VALIDATION_PREFIX))
        {
            1
        } else if self.checks.iter().any(|c| c.status == Status::Fail) {
            2
        } else {
            0
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn sci(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.2e}")).unwrap_or_else(|| "-".into())
}

/// Fixed-width table with residuals to three significant digits.
pub fn render_text(report: &VerificationReport) -> String {
    let mut out = format!(
        "{:<34} {:<8} {:>10} {:>10}  {}\n",
        "check", "status", "residual", "tolerance", "reference"
    );
    for line in &report.checks {
        out.push_str(&format!(
            "{:<34} {:<8} {:>10} {:>10}  {}",
            line.name,
            line.status.label(),
            sci(line.residual),
            sci(line.tolerance),
            line.paper_ref
        ));
        if let Some(note) = &line.note {
            out.push_str(&format!(" [{note}]"));
        }
        out.push('\n');
    }
    let verdict = match report.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
    };
    out.push_str(&format!("verdict: {verdict}\n"));
    if let Some(elapsed) = report.elapsed {
        out.push_str(&format!("elapsed: {:.2} s\n", elapsed.as_secs_f64()));
    }
    out
}

/// Stable-key JSON document with full-precision residuals.
pub fn render_json(report: &VerificationReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports always serialize");
    text.push('\n');
    text
}

pub fn emit_report(
    report: &VerificationReport,
    format: Format,
    out: &mut impl Write,
) -> Result<()> {
    let text = match format {
        Format::Text => render_text(report),
        Format::Json => render_json(report),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_has_header_and_verdict() {
        let report = VerificationReport::new(Vec::new());
        let text = render_text(&report);
        assert_eq!(text.lines().count(), 2);
        assert!(text.ends_with("verdict: PASS\n"));
        let json: serde_json::Value = serde_json::from_str(&render_json(&report)).unwrap();
        assert_eq!(json["verdict"], "pass");
        assert!(json["checks"].as_array().unwrap().is_empty());
    }

    #[test]
    fn text_and_json_share_verdict() {
        let report = VerificationReport::new(vec![
            CheckLine::measured("a", "ref a", 1e-3, 1e-6),
            CheckLine::skipped("b", "ref b", "not applicable"),
        ]);
        assert!(render_text(&report).contains("verdict: FAIL"));
        let json: serde_json::Value = serde_json::from_str(&render_json(&report)).unwrap();
        assert_eq!(json["verdict"], "fail");
        let first = &json["checks"][0];
        for key in ["name", "status", "residual", "tolerance", "paper_ref"] {
            assert!(first.get(key).is_some(), "{key}");
        }
        assert!(render_text(&report).contains("1.00e-3"));
        assert_eq!(report.exit_code(), 2);
    }

    #[test]
    fn validation_failures_take_exit_code_one() {
        let report =
            VerificationReport::new(vec![CheckLine::measured("validate.pure", "r", 1.0, 0.0)]);
        assert_eq!(report.exit_code(), 1);
    }

    #[test]
    fn json_round_trips_full_precision() {
        let x = 0.1234567890123456789;
        let report = VerificationReport::new(vec![CheckLine::measured("a", "r", x, 1.0)]);
        let back: VerificationReport = serde_json::from_str(&render_json(&report)).unwrap();
        assert_eq!(back.checks[0].residual, Some(x));
    }
}
