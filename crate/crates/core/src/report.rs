//! Verified inequality instances and their CSV/JSON serialization.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowance for every comparison against a measured spectrum.
pub const SLACK_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    /// The inequality holds but carries no information (nonpositive lower
    /// bound, trivial upper bound, empty hypothesis).
    VacuousPass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::VacuousPass => "vacuous-pass",
            Verdict::Fail => "fail",
        }
    }

    pub fn is_fail(self) -> bool {
        self == Verdict::Fail
    }
}

/// Direction of a verified inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    /// `measured >= bound`
    Lower,
    /// `measured <= bound`
    Upper,
}

/// One instance of an inequality: formula side, measured side, and verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub instance: String,
    pub bound_name: String,
    pub group: String,
    pub order: usize,
    pub set_size: usize,
    pub d: Option<usize>,
    pub g: Option<f64>,
    pub omega: Option<usize>,
    pub sense: Sense,
    pub bound: f64,
    pub measured: f64,
    /// Margin in the direction of the inequality; negative means violated.
    pub slack: f64,
    pub holds: bool,
    pub verdict: Verdict,
}

/// Parameters attached to a report.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub group: String,
    pub order: usize,
    pub set_size: usize,
    pub d: Option<usize>,
    pub g: Option<f64>,
    pub omega: Option<usize>,
}

impl BoundReport {
    /// `measured >= bound`; a nonpositive bound is vacuous.
    pub fn lower(name: &str, params: Params, bound: f64, measured: f64) -> Self {
        let vacuous = bound <= 0.0;
        Self::build(name, params, Sense::Lower, bound, measured, measured - bound, vacuous)
    }

    /// `measured <= bound`; `vacuous` marks bounds that no admissible value can exceed.
    pub fn upper(name: &str, params: Params, bound: f64, measured: f64, vacuous: bool) -> Self {
        Self::build(name, params, Sense::Upper, bound, measured, bound - measured, vacuous)
    }

    /// A hypothesis that left nothing to check.
    pub fn vacuous(name: &str, params: Params, bound: f64, measured: f64) -> Self {
        let mut r = Self::build(name, params, Sense::Lower, bound, measured, 0.0, true);
        r.slack = 0.0;
        r
    }

    fn build(name: &str, p: Params, sense: Sense, bound: f64, measured: f64, slack: f64, vacuous: bool) -> Self {
        let holds = slack >= -SLACK_TOLERANCE;
        let verdict = match (holds, vacuous) {
            (false, _) => Verdict::Fail,
            (true, true) => Verdict::VacuousPass,
            (true, false) => Verdict::Pass,
        };
        BoundReport {
            instance: String::new(),
            bound_name: name.to_string(),
            group: p.group,
            order: p.order,
            set_size: p.set_size,
            d: p.d,
            g: p.g,
            omega: p.omega,
            sense,
            bound,
            measured,
            slack,
            holds,
            verdict,
        }
    }

    pub fn with_instance(mut self, id: impl Into<String>) -> Self {
        self.instance = id.into();
        self
    }
}

/// Output format of a report file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format {other:?}; expected csv or json"))),
        }
    }
}

/// Twelve significant digits in scientific notation.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else {
        x.to_string()
    }
}

/// `x` rounded to twelve significant digits.
pub fn round12(x: f64) -> f64 {
    if x.is_finite() {
        fmt_float(x).parse().expect("formatted float parses")
    } else {
        x
    }
}

pub const CSV_HEADER: &str =
    "instance,bound_name,group,order,set_size,d,g,omega,sense,bound,measured,slack,holds,verdict";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn sorted(reports: &[BoundReport]) -> Vec<&BoundReport> {
    let mut v: Vec<&BoundReport> = reports.iter().collect();
    v.sort_by(|a, b| a.instance.cmp(&b.instance));
    v
}

/// CSV text, rows ordered by instance id.
pub fn to_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in sorted(reports) {
        let sense = match r.sense {
            Sense::Lower => "lower",
            Sense::Upper => "upper",
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            csv_field(&r.instance),
            csv_field(&r.bound_name),
            csv_field(&r.group),
            r.order,
            r.set_size,
            opt(r.d),
            r.g.map(fmt_float).unwrap_or_default(),
            opt(r.omega),
            sense,
            fmt_float(r.bound),
            fmt_float(r.measured),
            fmt_float(r.slack),
            r.holds,
            r.verdict.as_str()
        )
        .expect("writing to a String");
    }
    out
}

/// JSON array of flat records, ordered by instance id, floats at twelve digits.
pub fn to_json(reports: &[BoundReport]) -> String {
    let rounded: Vec<BoundReport> = sorted(reports)
        .into_iter()
        .map(|r| BoundReport {
            g: r.g.map(round12),
            bound: round12(r.bound),
            measured: round12(r.measured),
            slack: round12(r.slack),
            ..r.clone()
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rounded).expect("reports serialize");
    s.push('\n');
    s
}

pub fn render(reports: &[BoundReport], format: Format) -> String {
    match format {
        Format::Csv => to_csv(reports),
        Format::Json => to_json(reports),
    }
}

/// Writes the rendered report to `path`.
pub fn emit_report(reports: &[BoundReport], format: Format, path: &Path) -> Result<()> {
    std::fs::write(path, render(reports, format)).map_err(|e| Error::IoFailure(format!("{}: {e}", path.display())))
}

/// Overall status of a batch: the worst verdict.
pub fn any_failure(reports: &[BoundReport]) -> bool {
    reports.iter().any(|r| r.verdict.is_fail())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(id: &str, bound: f64, measured: f64) -> BoundReport {
        BoundReport::lower("basis", Params { group: "Z/7".into(), order: 7, set_size: 4, d: Some(2), ..Default::default() }, bound, measured)
            .with_instance(id)
    }

    #[test]
    fn verdicts() {
        assert_eq!(sample("a", 0.2, 0.3).verdict, Verdict::Pass);
        assert_eq!(sample("a", 0.3, 0.3 - 1e-10).verdict, Verdict::Pass);
        assert_eq!(sample("a", 0.3, 0.2).verdict, Verdict::Fail);
        assert_eq!(sample("a", -0.1, 0.0).verdict, Verdict::VacuousPass);
        let up = BoundReport::upper("norm", Params::default(), 1.0, 0.5, false);
        assert!((up.slack - 0.5).abs() < 1e-15 && up.holds);
    }

    #[test]
    fn csv_layout() {
        assert_eq!(to_csv(&[]), format!("{CSV_HEADER}\n"));
        let csv = to_csv(&[sample("b", 0.21875, 0.5), sample("a", 0.1, 0.2)]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("a,basis,Z/7,7,4,2,,,lower,1.00000000000e-1"));
        assert!(lines[2].contains("2.18750000000e-1"));
    }

    #[test]
    fn json_rounding() {
        let json = to_json(&[sample("a", 1.0 / 3.0, 0.5)]);
        let back: Vec<BoundReport> = serde_json::from_str(&json).unwrap();
        assert_eq!(back[0].bound, 0.333333333333);
        assert_eq!(back[0].verdict, Verdict::Pass);
    }

    #[test]
    fn format_parsing() {
        assert_eq!("CSV".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
