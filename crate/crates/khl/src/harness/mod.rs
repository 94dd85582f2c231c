//! Named verification suites over configurable scenarios: each suite turns a
//! scenario into a list of independent checks, runs them (optionally in
//! parallel), and collects a report with one record per check that can be
//! emitted as JSON, CSV, or plain text.

pub mod config;
pub mod random;
mod suites;

pub use config::{parse_scenario, scenario_from_str, RingSpec, ScenarioConfig, Suite};

use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;
use thiserror::Error;

/// Input-side failures: unreadable or malformed scenario files, or
/// parameter combinations a suite cannot run on. These map to exit code 2;
/// verification failures are reported inside the [`Report`] instead.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("parse error: {message}")]
    Parse { message: String },
    #[error("validation error: {message}")]
    Validation { message: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Outcome of a single check. Conjecture checks are informational: they
/// report agreement or disagreement but never affect the overall status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "conjecture:agree")]
    ConjectureAgree,
    #[serde(rename = "conjecture:disagree")]
    ConjectureDisagree,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::ConjectureAgree => "conjecture:agree",
            CheckStatus::ConjectureDisagree => "conjecture:disagree",
        }
    }

    /// Only hard failures count against the report status.
    pub fn is_failure(&self) -> bool {
        matches!(self, CheckStatus::Fail)
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One verified statement: what was expected, what was computed, and how
/// long the check took.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub params: String,
    pub expected: String,
    pub computed: String,
    pub status: CheckStatus,
    pub millis: u64,
}

/// A full run: crate version, the effective scenario (defaults filled in),
/// the checks sorted by name, and the conjunction over non-conjecture
/// checks as `"pass"` or `"fail"`.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub config: ScenarioConfig,
    pub checks: Vec<CheckRecord>,
    pub status: String,
}

impl Report {
    /// 0 when every non-conjecture check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.status == "pass" {
            0
        } else {
            1
        }
    }
}

/// `run` returns (expected, computed, pass); an `Err` is recorded as a
/// failed check with the message in the computed column.
type CheckFn = Box<dyn FnOnce() -> Result<(String, String, bool), String> + Send>;

pub(crate) struct CheckJob {
    name: String,
    params: String,
    conjecture: bool,
    run: CheckFn,
}

impl CheckJob {
    pub(crate) fn new(
        name: impl Into<String>,
        params: impl Into<String>,
        run: impl FnOnce() -> Result<(String, String, bool), String> + Send + 'static,
    ) -> CheckJob {
        CheckJob {
            name: name.into(),
            params: params.into(),
            conjecture: false,
            run: Box::new(run),
        }
    }

    pub(crate) fn conjecture(
        name: impl Into<String>,
        params: impl Into<String>,
        run: impl FnOnce() -> Result<(String, String, bool), String> + Send + 'static,
    ) -> CheckJob {
        CheckJob {
            conjecture: true,
            ..CheckJob::new(name, params, run)
        }
    }

    fn execute(self) -> CheckRecord {
        let start = Instant::now();
        let outcome = (self.run)();
        let millis = start.elapsed().as_millis() as u64;
        let (expected, computed, ok) = match outcome {
            Ok(t) => t,
            Err(msg) => (
                "check completes without error".to_string(),
                format!("error: {msg}"),
                false,
            ),
        };
        let status = match (self.conjecture, ok) {
            (false, true) => CheckStatus::Pass,
            (false, false) => CheckStatus::Fail,
            (true, true) => CheckStatus::ConjectureAgree,
            (true, false) => CheckStatus::ConjectureDisagree,
        };
        CheckRecord {
            name: self.name,
            params: self.params,
            expected,
            computed,
            status,
            millis,
        }
    }
}

/// Run the jobs — in a dedicated thread pool when `threads > 1` — and merge
/// deterministically by check name.
fn run_jobs(jobs: Vec<CheckJob>, threads: usize) -> Vec<CheckRecord> {
    let mut records: Vec<CheckRecord> = if threads > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| jobs.into_par_iter().map(CheckJob::execute).collect()),
            Err(_) => jobs.into_iter().map(CheckJob::execute).collect(),
        }
    } else {
        jobs.into_iter().map(CheckJob::execute).collect()
    };
    records.sort_by(|a, b| a.name.cmp(&b.name));
    records
}

/// Run one suite (or `all`, which runs every suite in the catalogue on its
/// canonical instance, reusing the configured seed).
pub fn run_suite(cfg: &ScenarioConfig, threads: usize) -> Result<Report, HarnessError> {
    let jobs = match cfg.suite {
        Suite::All => {
            let mut all = Vec::new();
            for &s in Suite::catalogue() {
                let sub = ScenarioConfig::canonical(s, cfg.seed);
                all.extend(suites::jobs_for(&sub)?);
            }
            all
        }
        _ => suites::jobs_for(cfg)?,
    };
    let checks = run_jobs(jobs, threads.max(1));
    let status = if checks.iter().any(|c| c.status.is_failure()) {
        "fail"
    } else {
        "pass"
    };
    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        checks,
        status: status.to_string(),
    })
}

/// Output encodings for a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => Err(HarnessError::Validation {
                message: format!("unknown format '{other}' (use json, csv, or text)"),
            }),
        }
    }
}

/// Render a report. JSON carries the full structure; CSV is the checks
/// table (name, params, expected, computed, status, millis); text is a
/// human-readable page with one block per check and a summary line.
pub fn emit_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "params", "expected", "computed", "status", "millis"])
                .expect("csv header");
            for c in &report.checks {
                w.write_record([
                    c.name.as_str(),
                    c.params.as_str(),
                    c.expected.as_str(),
                    c.computed.as_str(),
                    c.status.as_str(),
                    &c.millis.to_string(),
                ])
                .expect("csv row");
            }
            String::from_utf8(w.into_inner().expect("csv buffer")).expect("csv utf8")
        }
        ReportFormat::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "khl {} — suite {}: {}\n",
                report.version, report.config.suite, report.status
            ));
            let cfg = serde_json::to_string(&report.config).expect("config serializes");
            out.push_str(&format!("config: {cfg}\n\n"));
            let mut pass = 0usize;
            let mut fail = 0usize;
            let mut conj = 0usize;
            for c in &report.checks {
                let tag = match c.status {
                    CheckStatus::Pass => {
                        pass += 1;
                        "PASS"
                    }
                    CheckStatus::Fail => {
                        fail += 1;
                        "FAIL"
                    }
                    CheckStatus::ConjectureAgree => {
                        conj += 1;
                        "CONJ:AGREE"
                    }
                    CheckStatus::ConjectureDisagree => {
                        conj += 1;
                        "CONJ:DISAGREE"
                    }
                };
                out.push_str(&format!("[{tag}] {} ({} ms)\n", c.name, c.millis));
                out.push_str(&format!("      params:   {}\n", c.params));
                if c.expected == c.computed {
                    out.push_str(&format!("      value:    {}\n", c.computed));
                } else {
                    out.push_str(&format!("      expected: {}\n", c.expected));
                    out.push_str(&format!("      computed: {}\n", c.computed));
                }
            }
            out.push_str(&format!(
                "\n{} checks: {pass} pass, {fail} fail, {conj} conjecture\n",
                report.checks.len()
            ));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job_ok(name: &str) -> CheckJob {
        CheckJob::new(name, "p", || Ok(("x".into(), "x".into(), true)))
    }

    #[test]
    fn records_merge_sorted_and_status_is_a_conjunction() {
        let jobs = vec![
            job_ok("b.second"),
            CheckJob::new("a.first", "p", || Ok(("1".into(), "2".into(), false))),
            CheckJob::conjecture("c.third", "p", || Ok(("1".into(), "2".into(), false))),
        ];
        let recs = run_jobs(jobs, 2);
        let names: Vec<&str> = recs.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, vec!["a.first", "b.second", "c.third"]);
        assert_eq!(recs[0].status, CheckStatus::Fail);
        assert_eq!(recs[1].status, CheckStatus::Pass);
        assert_eq!(recs[2].status, CheckStatus::ConjectureDisagree);
    }

    #[test]
    fn erroring_jobs_become_failed_records() {
        let jobs = vec![CheckJob::new("x", "p", || Err("boom".to_string()))];
        let recs = run_jobs(jobs, 1);
        assert_eq!(recs[0].status, CheckStatus::Fail);
        assert!(recs[0].computed.contains("boom"));
    }

    #[test]
    fn conjecture_disagreement_keeps_the_report_passing() {
        let checks = run_jobs(
            vec![
                job_ok("a"),
                CheckJob::conjecture("b", "p", || Ok(("1".into(), "2".into(), false))),
            ],
            1,
        );
        assert!(checks.iter().all(|c| !c.status.is_failure()));
    }

    #[test]
    fn lambda_suite_reports_pass() {
        let cfg = ScenarioConfig::canonical(Suite::Lambda, 0);
        let report = run_suite(&cfg, 2).unwrap();
        assert_eq!(report.status, "pass");
        assert!(report.checks.len() >= 6);
        assert!(report.checks.iter().all(|c| c.name.starts_with("lambda.")));
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn report_formats_render() {
        let cfg = ScenarioConfig::canonical(Suite::Lambda, 0);
        let report = run_suite(&cfg, 1).unwrap();

        let json = emit_report(&report, ReportFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["status"], "pass");
        assert_eq!(v["config"]["suite"], "lambda");
        assert!(v["checks"].as_array().unwrap().len() >= 6);
        let first = &v["checks"][0];
        for field in ["name", "params", "expected", "computed", "status", "millis"] {
            assert!(first.get(field).is_some(), "missing {field}");
        }
        // field order in the emitted object is declaration order
        let pos = |f: &str| json.find(&format!("\"{f}\"")).unwrap();
        assert!(pos("version") < pos("config"));
        assert!(pos("config") < pos("checks"));

        let csv_text = emit_report(&report, ReportFormat::Csv);
        let mut lines = csv_text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "name,params,expected,computed,status,millis"
        );
        assert_eq!(csv_text.lines().count(), report.checks.len() + 1);

        let text = emit_report(&report, ReportFormat::Text);
        assert!(text.contains("[PASS]"));
        assert!(text.contains("suite lambda: pass"));
    }

    #[test]
    fn format_parsing() {
        assert_eq!("json".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert_eq!("csv".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert_eq!("text".parse::<ReportFormat>().unwrap(), ReportFormat::Text);
        assert!("yaml".parse::<ReportFormat>().is_err());
    }
}
