//! Command implementations behind the `cotsum` binary.

pub mod eval;
pub mod report;
pub mod suites;

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use cotsum::numeric::float_string;
use cotsum::{Float, Params, PrecisionContext};
use rayon::prelude::*;
use serde_json::Map;
use thiserror::Error;

use crate::eval::EvalArgs;
use crate::report::{Record, ReportDocument, Summary, ENGINE_VERSION, SCHEMA_VERSION};
use crate::suites::SuiteConfig;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("{0}")]
    Engine(#[from] cotsum::Error),
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse report {path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
}

impl CliError {
    /// 2 for usage and parameter errors, 3 for I/O and parse errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Engine(_) => 2,
            CliError::Io { .. } | CliError::Parse { .. } => 3,
        }
    }
}

/// Parses `2^-N` or a decimal such as `1e-60`.
pub fn parse_tolerance(s: &str, bits: u32) -> Result<Float, CliError> {
    let bad = || CliError::Usage(format!("--tolerance {s:?}: expected `2^-N` or a decimal"));
    if let Some(e) = s.strip_prefix("2^-") {
        let n: u32 = e.parse().map_err(|_| bad())?;
        return Ok(Float::with_val(bits, 1u32) >> n);
    }
    let parsed = Float::parse(s).map_err(|_| bad())?;
    Ok(Float::with_val(bits, parsed))
}

/// Precision context from the command-line settings.
pub fn context(precision_bits: u32, tolerance: Option<&str>) -> Result<PrecisionContext, CliError> {
    let ctx = PrecisionContext::new(precision_bits)?;
    match tolerance {
        None => Ok(ctx),
        Some(t) => Ok(ctx.with_tolerance(parse_tolerance(t, precision_bits)?)?),
    }
}

/// Runs every task of a suite and returns the sorted report.
pub fn run_suite(ctx: &PrecisionContext, cfg: &SuiteConfig) -> Result<ReportDocument, CliError> {
    let tasks = suites::build(cfg);
    let bits = ctx.precision_bits();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", cfg.jobs)))?;
    let mut keyed: Vec<(String, Params, Record)> = pool.install(|| {
        tasks
            .par_iter()
            .flat_map_iter(|t| match t.run(ctx) {
                Ok(reports) => reports
                    .into_iter()
                    .map(|r| {
                        let rec = Record::from_report(&r, t.expectation, bits);
                        (r.identity, r.params, rec)
                    })
                    .collect::<Vec<_>>(),
                Err(e) => vec![(
                    t.identity.clone(),
                    t.params.clone(),
                    Record::from_error(&t.identity, &t.params, t.expectation, &e),
                )],
            })
            .collect()
    });
    keyed.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    let records: Vec<Record> = keyed.into_iter().map(|(_, _, r)| r).collect();
    let mut grid = Map::new();
    grid.insert("max_k".into(), cfg.max_k.into());
    grid.insert("max".into(), cfg.max.into());
    grid.insert("seed".into(), cfg.seed.into());
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        engine_version: ENGINE_VERSION.to_string(),
        precision_bits: bits,
        tolerance: float_string(ctx.tolerance(), 64),
        suite: cfg.suite.name().to_string(),
        grid,
        timestamp,
        summary: Summary::of(&records),
        records,
    })
}

/// Runs a suite and writes the report to `out`, or to stdout when `out` is `None`.
pub fn cmd_verify(
    ctx: &PrecisionContext,
    cfg: &SuiteConfig,
    out: Option<&Path>,
) -> Result<ReportDocument, CliError> {
    let doc = run_suite(ctx, cfg)?;
    let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?,
        None => print!("{text}"),
    }
    Ok(doc)
}

pub fn load_report(path: &Path) -> Result<ReportDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Summary table of a saved report.
pub fn cmd_report(path: &Path) -> Result<String, CliError> {
    Ok(load_report(path)?.render())
}

/// Evaluates one identity; returns the rendering and the verdict.
pub fn cmd_eval(ctx: &PrecisionContext, args: &EvalArgs) -> Result<(String, bool), CliError> {
    let report = eval::evaluate(ctx, args)?;
    Ok((eval::render(&report, ctx.precision_bits()), report.pass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suites::Suite;

    #[test]
    fn tolerance_forms() {
        let t = parse_tolerance("2^-100", 128).unwrap();
        assert_eq!(t, Float::with_val(128, 1u32) >> 100u32);
        assert!(parse_tolerance("1e-60", 128).unwrap() > 0);
        assert!(matches!(
            parse_tolerance("tiny", 128),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            context(128, Some("0.5")),
            Err(CliError::Engine(_))
        ));
        assert!(matches!(context(32, None), Err(CliError::Engine(_))));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("section".parse::<Suite>().is_err());
    }

    #[test]
    fn report_round_trips_through_json() {
        let ctx = context(128, None).unwrap();
        let doc = run_suite(&ctx, &SuiteConfig::new(Suite::ClassNumbers)).unwrap();
        assert_eq!(doc.summary.pass, 10);
        assert_eq!(doc.exit_code(), 0);
        let text = serde_json::to_string(&doc).unwrap();
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn records_are_sorted_by_identity_then_params() {
        let ctx = context(128, None).unwrap();
        let mut cfg = SuiteConfig::new(Suite::NegativeControls);
        cfg.max_k = Some(13);
        let doc = run_suite(&ctx, &cfg).unwrap();
        let ids: Vec<&str> = doc.records.iter().map(|r| r.identity.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        let ks: Vec<i64> = doc
            .records_for("control.trig.cos2_over_cos4.wrong_branch")
            .map(|r| r.params["k"].as_i64().unwrap())
            .collect();
        assert_eq!(ks, vec![5, 7, 9, 11, 13]);
    }

    #[test]
    fn hypothesis_errors_become_skips() {
        let ctx = context(128, None).unwrap();
        let mut cfg = SuiteConfig::new(Suite::TwoPeriod);
        cfg.max = Some(6);
        let doc = run_suite(&ctx, &cfg).unwrap();
        let skipped: Vec<_> = doc
            .records
            .iter()
            .filter(|r| r.status == report::Status::SkippedHypothesis)
            .collect();
        assert!(!skipped.is_empty());
        assert!(skipped
            .iter()
            .all(|r| r.identity.starts_with("twoperiod.sec2") && r.reason.is_some()));
    }
}
