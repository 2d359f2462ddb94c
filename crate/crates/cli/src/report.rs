//! Report records and the document written by `verify`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use cotsum::check::ParamValue;
use cotsum::numeric::float_string;
use cotsum::{CheckReport, Params, Value};
use serde::{Deserialize, Serialize};
use serde_json::Map;

pub const SCHEMA_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Outcome of one record after applying its expectation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedHypothesis,
}

/// Whether the identity is expected to hold (ordinary checks) or to fail (negative controls).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Holds,
    Fails,
}

/// One side of an identity: full-precision decimal plus `n/d` when exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    pub decimal: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

impl Side {
    fn from_value(v: &Value, bits: u32) -> Self {
        Side {
            decimal: v.decimal_string(bits),
            exact: v.exact_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub identity: String,
    pub params: Map<String, serde_json::Value>,
    pub status: Status,
    pub expectation: Expectation,
    /// Verdict of the identity itself, before the expectation is applied.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Side>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Side>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_diff: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

pub fn params_json(params: &Params) -> Map<String, serde_json::Value> {
    let mut map = Map::new();
    for (k, v) in &params.0 {
        let j = match v {
            ParamValue::Int(i) => serde_json::Value::from(*i),
            ParamValue::Text(s) => serde_json::Value::from(s.clone()),
        };
        map.insert(k.clone(), j);
    }
    map
}

pub fn params_display(params: &Map<String, serde_json::Value>) -> String {
    let parts: Vec<String> = params
        .iter()
        .map(|(k, v)| match v {
            serde_json::Value::String(s) => format!("{k}={s}"),
            other => format!("{k}={other}"),
        })
        .collect();
    parts.join(", ")
}

impl Record {
    pub fn from_report(r: &CheckReport, expectation: Expectation, bits: u32) -> Self {
        let ok = match expectation {
            Expectation::Holds => r.pass,
            Expectation::Fails => !r.pass,
        };
        Record {
            identity: r.identity.clone(),
            params: params_json(&r.params),
            status: if ok { Status::Pass } else { Status::Fail },
            expectation,
            holds: Some(r.pass),
            lhs: Some(Side::from_value(&r.lhs, bits)),
            rhs: Some(Side::from_value(&r.rhs, bits)),
            abs_diff: Some(float_string(&r.abs_diff, 64)),
            tolerance: Some(float_string(&r.tolerance, 64)),
            notes: r.notes.clone(),
            reason: None,
        }
    }

    /// A check that could not be evaluated.
    pub fn from_error(
        identity: &str,
        params: &Params,
        expectation: Expectation,
        err: &cotsum::Error,
    ) -> Self {
        let status = if err.is_hypothesis() && expectation == Expectation::Holds {
            Status::SkippedHypothesis
        } else {
            Status::Fail
        };
        Record {
            identity: identity.to_string(),
            params: params_json(params),
            status,
            expectation,
            holds: None,
            lhs: None,
            rhs: None,
            abs_diff: None,
            tolerance: None,
            notes: Vec::new(),
            reason: Some(err.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped_hypothesis: usize,
}

impl Summary {
    pub fn of(records: &[Record]) -> Self {
        let mut s = Summary::default();
        for r in records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::SkippedHypothesis => s.skipped_hypothesis += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub engine_version: String,
    pub precision_bits: u32,
    pub tolerance: String,
    pub suite: String,
    pub grid: Map<String, serde_json::Value>,
    pub timestamp: u64,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl ReportDocument {
    /// Exit status implied by the document: 0 iff nothing failed.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail == 0 {
            0
        } else {
            1
        }
    }

    /// Serialization with the timestamp zeroed, for byte comparisons between runs.
    pub fn body(&self) -> String {
        let mut copy = self.clone();
        copy.timestamp = 0;
        serde_json::to_string_pretty(&copy).expect("report serializes")
    }

    pub fn records_for<'a>(&'a self, identity: &str) -> impl Iterator<Item = &'a Record> + 'a {
        let identity = identity.to_string();
        self.records.iter().filter(move |r| r.identity == identity)
    }

    /// Table of counts per identity tag, followed by details of every failure.
    pub fn render(&self) -> String {
        let mut groups: BTreeMap<&str, Summary> = BTreeMap::new();
        for r in &self.records {
            let g = groups.entry(&r.identity).or_default();
            match r.status {
                Status::Pass => g.pass += 1,
                Status::Fail => g.fail += 1,
                Status::SkippedHypothesis => g.skipped_hypothesis += 1,
            }
        }
        let width = groups.keys().map(|k| k.len()).max().unwrap_or(8).max(8);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {} at {} bits (engine {}, schema {})",
            self.suite, self.precision_bits, self.engine_version, self.schema_version
        );
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>6}  {:>7}",
            "identity", "pass", "fail", "skipped"
        );
        for (id, s) in &groups {
            let _ = writeln!(
                out,
                "{id:<width$}  {:>6}  {:>6}  {:>7}",
                s.pass, s.fail, s.skipped_hypothesis
            );
        }
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>6}  {:>7}",
            "total", self.summary.pass, self.summary.fail, self.summary.skipped_hypothesis
        );
        let failures: Vec<&Record> = self
            .records
            .iter()
            .filter(|r| r.status == Status::Fail)
            .collect();
        if !failures.is_empty() {
            let _ = writeln!(out, "\nfailures:");
            for r in failures {
                let _ = writeln!(out, "- {} ({})", r.identity, params_display(&r.params));
                if r.expectation == Expectation::Fails {
                    let _ = writeln!(out, "    expected the identity to fail, but it held");
                }
                if let Some(l) = &r.lhs {
                    let _ = writeln!(out, "    lhs:       {}", side_text(l));
                }
                if let Some(rh) = &r.rhs {
                    let _ = writeln!(out, "    rhs:       {}", side_text(rh));
                }
                if let Some(d) = &r.abs_diff {
                    let _ = writeln!(out, "    diff:      {d}");
                }
                if let Some(t) = &r.tolerance {
                    let _ = writeln!(out, "    tolerance: {t}");
                }
                if let Some(reason) = &r.reason {
                    let _ = writeln!(out, "    error:     {reason}");
                }
                for n in &r.notes {
                    let _ = writeln!(out, "    note:      {n}");
                }
            }
        }
        out
    }
}

fn side_text(s: &Side) -> String {
    match &s.exact {
        Some(e) => format!("{e} = {}", s.decimal),
        None => s.decimal.clone(),
    }
}
