use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_ID: &str = "tamegauss-report/v1";

/// JSON schema of the report format.
pub const REPORT_SCHEMA: &str = include_str!("../../schemas/report-v1.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub suite: String,
    pub check: String,
    pub params: serde_json::Value,
    /// Number of identities behind the verdict.
    pub cases: usize,
    pub lhs: String,
    pub rhs: String,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<u64>,
}

impl Record {
    pub fn new(suite: &str, check: &str, params: serde_json::Value, cases: usize, lhs: String, rhs: String, verdict: bool) -> Self {
        Record { suite: suite.into(), check: check.into(), params, cases, lhs, rhs, verdict, note: None, wall_ms: None }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckCount {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Keyed by "suite/check".
    pub checks: BTreeMap<String, CheckCount>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub suite: String,
    pub seed: u64,
    pub summary: Summary,
    pub records: Vec<Record>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    suite: &'a str,
    check: &'a str,
    params: String,
    cases: usize,
    verdict: bool,
    lhs: &'a str,
    rhs: &'a str,
    note: &'a str,
}

impl Report {
    pub fn new(suite: &str, seed: u64, records: Vec<Record>) -> Self {
        let mut summary = Summary { total: records.len(), ..Default::default() };
        for r in &records {
            let c = summary.checks.entry(format!("{}/{}", r.suite, r.check)).or_default();
            if r.verdict {
                summary.passed += 1;
                c.passed += 1;
            } else {
                summary.failed += 1;
                c.failed += 1;
            }
        }
        Report { schema: SCHEMA_ID.into(), suite: suite.into(), seed, summary, records }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(CsvRow {
                suite: &r.suite,
                check: &r.check,
                params: r.params.to_string(),
                cases: r.cases,
                verdict: r.verdict,
                lhs: &r.lhs,
                rhs: &r.rhs,
                note: r.note.as_deref().unwrap_or(""),
            })
            .map_err(|e| Error::Config(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let mut bad = Record::new("gauss", "twist", json!({"p": 3}), 1, "1".into(), "2".into(), false);
        bad.note = Some("x".into());
        Report::new("gauss", 7, vec![Record::new("gauss", "modulus", json!({"p": 3, "f": 1}), 1, "a".into(), "a".into(), true), bad])
    }

    #[test]
    fn summary_counts() {
        let r = sample();
        assert_eq!((r.summary.total, r.summary.passed, r.summary.failed), (2, 1, 1));
        assert!(!r.passed());
        assert_eq!(r.summary.checks["gauss/twist"], CheckCount { passed: 0, failed: 1 });
    }

    #[test]
    fn json_round_trip_and_schema_keys() {
        let r = sample();
        let s = r.to_json().unwrap();
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        for key in schema["required"].as_array().unwrap() {
            assert!(v.get(key.as_str().unwrap()).is_some(), "{key}");
        }
        let rec_req = schema["$defs"]["record"]["required"].as_array().unwrap();
        for key in rec_req {
            assert!(v["records"][0].get(key.as_str().unwrap()).is_some(), "{key}");
        }
        assert_eq!(schema["properties"]["schema"]["const"], SCHEMA_ID);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let s = sample().to_csv().unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "suite,check,params,cases,verdict,lhs,rhs,note");
        assert_eq!(lines.len(), 3);
    }
}
