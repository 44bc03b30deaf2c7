//! Verification reports: one document, three renderings (JSON, CSV, table).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::{Status, VerificationResult};

pub const SCHEMA: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    #[serde(rename = "N")]
    pub n: u64,
    /// Global tolerance override; `null` when each record uses its default.
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    /// Failures and evaluation errors.
    pub failed: usize,
    pub unconfirmed: usize,
}

impl Summary {
    pub fn of(results: &[VerificationResult]) -> Self {
        let mut s = Summary { total: results.len(), ..Default::default() };
        for r in results {
            match r.status {
                Status::Pass => s.passed += 1,
                Status::Unconfirmed => s.unconfirmed += 1,
                Status::Fail | Status::Error => s.failed += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub tool_version: String,
    pub config: ReportConfig,
    pub results: Vec<VerificationResult>,
    pub summary: Summary,
    pub wall_time_seconds: f64,
}

impl ReportDocument {
    pub fn new(config: ReportConfig, results: Vec<VerificationResult>, wall_time_seconds: f64) -> Self {
        Self {
            schema: SCHEMA,
            tool_version: TOOL_VERSION.to_string(),
            config,
            summary: Summary::of(&results),
            results,
            wall_time_seconds,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Parse a JSON report, rejecting other schema versions and summaries
    /// that disagree with the result list.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad report: {e}")))?;
        if doc.schema != SCHEMA {
            return Err(Error::InvalidArgument(format!("unsupported report schema {}", doc.schema)));
        }
        if doc.summary != Summary::of(&doc.results) {
            return Err(Error::InvalidArgument("report summary does not match its results".into()));
        }
        Ok(doc)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "params", "lhs", "rhs", "residual", "pass", "status"])
            .expect("in-memory write");
        for r in &self.results {
            w.write_record([
                r.id.clone(),
                r.params.to_string(),
                opt(r.lhs.map(|v| v.value)),
                opt(r.rhs.map(|v| v.value)),
                opt(r.residual),
                r.pass.to_string(),
                r.status.as_str().to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_table(&self) -> String {
        let header = ["id", "params", "lhs", "rhs", "residual", "status"].map(String::from);
        let rows: Vec<[String; 6]> = self
            .results
            .iter()
            .map(|r| {
                [
                    r.id.clone(),
                    r.params.to_string(),
                    r.lhs.map_or("-".into(), |v| format!("{:.15}", v.value)),
                    r.rhs.map_or("-".into(), |v| format!("{:.15}", v.value)),
                    r.residual.map_or("-".into(), |v| format!("{v:.2e}")),
                    r.status.as_str().to_string(),
                ]
            })
            .collect();
        let mut out = render_table(&header, &rows);
        let s = self.summary;
        out.push_str(&format!(
            "\n{} total, {} passed, {} failed, {} unconfirmed ({:.1}s, N={})\n",
            s.total, s.passed, s.failed, s.unconfirmed, self.wall_time_seconds, self.config.n
        ));
        for r in self.results.iter().filter(|r| r.status != Status::Pass) {
            if let Some(m) = &r.message {
                out.push_str(&format!("{} [{}]: {m}\n", r.id, r.params));
            }
        }
        out
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

/// Left-aligned columns separated by two spaces, with a rule under the header.
pub fn render_table<const C: usize>(header: &[String; C], rows: &[[String; C]]) -> String {
    let mut widths: [usize; C] = std::array::from_fn(|i| header[i].chars().count());
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String; C]| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i + 1 == C {
                s.push_str(cell);
            } else {
                s.push_str(cell);
                s.push_str(&" ".repeat(w - cell.chars().count() + 2));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header);
    let rule: usize = widths.iter().sum::<usize>() + 2 * (C - 1);
    out.push_str(&"-".repeat(rule));
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{verify, Params, VerifyOptions};

    fn sample() -> ReportDocument {
        let opts = VerifyOptions::default();
        let results = vec![
            verify("eq-2.12", &Params::new().with_int("k", 5), &opts).unwrap(),
            verify("eq-2.3", &"m=2,x=-1/2".parse().unwrap(), &opts).unwrap(),
        ];
        ReportDocument::new(ReportConfig { n: opts.config.n, tol: None }, results, 0.5)
    }

    #[test]
    fn json_round_trip() {
        let doc = sample();
        let back = ReportDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.summary, Summary { total: 2, passed: 2, failed: 0, unconfirmed: 0 });
        let v: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert!(v["results"][0]["lhs"]["err"].is_number());
        assert!(v["config"]["N"].is_number());
    }

    #[test]
    fn tampered_summary_rejected() {
        let mut doc = sample();
        doc.summary.passed = 0;
        assert!(ReportDocument::from_json(&doc.to_json()).is_err());
    }

    #[test]
    fn csv_quotes_params() {
        let csv = sample().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("id,params,lhs,rhs,residual,pass,status"));
        assert!(lines.nth(1).unwrap().starts_with("eq-2.3,\"m=2,x=-1/2\","));
    }

    #[test]
    fn table_aligns() {
        let t = sample().to_table();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0].find("params"), lines[2].find("k=5"));
        assert!(t.contains("2 total, 2 passed"));
    }
}
