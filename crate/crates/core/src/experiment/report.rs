use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub const REPORT_HEADER: &str = "N,rho,extrema_pct,sign_agreement";

/// One evaluated prefix length.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub len: usize,
    /// `None` when either profile was constant over the retained indices.
    pub rho: Option<f64>,
    pub extrema_pct: f64,
    pub sign_agreement: f64,
}

impl ReportRow {
    pub fn is_degenerate(&self) -> bool {
        self.rho.is_none()
    }
}

/// Consistency measures between two mappings, one row per prefix length.
///
/// Metadata is kept as ordered `key=value` pairs and written as `#` comment
/// lines ahead of the CSV header. Degenerate rows carry `NaN` in the `rho`
/// column.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConsistencyReport {
    pub meta: Vec<(String, String)>,
    pub rows: Vec<ReportRow>,
}

impl ConsistencyReport {
    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn degenerate_lengths(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.is_degenerate())
            .map(|r| r.len)
            .collect()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_csv_string().as_bytes())?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}={v}");
        }
        let _ = writeln!(out, "{REPORT_HEADER}");
        for row in &self.rows {
            let rho = row.rho.map_or_else(|| "NaN".to_string(), |r| r.to_string());
            let _ = writeln!(
                out,
                "{},{rho},{},{}",
                row.len, row.extrema_pct, row.sign_agreement
            );
        }
        out
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut report = ConsistencyReport::default();
        let mut header_seen = false;
        for line in r.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some((k, v)) = comment.trim().split_once('=') {
                    report
                        .meta
                        .push((k.trim().to_string(), v.trim().to_string()));
                }
                continue;
            }
            if !header_seen {
                if line != REPORT_HEADER {
                    return Err(Error::Parse(format!(
                        "expected `{REPORT_HEADER}`, got `{line}`"
                    )));
                }
                header_seen = true;
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            let [n, rho, ext, sign] = fields[..] else {
                return Err(Error::Parse(format!("bad report row `{line}`")));
            };
            let num = |s: &str| -> Result<f64> {
                s.parse()
                    .map_err(|_| Error::Parse(format!("bad number `{s}` in `{line}`")))
            };
            let rho = num(rho)?;
            report.rows.push(ReportRow {
                len: n
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad length `{n}`")))?,
                rho: (!rho.is_nan()).then_some(rho),
                extrema_pct: num(ext)?,
                sign_agreement: num(sign)?,
            });
        }
        if !header_seen {
            return Err(Error::Parse("missing report header".into()));
        }
        Ok(report)
    }
}
