//! Report serialization: JSON (schema v1) and a fixed CSV layout.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::scan::ReportRow;
use crate::error::{Error, Result};
use crate::pipelines::{CaseLabel, Verdict};

pub const SCHEMA: &str = "purecubic.report/v1";

pub const CSV_COLUMNS: [&str; 11] = ["p", "p_mod_9", "cube3", "case", "hF", "AF", "AK", "AM_cert", "thm2", "norm_eq", "verdict"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub engine_version: String,
    pub config: serde_json::Value,
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn new(config: serde_json::Value, rows: Vec<ReportRow>) -> Self {
        Report {
            schema: SCHEMA.into(),
            engine_version: super::cache::ENGINE_VERSION.into(),
            config,
            rows,
        }
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let n = |v| self.rows.iter().filter(|r| r.verdict == v).count();
        (n(Verdict::Pass), n(Verdict::Fail), n(Verdict::Inconclusive))
    }

    /// 0 when everything passed, 2 on any failure, 3 if only inconclusive rows remain.
    pub fn exit_code(&self) -> i32 {
        match self.counts() {
            (_, f, _) if f > 0 => 2,
            (_, _, i) if i > 0 => 3,
            _ => 0,
        }
    }
}

/// The flat CSV view of a row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub p: u64,
    pub p_mod_9: u64,
    pub cube3: bool,
    pub case: CaseLabel,
    #[serde(rename = "hF")]
    pub h_f: Option<u64>,
    #[serde(rename = "AF")]
    pub a_f: Option<String>,
    #[serde(rename = "AK")]
    pub a_k: Option<String>,
    #[serde(rename = "AM_cert")]
    pub a_m_cert: Option<u64>,
    pub thm2: Option<String>,
    pub norm_eq: String,
    pub verdict: Verdict,
}

fn invariants(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(","))
}

impl From<&ReportRow> for CsvRow {
    fn from(r: &ReportRow) -> Self {
        CsvRow {
            p: r.p,
            p_mod_9: r.p_mod_9,
            cube3: r.cube3,
            case: r.case,
            h_f: r.h_f,
            a_f: r.a_f.as_ref().map(|c| invariants(&c.three_part)),
            a_k: r.a_k.as_ref().map(|c| invariants(&c.three_part)),
            a_m_cert: r.a_m_cert,
            thm2: r.thm2_cert.clone(),
            norm_eq: r.norm_eq.clone(),
            verdict: r.verdict,
        }
    }
}

pub fn write_json<W: Write>(report: &Report, w: W) -> Result<()> {
    serde_json::to_writer_pretty(w, report).map_err(|e| Error::Json { path: "<output>".into(), source: e })
}

pub fn read_json<R: Read>(r: R) -> Result<Report> {
    let rep: Report = serde_json::from_reader(r).map_err(|e| Error::Json { path: "<input>".into(), source: e })?;
    if rep.schema != SCHEMA {
        return Err(Error::Precondition(format!("unsupported report schema {}", rep.schema)));
    }
    Ok(rep)
}

pub fn write_csv<W: Write>(rows: &[ReportRow], w: W) -> Result<()> {
    let csv_err = |e| Error::Csv { path: "<output>".into(), source: e };
    let mut wr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    wr.write_record(CSV_COLUMNS).map_err(csv_err)?;
    for r in rows {
        wr.serialize(CsvRow::from(r)).map_err(csv_err)?;
    }
    wr.flush().map_err(|e| Error::io("<output>", e))?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<CsvRow>> {
    let mut rd = csv::Reader::from_reader(r);
    let headers = rd.headers().map_err(|e| Error::Csv { path: "<input>".into(), source: e })?;
    if headers.iter().ne(CSV_COLUMNS) {
        return Err(Error::Precondition(format!("unexpected CSV header {headers:?}")));
    }
    rd.deserialize()
        .collect::<std::result::Result<Vec<CsvRow>, _>>()
        .map_err(|e| Error::Csv { path: "<input>".into(), source: e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::cache::Cache;
    use crate::cli::scan::{scan, ScanConfig};
    use crate::pipelines::{facts, PipelineConfig};

    fn rows(min: u64, max: u64, cases: Vec<CaseLabel>) -> Vec<ReportRow> {
        let cfg = ScanConfig { min, max, cases, pipeline: PipelineConfig::default(), jobs: Some(2) };
        scan(&cfg, &Cache::new(None), None).unwrap()
    }

    #[test]
    fn csv_roundtrip() {
        let rows = rows(5, 120, vec![]);
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("p,p_mod_9,cube3,case,hF,AF,AK,AM_cert,thm2,norm_eq,verdict\n"));
        let back = read_csv(&buf[..]).unwrap();
        let want: Vec<CsvRow> = rows.iter().map(CsvRow::from).collect();
        assert_eq!(back, want);
    }

    #[test]
    fn json_row_for_61() {
        let rep = Report::new(serde_json::Value::Null, rows(61, 61, vec![]));
        let mut buf = Vec::new();
        write_json(&rep, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.contains("\"verdict\": \"pass\""));
        assert!(rep.rows[0].assumptions.iter().any(|a| a == facts::UNRAMIFIED_SPLIT));
        assert_eq!(read_json(&buf[..]).unwrap(), rep);
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn empty_range() {
        let rep = Report::new(serde_json::Value::Null, rows(200, 100, vec![]));
        assert!(rep.rows.is_empty());
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn main_case_filter() {
        let ps: Vec<u64> = rows(5, 200, vec![CaseLabel::CaseMain]).iter().map(|r| r.p).collect();
        assert_eq!(ps, vec![61, 67, 103, 151, 193]);
    }
}
