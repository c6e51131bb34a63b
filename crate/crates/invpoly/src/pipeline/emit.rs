use std::fmt::Write as _;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use super::{RowStatus, ScanReport, ScanRow};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Json,
    Csv,
    Markdown,
}

impl FromStr for EmitFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "markdown" | "md" => Ok(Self::Markdown),
            other => Err(Error::Input(format!("unknown report format '{other}'"))),
        }
    }
}

// field order here is the output order
#[derive(Serialize)]
struct Record<'a> {
    id: &'a str,
    line: usize,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
    weights: Option<[u64; 5]>,
    degree: Option<u64>,
    shape: Option<&'static str>,
    qhs: Option<bool>,
    milnor: Option<u128>,
    torsion: Option<Vec<(u64, u32)>>,
    torsion_order: Option<String>,
    h0_d: Option<u64>,
    sum_h0_w: Option<u64>,
    mu_complex: Option<i64>,
    mu_real: Option<i64>,
    closed_form: Option<i64>,
    m3: Option<u64>,
    warnings: &'a [String],
}

fn record(row: &ScanRow) -> Record<'_> {
    let (status, reason) = match &row.status {
        RowStatus::Ok => ("ok", None),
        RowStatus::Skipped(r) => ("skipped", Some(r.as_str())),
        RowStatus::Error(r) => ("error", Some(r.as_str())),
    };
    let torsion = row.link.as_ref().and_then(|l| l.torsion.as_ref());
    let m = row.moduli.as_ref();
    Record {
        id: &row.id,
        line: row.line,
        status,
        reason,
        weights: row.system.map(|s| s.weights),
        degree: row.system.map(|s| s.degree),
        shape: row.shape.map(|s| s.tag.name()),
        qhs: row.link.as_ref().map(|l| l.is_qhs),
        milnor: row.link.as_ref().map(|l| l.milnor),
        torsion: torsion.map(|t| t.pairs()),
        torsion_order: torsion.map(|t| t.to_string()),
        h0_d: m.map(|m| m.h0_d),
        sum_h0_w: m.map(|m| m.sum_h0_w()),
        mu_complex: m.map(|m| m.mu_complex),
        mu_real: m.map(|m| m.mu_real),
        closed_form: m.and_then(|m| m.closed_form),
        m3: row.shape.and_then(|s| s.cycle_block_m3()),
        warnings: &row.warnings,
    }
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

pub fn emit_report(report: &ScanReport, format: EmitFormat) -> String {
    let records: Vec<Record> = report.rows.iter().map(record).collect();
    match format {
        EmitFormat::Json => {
            let mut s = serde_json::to_string_pretty(&records).expect("report serializes");
            s.push('\n');
            s
        }
        EmitFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "id", "line", "status", "reason", "w0", "w1", "w2", "w3", "w4", "degree", "shape", "qhs", "milnor",
                "torsion", "h0_d", "sum_h0_w", "mu_complex", "mu_real", "closed_form", "warnings",
            ])
            .expect("in-memory write");
            for r in &records {
                let ws = r.weights.map_or_else(|| vec![String::new(); 5], |w| w.map(|x| x.to_string()).to_vec());
                let mut fields = vec![r.id.to_string(), r.line.to_string(), r.status.into(), cell(r.reason)];
                fields.extend(ws);
                fields.extend([
                    cell(r.degree),
                    cell(r.shape),
                    cell(r.qhs),
                    cell(r.milnor),
                    cell(r.torsion_order.as_deref()),
                    cell(r.h0_d),
                    cell(r.sum_h0_w),
                    cell(r.mu_complex),
                    cell(r.mu_real),
                    cell(r.closed_form),
                    r.warnings.join("; "),
                ]);
                w.write_record(&fields).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
        }
        EmitFormat::Markdown => {
            let mut s = String::from("| w̃ | d̃ | m₃ | h⁰ | Σ | μ_R |\n|---|---|---|---|---|---|\n");
            for r in &records {
                let w = r.weights.map_or_else(|| "-".into(), |w| format!("({})", w.iter().join(",")));
                let dash = |v: Option<String>| v.unwrap_or_else(|| "-".into());
                let last = match r.status {
                    "ok" => dash(r.mu_real.map(|x| x.to_string())),
                    other => format!("{other}: {}", r.reason.unwrap_or("")),
                };
                let _ = writeln!(
                    s,
                    "| {w} | {} | {} | {} | {} | {last} |",
                    dash(r.degree.map(|x| x.to_string())),
                    dash(r.m3.map(|x| x.to_string())),
                    dash(r.h0_d.map(|x| x.to_string())),
                    dash(r.sum_h0_w.map(|x| x.to_string())),
                );
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{scan, InputRow};

    fn one_row() -> ScanReport {
        scan(&[InputRow { line: 1, weights: Some([13, 26, 35, 28, 21]), degree: Some(91), poly: None, error: None }])
    }

    #[test]
    fn json_keys() {
        let out = emit_report(&one_row(), EmitFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let obj = v[0].as_object().unwrap();
        for k in [
            "weights", "degree", "shape", "qhs", "milnor", "torsion", "h0_d", "sum_h0_w", "mu_complex", "mu_real",
            "warnings",
        ] {
            assert!(obj.contains_key(k), "missing {k}");
        }
        assert_eq!(v[0]["torsion"], serde_json::json!([[13, 3]]));
        assert_eq!(v[0]["mu_real"], 2);
    }

    #[test]
    fn empty_reports() {
        let empty = ScanReport::default();
        assert_eq!(emit_report(&empty, EmitFormat::Json).trim(), "[]");
        assert_eq!(emit_report(&empty, EmitFormat::Csv).lines().count(), 1);
        assert_eq!(emit_report(&empty, EmitFormat::Markdown).lines().count(), 2);
    }

    #[test]
    fn csv_and_markdown() {
        let rep = one_row();
        let csv = emit_report(&rep, EmitFormat::Csv);
        assert!(csv.lines().nth(1).unwrap().starts_with("L1,1,ok,,13,26,35,28,21,91,TypeII,true,"));
        let md = emit_report(&rep, EmitFormat::Markdown);
        assert_eq!(md.lines().nth(2).unwrap(), "| (13,26,35,28,21) | 91 | 13 | 7 | 6 | 2 |");
    }
}
