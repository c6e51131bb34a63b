use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Csv,
    Json,
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::Input(format!("unknown input format '{other}'"))),
        }
    }
}

/// One input record. Malformed records keep their line number and carry
/// the parse error instead of aborting the load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputRow {
    pub line: usize,
    pub weights: Option<[u64; 5]>,
    pub degree: Option<u64>,
    pub poly: Option<String>,
    pub error: Option<String>,
}

impl InputRow {
    fn bad(line: usize, msg: impl Into<String>) -> Self {
        Self { line, weights: None, degree: None, poly: None, error: Some(msg.into()) }
    }
}

pub fn load_list(path: &Path, format: InputFormat) -> Result<Vec<InputRow>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    match format {
        InputFormat::Csv => Ok(parse_csv(&text)),
        InputFormat::Json => parse_json(&text),
    }
}

fn positive_ints(fields: &[&str]) -> std::result::Result<Vec<u64>, String> {
    fields
        .iter()
        .map(|f| match f.parse::<u64>() {
            Ok(0) | Err(_) => Err(format!("'{f}' is not a positive integer")),
            Ok(v) => Ok(v),
        })
        .collect()
}

/// Five weights and an optional degree per line; `#` starts a comment line.
pub fn parse_csv(text: &str) -> Vec<InputRow> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(trimmed.as_bytes());
        let rec = match reader.records().next() {
            Some(Ok(r)) => r,
            Some(Err(e)) => {
                rows.push(InputRow::bad(line, format!("line {line}: {e}")));
                continue;
            }
            None => continue,
        };
        let fields: Vec<&str> = rec.iter().collect();
        if !(5..=6).contains(&fields.len()) {
            rows.push(InputRow::bad(line, format!("line {line}: expected 5 or 6 fields, found {}", fields.len())));
            continue;
        }
        match positive_ints(&fields) {
            Ok(v) => rows.push(InputRow {
                line,
                weights: Some(v[..5].try_into().unwrap()),
                degree: v.get(5).copied(),
                poly: None,
                error: None,
            }),
            Err(msg) => rows.push(InputRow::bad(line, format!("line {line}: {msg}"))),
        }
    }
    rows
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonEntry {
    weights: Option<Vec<u64>>,
    degree: Option<u64>,
    poly: Option<String>,
}

/// Array of `{"weights": [...], "degree": d?, "poly": "..."?}`. A top-level
/// syntax error fails the whole load; a bad entry becomes an error row
/// numbered by its position (1-based).
pub fn parse_json(text: &str) -> Result<Vec<InputRow>> {
    let values: Vec<serde_json::Value> =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("JSON input: {e}")))?;
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let line = i + 1;
            let entry: JsonEntry = match serde_json::from_value(v) {
                Ok(e) => e,
                Err(e) => return InputRow::bad(line, format!("entry {line}: {e}")),
            };
            let weights = match entry.weights.as_deref() {
                None => None,
                Some(w) if w.len() == 5 && !w.contains(&0) => Some(w.try_into().unwrap()),
                Some(_) => return InputRow::bad(line, format!("entry {line}: weights must be 5 positive integers")),
            };
            if weights.is_none() && entry.poly.is_none() {
                return InputRow::bad(line, format!("entry {line}: needs weights or poly"));
            }
            if entry.degree == Some(0) {
                return InputRow::bad(line, format!("entry {line}: degree must be positive"));
            }
            InputRow { line, weights, degree: entry.degree, poly: entry.poly, error: None }
        })
        .collect())
}
