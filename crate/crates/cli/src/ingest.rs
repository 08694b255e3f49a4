//! Reading one or more numeric columns from CSV or JSON-lines files.
//!
//! Cells are parsed with a fixed decimal grammar (optional sign, digits with
//! at most one `.`, optional `e`/`E` exponent) and no locale handling, so the
//! same file always yields the same doubles. Empty cells, other text, NaN,
//! infinities and overflowing literals count as skipped. Zeros are kept.

use std::fs;
use std::path::Path;

use benford::Provenance;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

/// Prefix of the comment line `benford sample` writes ahead of its values.
pub const SAMPLE_HEADER_PREFIX: &str = "# benford sample ";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFormat {
    Csv,
    Jsonl,
}

impl InputFormat {
    fn name(self) -> &'static str {
        match self {
            InputFormat::Csv => "csv",
            InputFormat::Jsonl => "jsonl",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetColumn {
    pub name: String,
    pub values: Vec<f64>,
    /// Cells that were empty, non-numeric or non-finite.
    pub skipped: u64,
}

/// Parses a cell under the decimal grammar; `None` if it is not a finite
/// decimal literal.
pub fn parse_decimal(cell: &str) -> Option<f64> {
    let s = cell.trim();
    let unsigned = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (mantissa, exponent) = match unsigned.find(['e', 'E']) {
        Some(i) => (&unsigned[..i], Some(&unsigned[i + 1..])),
        None => (unsigned, None),
    };
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if (int.is_empty() && frac.is_empty()) || !all_digits(int) || !all_digits(frac) {
        return None;
    }
    if let Some(e) = exponent {
        let e = e.strip_prefix(['+', '-']).unwrap_or(e);
        if e.is_empty() || !all_digits(e) {
            return None;
        }
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Reads the columns named by `selectors` (header name first, then 0-based
/// index). With no selectors the first column is read.
pub fn ingest(path: &Path, selectors: &[String], format: InputFormat) -> Result<Vec<DatasetColumn>> {
    let text = read(path)?;
    let columns = match format {
        InputFormat::Csv => csv_columns(path, &text, selectors)?,
        InputFormat::Jsonl => jsonl_columns(path, &text, selectors)?,
    };
    for c in &columns {
        if c.values.is_empty() {
            return Err(CliError::NoValues {
                path: path.display().to_string(),
                column: c.name.clone(),
            });
        }
    }
    Ok(columns)
}

/// The generator provenance recorded by `benford sample`, if the file starts
/// with its header comment.
pub fn sample_header(path: &Path) -> Result<Option<Provenance>> {
    let text = read(path)?;
    Ok(text
        .lines()
        .next()
        .and_then(|l| l.strip_prefix(SAMPLE_HEADER_PREFIX))
        .and_then(|json| serde_json::from_str(json).ok()))
}

fn read(path: &Path) -> Result<String> {
    if !path.exists() {
        return Err(CliError::MissingFile(path.display().to_string()));
    }
    fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))
}

fn malformed(path: &Path, format: InputFormat, message: impl ToString) -> CliError {
    CliError::Malformed {
        path: path.display().to_string(),
        format: format.name(),
        message: message.to_string(),
    }
}

fn csv_columns(path: &Path, text: &str, selectors: &[String]) -> Result<Vec<DatasetColumn>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| malformed(path, InputFormat::Csv, e))?
        .iter()
        .map(str::to_owned)
        .collect();
    if headers.is_empty() || headers == [""] {
        return Err(CliError::NoValues {
            path: path.display().to_string(),
            column: selectors.first().cloned().unwrap_or_default(),
        });
    }

    let resolve = |sel: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == sel)
            .or_else(|| sel.parse::<usize>().ok().filter(|&i| i < headers.len()))
            .ok_or_else(|| CliError::UnknownColumn {
                selector: sel.to_owned(),
                available: headers.join(", "),
            })
    };
    let indices: Vec<usize> = if selectors.is_empty() {
        vec![0]
    } else {
        selectors.iter().map(|s| resolve(s)).collect::<Result<_>>()?
    };

    let mut columns: Vec<DatasetColumn> = indices
        .iter()
        .map(|&i| DatasetColumn {
            name: headers[i].clone(),
            values: Vec::new(),
            skipped: 0,
        })
        .collect();
    for record in reader.records() {
        let record = record.map_err(|e| malformed(path, InputFormat::Csv, e))?;
        for (col, &i) in columns.iter_mut().zip(&indices) {
            match record.get(i).and_then(parse_decimal) {
                Some(v) => col.values.push(v),
                None => col.skipped += 1,
            }
        }
    }
    Ok(columns)
}

enum Field<'a> {
    Found(&'a Value),
    Absent,
}

fn field<'a>(record: &'a Value, selector: Option<&str>) -> Field<'a> {
    let found = match (record, selector) {
        (Value::Object(map), None) => map.values().next(),
        (Value::Object(map), Some(s)) => map
            .get(s)
            .or_else(|| s.parse::<usize>().ok().and_then(|i| map.values().nth(i))),
        (Value::Array(items), None) => items.first(),
        (Value::Array(items), Some(s)) => s.parse::<usize>().ok().and_then(|i| items.get(i)),
        (bare, None) => Some(bare),
        (bare, Some(s)) if s == "0" || s == "value" => Some(bare),
        _ => None,
    };
    found.map_or(Field::Absent, Field::Found)
}

fn json_number(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => n.as_f64().filter(|x| x.is_finite()),
        Value::String(s) => parse_decimal(s),
        _ => None,
    }
}

fn jsonl_columns(path: &Path, text: &str, selectors: &[String]) -> Result<Vec<DatasetColumn>> {
    let mut records = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: Value = serde_json::from_str(line)
            .map_err(|e| malformed(path, InputFormat::Jsonl, format!("line {}: {e}", lineno + 1)))?;
        records.push(value);
    }

    let default_name = || match records.first() {
        Some(Value::Object(map)) => map.keys().next().cloned().unwrap_or_default(),
        Some(Value::Array(_)) => "0".to_owned(),
        _ => "value".to_owned(),
    };
    let wanted: Vec<Option<&str>> = if selectors.is_empty() {
        vec![None]
    } else {
        selectors.iter().map(|s| Some(s.as_str())).collect()
    };

    let mut columns = Vec::with_capacity(wanted.len());
    for sel in wanted {
        let mut col = DatasetColumn {
            name: sel.map_or_else(default_name, str::to_owned),
            values: Vec::new(),
            skipped: 0,
        };
        let mut seen = false;
        for record in &records {
            match field(record, sel) {
                Field::Found(v) => {
                    seen = true;
                    match json_number(v) {
                        Some(x) => col.values.push(x),
                        None => col.skipped += 1,
                    }
                }
                Field::Absent => col.skipped += 1,
            }
        }
        if let (false, Some(s)) = (seen, sel) {
            if !records.is_empty() {
                let available = match &records[0] {
                    Value::Object(map) => map.keys().cloned().collect::<Vec<_>>().join(", "),
                    _ => "value".to_owned(),
                };
                return Err(CliError::UnknownColumn {
                    selector: s.to_owned(),
                    available,
                });
            }
        }
        columns.push(col);
    }
    Ok(columns)
}
