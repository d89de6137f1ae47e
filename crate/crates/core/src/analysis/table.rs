//! Rendering error reports as text, JSON or CSV.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{report, AnalysisError, ApproximationRecord, ErrorReport, ReferenceKind};
use crate::scalar::rational::integer;
use crate::scalar::Interval;
use crate::texts;

/// Significant digits shown in table cells, at most.
const CELL_DIGITS: u32 = 10;
const MISSING: &str = "n/a";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(AnalysisError::UnsupportedFormat(s.to_string())),
        }
    }
}

/// One row of the comparison table, as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub key: String,
    pub name: String,
    pub exact: String,
    pub decimal: String,
    pub implied_pi_or_error: String,
    pub relative_error_percent: String,
    pub agreement_digits: String,
    pub attested_in: String,
}

/// Prefixes the certified sign, so tiny errors still show their direction.
fn signed(iv: &Interval, rendered: String) -> String {
    let body = rendered.trim_start_matches('-');
    if iv.lower() > &integer(0) {
        format!("+{body}")
    } else if iv.upper() < &integer(0) {
        format!("-{body}")
    } else {
        rendered
    }
}

fn project(record: &ApproximationRecord, rep: Option<&ErrorReport>, precision: u32) -> TableRow {
    let digits = precision.min(CELL_DIGITS);
    let missing = || MISSING.to_string();
    let (decimal, implied, relative, agreement) = match rep {
        None => (missing(), missing(), missing(), missing()),
        Some(r) => {
            let decimal = match (&r.constructed_area, &record.exact_value) {
                (Some(area), _) => area.to_decimal(digits),
                (None, Some(v)) => v.evaluate(digits + 2).to_decimal(digits),
                (None, None) => missing(),
            };
            let implied = match (record.reference_kind, &r.implied_pi, &r.absolute_error) {
                (ReferenceKind::Pi, Some(pi), _) => pi.to_decimal(digits),
                (ReferenceKind::Sqrt2, _, Some(err)) => signed(err, err.to_scientific(5)),
                _ => missing(),
            };
            let percent = r.relative_error.scale(&integer(100));
            (
                decimal,
                implied,
                signed(&percent, percent.to_fixed(2)),
                r.agreement_digits.to_string(),
            )
        }
    };
    TableRow {
        key: record.key.clone(),
        name: record.name.clone(),
        exact: record
            .exact_value
            .as_ref()
            .map(|v| v.to_string())
            .unwrap_or_else(missing),
        decimal,
        implied_pi_or_error: implied,
        relative_error_percent: relative,
        agreement_digits: agreement,
        attested_in: texts::join(&record.attested_in, "; "),
    }
}

fn rows(records: &[ApproximationRecord], precision: u32) -> Vec<TableRow> {
    records
        .iter()
        .map(|rec| {
            let rep = report(rec, precision).ok();
            project(rec, rep.as_ref(), precision)
        })
        .collect()
}

const HEADERS: [&str; 7] = [
    "Rule",
    "Exact",
    "Decimal",
    "Implied π / √2 error",
    "Rel. error %",
    "Digits",
    "Texts",
];

fn text_table(rows: &[TableRow]) -> String {
    let cells: Vec<[&str; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.name.as_str(),
                r.exact.as_str(),
                r.decimal.as_str(),
                r.implied_pi_or_error.as_str(),
                r.relative_error_percent.as_str(),
                r.agreement_digits.as_str(),
                r.attested_in.as_str(),
            ]
        })
        .collect();
    let mut widths = HEADERS.map(|h| h.chars().count());
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |row: &[&str; 7]| {
        let padded: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&HEADERS);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    let rule: Vec<&str> = rule.iter().map(String::as_str).collect();
    line(&rule.try_into().expect("seven columns"));
    for row in &cells {
        line(row);
    }
    out
}

/// Deterministic comparison table for `records`.
pub fn emit_error_table(
    records: &[ApproximationRecord],
    precision: u32,
    format: ReportFormat,
) -> Result<String, AnalysisError> {
    if records.is_empty() {
        return Err(AnalysisError::EmptyRecords);
    }
    let rows = rows(records, precision.max(1));
    Ok(match format {
        ReportFormat::Text => text_table(&rows),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r).expect("rows serialize");
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 cells")
        }
    })
}

/// Reads back a CSV table produced by [`emit_error_table`].
pub fn parse_csv_table(text: &str) -> Result<Vec<TableRow>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect()
}
