//! Report rendering for the three output formats.

use serde::Serialize;

use crate::rational::Rational;
use crate::series::MultiIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Term {
    pub k: Vec<u32>,
    pub c: String,
    /// Component index (1-based) for multi-series output such as `solve`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct MismatchRow {
    pub k: Vec<u32>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct NumericRow {
    pub order: u32,
    pub series_value: f64,
    pub oracle_value: f64,
    pub abs_error: f64,
}

/// Machine-readable report. Sections that do not apply are omitted.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct JsonReport {
    pub n: usize,
    pub order: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checked: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatches: Option<Vec<MismatchRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<Vec<Term>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<Vec<NumericRow>>,
}

impl JsonReport {
    pub fn new(n: usize, order: u32, command: &str) -> Self {
        JsonReport {
            n,
            order,
            command: command.to_string(),
            checked: None,
            mismatches: None,
            series: None,
            numeric: None,
        }
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn term(k: &MultiIndex, c: &Rational, i: Option<usize>) -> Term {
    Term {
        k: k.exponents().to_vec(),
        c: c.to_string(),
        i,
    }
}

pub fn mismatch(k: &MultiIndex, lhs: &Rational, rhs: &Rational) -> MismatchRow {
    MismatchRow {
        k: k.exponents().to_vec(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

/// Comma-separated exponents, `1,0,2`.
pub fn k_text(k: &MultiIndex) -> String {
    k.exponents()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// Left-aligned columns separated by two spaces.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                s.push_str(&format!("{cell:<w$}  "));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}
