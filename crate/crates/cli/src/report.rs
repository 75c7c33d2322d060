//! Report rows and their csv, json and table renderings.
//!
//! Floats are written with 17 significant digits in csv and json, which is
//! enough for every `f64` to parse back to the identical value, and with 10
//! significant digits in the human-oriented table.

use std::cmp::Ordering;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use clap::ValueEnum;
use hallint_core::IdentityReport;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

/// Named parameters of one grid point, in a fixed order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Params(pub Vec<(String, f64)>);

impl Params {
    pub fn new(pairs: &[(&str, f64)]) -> Self {
        Params(pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect())
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }

    /// Lexicographic on the values, then on the names.
    pub fn cmp_lex(&self, other: &Params) -> Ordering {
        for ((ka, va), (kb, vb)) in self.0.iter().zip(&other.0) {
            let ord = va.total_cmp(vb).then_with(|| ka.cmp(kb));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

/// `alpha=0.7;beta=0.2`, values in shortest round-trip form.
impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{k}={v:?}")?;
        }
        Ok(())
    }
}

impl FromStr for Params {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        if s.is_empty() {
            return Ok(Params::default());
        }
        s.split(';')
            .map(|item| {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| CliError::usage(format!("malformed parameter `{item}`")))?;
                let v = v
                    .parse::<f64>()
                    .map_err(|_| CliError::usage(format!("malformed parameter value `{item}`")))?;
                Ok((k.to_string(), v))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Params)
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// One evaluated identity at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub identity: String,
    pub params: Params,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tol: f64,
    pub passed: bool,
}

impl ReportRow {
    pub fn from_report(params: Params, report: &IdentityReport) -> Self {
        ReportRow {
            identity: report.name.to_string(),
            params,
            lhs: report.lhs,
            rhs: report.rhs,
            abs_residual: report.abs_residual,
            rel_residual: report.rel_residual,
            tol: report.tolerance,
            passed: report.passed,
        }
    }

    pub fn cmp_key(&self, other: &ReportRow) -> Ordering {
        self.identity
            .cmp(&other.identity)
            .then_with(|| self.params.cmp_lex(&other.params))
    }
}

/// Keys in the order of the json schema.
impl Serialize for ReportRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ReportRow", 8)?;
        s.serialize_field("identity", &self.identity)?;
        s.serialize_field("params", &self.params)?;
        s.serialize_field("lhs", &Precise(self.lhs))?;
        s.serialize_field("rhs", &Precise(self.rhs))?;
        s.serialize_field("abs_residual", &Precise(self.abs_residual))?;
        s.serialize_field("rel_residual", &Precise(self.rel_residual))?;
        s.serialize_field("tol", &Precise(self.tol))?;
        s.serialize_field("passed", &self.passed)?;
        s.end()
    }
}

/// A float emitted as a json number with 17 significant digits.
struct Precise(f64);

impl Serialize for Precise {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let text = sci17(self.0);
        let number: serde_json::Number = text.parse().map_err(serde::ser::Error::custom)?;
        number.serialize(serializer)
    }
}

pub const CSV_HEADER: [&str; 8] = [
    "identity",
    "params",
    "lhs",
    "rhs",
    "abs_residual",
    "rel_residual",
    "tol",
    "passed",
];

pub fn sci17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn sci10(x: f64) -> String {
    format!("{x:.9e}")
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.identity.clone(),
            r.params.to_string(),
            sci17(r.lhs),
            sci17(r.rhs),
            sci17(r.abs_residual),
            sci17(r.rel_residual),
            sci17(r.tol),
            r.passed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Deserialize)]
struct CsvRecord {
    identity: String,
    params: String,
    lhs: f64,
    rhs: f64,
    abs_residual: f64,
    rel_residual: f64,
    tol: f64,
    passed: bool,
}

/// Parses what [`write_csv`] emits.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<ReportRow>, CliError> {
    let mut reader = csv::Reader::from_reader(input);
    reader
        .deserialize::<CsvRecord>()
        .map(|rec| {
            let rec = rec?;
            Ok(ReportRow {
                identity: rec.identity,
                params: rec.params.parse()?,
                lhs: rec.lhs,
                rhs: rec.rhs,
                abs_residual: rec.abs_residual,
                rel_residual: rec.rel_residual,
                tol: rec.tol,
                passed: rec.passed,
            })
        })
        .collect()
}

pub fn write_json<W: Write>(rows: &[ReportRow], mut out: W) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_table<W: Write>(rows: &[ReportRow], mut out: W) -> Result<(), CliError> {
    let params: Vec<String> = rows.iter().map(|r| r.params.to_string()).collect();
    let id_width = rows.iter().map(|r| r.identity.len()).chain([8]).max().unwrap_or(8);
    let p_width = params.iter().map(String::len).chain([6]).max().unwrap_or(6);
    writeln!(
        out,
        "{:<id_width$}  {:<p_width$}  {:>16}  {:>16}  {:>16}  {:>16}  {:>16}  passed",
        "identity", "params", "lhs", "rhs", "abs_residual", "rel_residual", "tol"
    )?;
    for (r, p) in rows.iter().zip(&params) {
        writeln!(
            out,
            "{:<id_width$}  {:<p_width$}  {:>16}  {:>16}  {:>16}  {:>16}  {:>16}  {}",
            r.identity,
            p,
            sci10(r.lhs),
            sci10(r.rhs),
            sci10(r.abs_residual),
            sci10(r.rel_residual),
            sci10(r.tol),
            if r.passed { "yes" } else { "NO" }
        )?;
    }
    Ok(())
}

pub fn write_rows<W: Write>(rows: &[ReportRow], format: Format, out: W) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(rows, out),
        Format::Json => write_json(rows, out),
        Format::Table => write_table(rows, out),
    }
}
