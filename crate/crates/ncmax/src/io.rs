//! Profile JSON, matrix CSV/JSON and step-function CSV.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use ncmax_core::ingest::{profile_from_matrix, profile_from_stepfn, DEFAULT_SVD_TOLERANCE};
use ncmax_core::{DenseMatrix, SpectralProfile, StepFunction};

use crate::{format_number, Error, Result};

/// Any object the command line accepts as input.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Profile(SpectralProfile),
    Matrix(DenseMatrix),
    Step(StepFunction),
}

impl Input {
    /// Spectral profile of the input: matrices through their singular values,
    /// step functions through the level sets of `|f|`.
    pub fn into_profile(self) -> Result<SpectralProfile> {
        Ok(match self {
            Input::Profile(p) => p,
            Input::Matrix(m) => profile_from_matrix(&m, DEFAULT_SVD_TOLERANCE)?,
            Input::Step(f) => profile_from_stepfn(&f),
        })
    }
}

/// Detects the format from the content: JSON objects with `atoms` or `rows`,
/// CSV with a `t,v` header (step function) or bare numbers (matrix).
pub fn parse_input(text: &str) -> Result<Input> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("atoms").is_some() {
            return Ok(Input::Profile(serde_json::from_value(value)?));
        }
        if value.get("rows").is_some() {
            return Ok(Input::Matrix(serde_json::from_value(value)?));
        }
        return Err(Error::Format("JSON input needs an \"atoms\" or \"rows\" field".into()));
    }
    let first = trimmed.lines().next().unwrap_or("");
    if first.split(',').map(str::trim).eq(["t", "v"]) {
        Ok(Input::Step(step_from_csv(text)?))
    } else {
        Ok(Input::Matrix(matrix_from_csv(text)?))
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &Path) -> Result<Input> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    parse_input(&text)
}

pub fn profile_to_json(p: &SpectralProfile) -> String {
    serde_json::to_string_pretty(p).expect("profiles serialize") + "\n"
}

pub fn matrix_to_json(m: &DenseMatrix) -> String {
    serde_json::to_string(m).expect("matrices serialize") + "\n"
}

fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
}

fn parse_field(field: &str, line: u64) -> Result<f64> {
    field
        .parse::<f64>()
        .map_err(|_| Error::Format(format!("line {line}: not a number: {field:?}")))
}

/// One matrix row per line, comma-separated.
pub fn matrix_from_csv(text: &str) -> Result<DenseMatrix> {
    let mut rows = 0;
    let mut cols = None;
    let mut entries = Vec::new();
    for record in csv_reader(text).records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if cols.is_some_and(|c| c != record.len()) {
            return Err(Error::Format(format!("line {line}: ragged matrix row")));
        }
        cols = Some(record.len());
        for field in record.iter() {
            entries.push(parse_field(field, line)?);
        }
        rows += 1;
    }
    Ok(DenseMatrix::new(rows, cols.unwrap_or(0), entries)?)
}

pub fn matrix_to_csv(m: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&x| format_number(x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Header `t,v`; each row is the value on `[previous t, t)`, starting at 0.
pub fn step_from_csv(text: &str) -> Result<StepFunction> {
    let mut breaks = Vec::new();
    let mut values = Vec::new();
    for (k, record) in csv_reader(text).records().enumerate() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if k == 0 {
            if record.iter().eq(["t", "v"]) {
                continue;
            }
            return Err(Error::Format("step function CSV needs a \"t,v\" header".into()));
        }
        if record.len() != 2 {
            return Err(Error::Format(format!("line {line}: expected two columns")));
        }
        breaks.push(parse_field(&record[0], line)?);
        values.push(parse_field(&record[1], line)?);
    }
    Ok(StepFunction::new(breaks, values)?)
}

pub fn step_to_csv(f: &StepFunction) -> String {
    let mut out = String::from("t,v\n");
    for (&t, &v) in f.breakpoints().iter().zip(f.values()) {
        writeln!(out, "{},{}", format_number(t), format_number(v)).expect("writing to a String");
    }
    out
}

/// Writes to a file, or standard output when `path` is `None`.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
