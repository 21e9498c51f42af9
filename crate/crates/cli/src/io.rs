//! CSV formats.
//!
//! * Matrix: `n` lines of `n` comma-separated decimals, no header.
//! * Points: a first line `n dim`, then `n` lines of `dim` comma-separated
//!   decimals.
//! * Breakpoints: lines `t,v`.
//!
//! Numbers are written with 17 significant digits so they round-trip.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use coarse_embed::numerics::Matrix;

use crate::CliError;

fn read_lines(path: &Path) -> Result<Vec<(usize, String)>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let lines: Vec<(usize, String)> =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim().to_string())).filter(|(_, l)| !l.is_empty()).collect();
    if lines.is_empty() {
        return Err(CliError::input(format!("{}: empty input", path.display())));
    }
    Ok(lines)
}

fn parse_row(path: &Path, line_no: usize, line: &str) -> Result<Vec<f64>, CliError> {
    line.split(',')
        .map(|field| {
            let field = field.trim();
            field
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::input(format!("{}:{line_no}: not a finite number: {field:?}", path.display())))
        })
        .collect()
}

pub fn read_matrix(path: &Path) -> Result<Matrix, CliError> {
    let lines = read_lines(path)?;
    let n = lines.len();
    let mut rows = Vec::with_capacity(n);
    for (line_no, line) in &lines {
        let row = parse_row(path, *line_no, line)?;
        if row.len() != n {
            return Err(CliError::input(format!(
                "{}:{line_no}: expected {n} values in a square matrix, found {}",
                path.display(),
                row.len()
            )));
        }
        rows.push(row);
    }
    Ok(Matrix::from_rows(&rows).expect("rows checked square"))
}

pub fn read_points(path: &Path) -> Result<Matrix, CliError> {
    let lines = read_lines(path)?;
    let (header_no, header) = &lines[0];
    let dims: Vec<usize> = header
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::input(format!("{}:{header_no}: header must be \"n dim\"", path.display())))?;
    let [n, dim] = dims[..] else {
        return Err(CliError::input(format!("{}:{header_no}: header must be \"n dim\"", path.display())));
    };
    if n == 0 || dim == 0 {
        return Err(CliError::input(format!("{}:{header_no}: n and dim must be positive", path.display())));
    }
    let body = &lines[1..];
    if body.len() != n {
        let line_no = body.get(n).map_or(lines.last().unwrap().0, |(l, _)| *l);
        return Err(CliError::input(format!(
            "{}:{line_no}: header declares {n} points, found {}",
            path.display(),
            body.len()
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for (line_no, line) in body {
        let row = parse_row(path, *line_no, line)?;
        if row.len() != dim {
            return Err(CliError::input(format!(
                "{}:{line_no}: expected {dim} coordinates, found {}",
                path.display(),
                row.len()
            )));
        }
        rows.push(row);
    }
    Ok(Matrix::from_rows(&rows).expect("rows checked rectangular"))
}

pub fn read_breakpoints(path: &Path) -> Result<Vec<(f64, f64)>, CliError> {
    let lines = read_lines(path)?;
    lines
        .iter()
        .map(|(line_no, line)| {
            let row = parse_row(path, *line_no, line)?;
            match row[..] {
                [t, v] => Ok((t, v)),
                _ => Err(CliError::input(format!("{}:{line_no}: expected \"t,v\"", path.display()))),
            }
        })
        .collect()
}

pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn format_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&v| fmt_num(v)).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

pub fn format_points(m: &Matrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    out.push_str(&format_matrix(m));
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}
