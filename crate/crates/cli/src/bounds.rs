//! Bound expressions for `--rho1` / `--rho2`.
//!
//! Accepted forms: `t^β`, `t`, `a*t+b` (also `a·t+b`, `a*t-b`, `a*t`,
//! `t+b`) and `@path.csv` naming a breakpoint file of `t,v` lines. Presets
//! are sampled at the supplied abscissae (the achieved distances, plus 0).

use std::path::Path;

use coarse_embed::coarse::MonotoneStepFunction;

use crate::{io, CliError};

#[derive(Debug, Clone, PartialEq)]
pub enum BoundExpr {
    Power(f64),
    Affine { a: f64, b: f64 },
    Breakpoints(Vec<(f64, f64)>),
}

fn number(s: &str, expr: &str) -> Result<f64, CliError> {
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::input(format!("bad number {s:?} in bound expression {expr:?}")))
}

pub fn parse(expr: &str) -> Result<BoundExpr, CliError> {
    if let Some(path) = expr.strip_prefix('@') {
        return Ok(BoundExpr::Breakpoints(io::read_breakpoints(Path::new(path))?));
    }
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(beta) = compact.strip_prefix("t^") {
        return Ok(BoundExpr::Power(number(beta, expr)?));
    }
    let Some(t_pos) = compact.find('t') else {
        return Err(CliError::input(format!("bound expression {expr:?} must be t^beta or a*t+b")));
    };
    let (head, tail) = compact.split_at(t_pos);
    let tail = &tail[1..];
    let a = match head.trim_end_matches(['*', '·']) {
        "" if head.is_empty() => 1.0,
        "" => return Err(CliError::input(format!("missing slope in {expr:?}"))),
        s => number(s, expr)?,
    };
    let b = if tail.is_empty() {
        0.0
    } else if let Some(rest) = tail.strip_prefix('+') {
        number(rest, expr)?
    } else if tail.starts_with('-') {
        number(tail, expr)?
    } else {
        return Err(CliError::input(format!("bound expression {expr:?} must be t^beta or a*t+b")));
    };
    if a == 1.0 && b == 0.0 {
        return Ok(BoundExpr::Power(1.0));
    }
    Ok(BoundExpr::Affine { a, b })
}

impl BoundExpr {
    pub fn to_function(&self, samples: &[f64]) -> Result<MonotoneStepFunction, CliError> {
        let mut ts = samples.to_vec();
        ts.push(0.0);
        let f = match *self {
            BoundExpr::Power(beta) => MonotoneStepFunction::power(beta, &ts),
            BoundExpr::Affine { a, b } => MonotoneStepFunction::affine(a, b, &ts),
            BoundExpr::Breakpoints(ref pts) => MonotoneStepFunction::new(pts.clone()),
        };
        f.map_err(|e| CliError::input(e.to_string()))
    }
}
