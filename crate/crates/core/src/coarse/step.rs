use serde::Serialize;

use crate::{Error, Result};

/// A non-decreasing function `[0, ∞) → [0, ∞)` given by breakpoints.
///
/// Evaluation is constant at the first value left of the first breakpoint,
/// linear between breakpoints, and continues the last segment's slope past
/// the last breakpoint (slope 0 when there is a single breakpoint).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneStepFunction {
    breakpoints: Vec<(f64, f64)>,
}

impl MonotoneStepFunction {
    /// Breakpoints must be non-empty and finite with `t ≥ 0` strictly
    /// increasing and `v ≥ 0` non-decreasing.
    pub fn new(breakpoints: Vec<(f64, f64)>) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::invalid("bound function needs at least one breakpoint"));
        }
        for (k, &(t, v)) in breakpoints.iter().enumerate() {
            if !t.is_finite() || !v.is_finite() || t < 0.0 || v < 0.0 {
                return Err(Error::invalid(format!("breakpoint {k} = ({t}, {v}) must be finite and non-negative")));
            }
            if k > 0 {
                let (pt, pv) = breakpoints[k - 1];
                if !(t > pt) {
                    return Err(Error::invalid(format!("breakpoint {k}: t = {t} does not increase past {pt}")));
                }
                if v < pv {
                    return Err(Error::invalid(format!("breakpoint {k}: v = {v} decreases from {pv}")));
                }
            }
        }
        Ok(Self { breakpoints })
    }

    /// Samples `f` at the given abscissae (sorted and deduplicated first).
    /// Fails if the samples are not a valid non-decreasing function.
    pub fn from_fn(ts: &[f64], f: impl Fn(f64) -> f64) -> Result<Self> {
        let mut ts = ts.to_vec();
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        Self::new(ts.into_iter().map(|t| (t, f(t))).collect())
    }

    /// `t^β` sampled at `ts`.
    pub fn power(beta: f64, ts: &[f64]) -> Result<Self> {
        if !(beta >= 0.0) || !beta.is_finite() {
            return Err(Error::invalid(format!("power bound needs beta >= 0, got {beta}")));
        }
        Self::from_fn(ts, |t| t.powf(beta))
    }

    /// `a·t + b` sampled at `ts`.
    pub fn affine(a: f64, b: f64, ts: &[f64]) -> Result<Self> {
        if !(a >= 0.0) {
            return Err(Error::invalid(format!("affine bound needs slope a >= 0, got {a}")));
        }
        Self::from_fn(ts, |t| a * t + b)
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    pub fn eval(&self, t: f64) -> f64 {
        let bp = &self.breakpoints;
        let (t0, v0) = bp[0];
        if t <= t0 {
            return v0;
        }
        let last = bp.len() - 1;
        if t >= bp[last].0 {
            if last == 0 {
                return bp[0].1;
            }
            let (ta, va) = bp[last - 1];
            let (tb, vb) = bp[last];
            if t == tb {
                return vb;
            }
            return vb + (vb - va) / (tb - ta) * (t - tb);
        }
        // first breakpoint with bp.t >= t; t0 < t < t_last so 1 <= k <= last
        let k = bp.partition_point(|&(bt, _)| bt < t);
        let (ta, va) = bp[k - 1];
        let (tb, vb) = bp[k];
        if t == tb {
            return vb;
        }
        va + (vb - va) * (t - ta) / (tb - ta)
    }
}
