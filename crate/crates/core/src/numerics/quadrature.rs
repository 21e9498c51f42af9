use crate::{Error, Result};

/// Trapezoid rule on a log-spaced grid of `nodes` points in `[lower, upper]`.
///
/// Nodes are `t_k = lower · (upper/lower)^{k/(nodes−1)}`, so the grid
/// resolves integrands that vary on every scale between the endpoints
/// (power-law singularities at 0, exponential decay at ∞).
pub fn log_quadrature(integrand: impl Fn(f64) -> f64, lower: f64, upper: f64, nodes: usize) -> Result<f64> {
    if !(lower > 0.0) || !lower.is_finite() || !upper.is_finite() {
        return Err(Error::invalid(format!(
            "quadrature bounds must be finite with lower > 0 (got [{lower}, {upper}])"
        )));
    }
    if !(lower < upper) {
        return Err(Error::invalid(format!("quadrature needs lower < upper (got [{lower}, {upper}])")));
    }
    if nodes < 2 {
        return Err(Error::invalid("quadrature needs at least 2 nodes"));
    }

    let log_ratio = (upper / lower).ln();
    let last = (nodes - 1) as f64;
    let node_at = |k: usize| {
        if k == nodes - 1 {
            upper
        } else {
            lower * (log_ratio * k as f64 / last).exp()
        }
    };
    let eval = |k: usize, t: f64| {
        let value = integrand(t);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFiniteIntegrand { node: k, t, value })
        }
    };

    let mut t_prev = lower;
    let mut f_prev = eval(0, lower)?;
    let mut total = 0.0;
    for k in 1..nodes {
        let t = node_at(k);
        let f = eval(k, t)?;
        total += 0.5 * (t - t_prev) * (f + f_prev);
        t_prev = t;
        f_prev = f;
    }
    Ok(total)
}
