//! The integral representation behind fractional powers of negative definite
//! kernels:
//!
//! ```text
//! x^α = c_α ∫₀^∞ (1 − e^{−tx}) t^{−α−1} dt,   0 < α < 1, x ≥ 0
//! ```
//!
//! The integral is evaluated by [`log_quadrature`] on `[lower, upper]` and the
//! two truncated pieces are added back in closed form:
//!
//! * `∫₀^lower` by its alternating series
//!   `∑_{k≥1} (−1)^{k+1} x^k lower^{k−α} / (k!(k−α))`;
//! * `∫_upper^∞` as `upper^{−α}/α` once `x·upper ≥ 50` (the dropped
//!   `e^{−tx}` part is below `e^{−50}`), otherwise by a second log-grid
//!   pass out to `t = 50/x` followed by the same closed form.
//!
//! Dropping the pieces instead would cost `upper^{−α}/α` of absolute error,
//! which is several percent of the integral for `α = 0.3` at `upper = 1e4`.
//! With the corrections the default grid agrees with `x^α` to better than
//! `1e−6` relative for `α ∈ [0.1, 0.9]`, `x ∈ [0.1, 10]`.
//!
//! The constant `c_α` is obtained from the same quadrature at `x = 1`, so
//! the representation is exact at `x = 1` by construction.

use serde::Serialize;

use crate::numerics::log_quadrature;
use crate::{Error, Result};

/// Log-grid quadrature settings for the Lévy integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureParams {
    pub lower: f64,
    pub upper: f64,
    pub nodes: usize,
}

impl Default for QuadratureParams {
    fn default() -> Self {
        Self { lower: 1e-8, upper: 1e4, nodes: 20_000 }
    }
}

/// `e^{−50}` is below double precision relative to any tail we keep.
const EXP_CUTOFF: f64 = 50.0;

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

fn integrand(x: f64, alpha: f64) -> impl Fn(f64) -> f64 {
    move |t: f64| -(-t * x).exp_m1() * t.powf(-alpha - 1.0)
}

/// `∫₀^ε (1 − e^{−tx}) t^{−α−1} dt` by its power series.
fn lower_tail(x: f64, alpha: f64, eps: f64) -> f64 {
    let mut sum = 0.0;
    // (x ε)^k / k!, built incrementally
    let mut pow_fact = 1.0;
    let xe = x * eps;
    for k in 1..200 {
        pow_fact *= xe / k as f64;
        let term = pow_fact * eps.powf(-alpha) / (k as f64 - alpha);
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        if term.abs() <= f64::EPSILON * sum.abs() {
            break;
        }
    }
    sum
}

/// `∫_T^∞ (1 − e^{−tx}) t^{−α−1} dt`.
fn upper_tail(x: f64, alpha: f64, upper: f64, nodes: usize) -> Result<f64> {
    if x * upper >= EXP_CUTOFF {
        return Ok(upper.powf(-alpha) / alpha);
    }
    let cut = EXP_CUTOFF / x;
    let middle = log_quadrature(integrand(x, alpha), upper, cut, nodes)?;
    Ok(middle + cut.powf(-alpha) / alpha)
}

/// `∫₀^∞ (1 − e^{−tx}) t^{−α−1} dt` with the truncation corrections
/// described in the module docs.
pub fn levy_integral(x: f64, alpha: f64, quad: QuadratureParams) -> Result<f64> {
    check_alpha(alpha)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::invalid(format!("x must be finite and >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let body = log_quadrature(integrand(x, alpha), quad.lower, quad.upper, quad.nodes)?;
    let head = lower_tail(x, alpha, quad.lower);
    let tail = upper_tail(x, alpha, quad.upper, quad.nodes)?;
    Ok(head + body + tail)
}

/// `c_α = 1 / ∫₀^∞ (1 − e^{−t}) t^{−α−1} dt`.
pub fn levy_constant(alpha: f64, quad: QuadratureParams) -> Result<f64> {
    let integral = levy_integral(1.0, alpha, quad)?;
    if !(integral > 0.0) || !integral.is_finite() {
        return Err(Error::Internal(format!("Lévy integral evaluated to {integral}")));
    }
    Ok(1.0 / integral)
}

/// Both sides of `x^α = c_α ∫ (1 − e^{−tx}) t^{−α−1} dt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevyCheck {
    pub x: f64,
    pub alpha: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub levy_constant: f64,
}

impl LevyCheck {
    /// `|lhs − rhs| / max(|lhs|, tiny)`, or 0 when both sides vanish.
    pub fn relative_error(&self) -> f64 {
        let diff = (self.lhs - self.rhs).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.lhs.abs().max(f64::MIN_POSITIVE)
        }
    }
}

pub fn verify_levy_representation(x: f64, alpha: f64, quad: QuadratureParams) -> Result<LevyCheck> {
    let c = levy_constant(alpha, quad)?;
    let integral = levy_integral(x, alpha, quad)?;
    Ok(LevyCheck { x, alpha, lhs: x.powf(alpha), rhs: c * integral, levy_constant: c })
}
