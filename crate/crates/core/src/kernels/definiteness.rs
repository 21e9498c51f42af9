use serde::Serialize;

use super::SymmetricKernel;
use crate::exec::{map_slice, Execution};
use crate::numerics::{double_center, eigh_symmetric};
use crate::{Error, Result};

/// Relative tolerance for definiteness verdicts.
pub const DEFAULT_RELATIVE_TOL: f64 = 1e-9;

/// Absolute tolerance on diagonal entries for [`is_normalized`].
pub const NORMALIZATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DefinitenessKind {
    Positive,
    Negative,
}

impl DefinitenessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DefinitenessKind::Positive => "positive",
            DefinitenessKind::Negative => "negative",
        }
    }
}

/// Outcome of a definiteness test.
///
/// `extremal_eigenvalue` is `λ_min(K)` for the positive test and
/// `λ_max(PKP)` for the negative test. On failure `witness` holds a unit
/// coefficient vector (mean zero for the negative test) whose quadratic form
/// `∑ K_ij c_i c_j` has the wrong sign; the value is in
/// `quadratic_form_value`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DefinitenessReport {
    pub kind: DefinitenessKind,
    pub verdict: Verdict,
    pub extremal_eigenvalue: f64,
    pub witness: Option<Vec<f64>>,
    pub quadratic_form_value: Option<f64>,
    pub tolerance_used: f64,
}

impl DefinitenessReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

/// `1e−9 · max(1, max |k_ij|)`.
pub fn default_tolerance(k: &SymmetricKernel) -> f64 {
    DEFAULT_RELATIVE_TOL * k.scale()
}

fn resolve_tolerance(k: &SymmetricKernel, tol: Option<f64>) -> Result<f64> {
    match tol {
        None => Ok(default_tolerance(k)),
        Some(t) if t >= 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(Error::invalid(format!("tolerance must be finite and >= 0, got {t}"))),
    }
}

/// Scales to unit length and flips the sign so the largest-magnitude entry
/// (first one on ties) is positive.
fn canonical_unit(mut c: Vec<f64>) -> Vec<f64> {
    let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        c.iter_mut().for_each(|v| *v /= norm);
    }
    let mut lead = 0;
    for (i, v) in c.iter().enumerate() {
        if v.abs() > c[lead].abs() {
            lead = i;
        }
    }
    if c[lead] < 0.0 {
        c.iter_mut().for_each(|v| *v = -*v);
    }
    c
}

/// Positive definiteness: pass iff `λ_min(K) ≥ −tol`.
///
/// `tol = None` uses [`default_tolerance`]. On failure the witness is the
/// unit eigenvector of `λ_min`.
pub fn check_positive_definite(k: &SymmetricKernel, tol: Option<f64>) -> Result<DefinitenessReport> {
    let tol = resolve_tolerance(k, tol)?;
    let spectrum = eigh_symmetric(k.entries())?;
    let lambda = spectrum.min_eigenvalue();
    if lambda >= -tol {
        return Ok(DefinitenessReport {
            kind: DefinitenessKind::Positive,
            verdict: Verdict::Pass,
            extremal_eigenvalue: lambda,
            witness: None,
            quadratic_form_value: None,
            tolerance_used: tol,
        });
    }
    let witness = canonical_unit(spectrum.eigenvector(0));
    let value = k.quadratic_form(&witness);
    Ok(DefinitenessReport {
        kind: DefinitenessKind::Positive,
        verdict: Verdict::Fail,
        extremal_eigenvalue: lambda,
        witness: Some(witness),
        quadratic_form_value: Some(value),
        tolerance_used: tol,
    })
}

/// Negative definiteness on mean-zero coefficients: pass iff
/// `λ_max(PKP) ≤ tol` with `P = I − (1/n)·11ᵀ`.
///
/// On failure the witness is the eigenvector of `λ_max`, re-centered to
/// remove rounding drift and scaled to unit length.
pub fn check_negative_definite(k: &SymmetricKernel, tol: Option<f64>) -> Result<DefinitenessReport> {
    let tol = resolve_tolerance(k, tol)?;
    let centered = double_center(k.entries());
    let spectrum = eigh_symmetric(&centered)?;
    let lambda = spectrum.max_eigenvalue();
    if lambda <= tol {
        return Ok(DefinitenessReport {
            kind: DefinitenessKind::Negative,
            verdict: Verdict::Pass,
            extremal_eigenvalue: lambda,
            witness: None,
            quadratic_form_value: None,
            tolerance_used: tol,
        });
    }
    let mut c = spectrum.eigenvector(spectrum.dim() - 1);
    // The eigenvector of a positive eigenvalue of PKP is orthogonal to 1;
    // recenter twice so the sum is zero to working precision after scaling.
    for _ in 0..2 {
        let mean = c.iter().sum::<f64>() / c.len() as f64;
        c.iter_mut().for_each(|v| *v -= mean);
        c = canonical_unit(c);
    }
    let value = k.quadratic_form(&c);
    Ok(DefinitenessReport {
        kind: DefinitenessKind::Negative,
        verdict: Verdict::Fail,
        extremal_eigenvalue: lambda,
        witness: Some(c),
        quadratic_form_value: Some(value),
        tolerance_used: tol,
    })
}

/// Runs [`check_positive_definite`] over many kernels.
pub fn check_positive_definite_batch(
    kernels: &[SymmetricKernel],
    tol: Option<f64>,
    exec: Execution,
) -> Vec<Result<DefinitenessReport>> {
    map_slice(kernels, exec, |k| check_positive_definite(k, tol))
}

/// Runs [`check_negative_definite`] over many kernels.
pub fn check_negative_definite_batch(
    kernels: &[SymmetricKernel],
    tol: Option<f64>,
    exec: Execution,
) -> Vec<Result<DefinitenessReport>> {
    map_slice(kernels, exec, |k| check_negative_definite(k, tol))
}

/// Diagonal identically 1 (positive kind) or 0 (negative kind), within
/// [`NORMALIZATION_TOL`].
pub fn is_normalized(k: &SymmetricKernel, kind: DefinitenessKind) -> bool {
    let target = match kind {
        DefinitenessKind::Positive => 1.0,
        DefinitenessKind::Negative => 0.0,
    };
    k.diagonal().iter().all(|d| (d - target).abs() <= NORMALIZATION_TOL)
}
