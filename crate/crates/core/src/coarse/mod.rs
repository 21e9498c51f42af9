//! Coarse-embedding bounds on finite data.
//!
//! A map `f` between metric spaces is a coarse embedding when
//! `ρ₁(d(x,y)) ≤ ‖f(x) − f(y)‖ ≤ ρ₂(d(x,y))` for non-decreasing `ρ₁, ρ₂`
//! with `ρ₁(t) → ∞`. On a finite set only the two-sided inequality can be
//! checked. The limit condition on `ρ₁` is not decidable from finite data:
//! reports carry the largest achieved distance and the compression there
//! so a caller can judge the growth, but nothing here certifies it.
//!
//! Likewise [`uniform_family_check`] only verifies that a finite family of
//! maps shares one pair of bounds. A single global embedding of an infinite
//! space cannot be constructed from such a family.

mod step;

pub use step::MonotoneStepFunction;

use serde::Serialize;

use crate::embed::Embedding;
use crate::exec::{map_indices, map_slice, Execution};
use crate::kernels::SymmetricKernel;
use crate::metrics::FiniteMetric;
use crate::{Error, Result};

/// Relative strictness tolerance for bound violations.
pub const VIOLATION_RELATIVE_TOL: f64 = 1e-9;

/// Tightest admissible bounds realized by a map on a finite metric.
///
/// At each achieved distance `t`:
/// `compression[k] = min{‖f_i − f_j‖ : d(i,j) ≥ t}` and
/// `expansion[k] = max{‖f_i − f_j‖ : d(i,j) ≤ t}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuliReport {
    pub achieved_distances: Vec<f64>,
    pub compression: Vec<f64>,
    pub expansion: Vec<f64>,
}

impl ModuliReport {
    pub fn len(&self) -> usize {
        self.achieved_distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.achieved_distances.is_empty()
    }

    /// Largest achieved distance with the compression there.
    pub fn largest_scale(&self) -> Option<(f64, f64)> {
        Some((*self.achieved_distances.last()?, *self.compression.last()?))
    }

    /// The moduli as piecewise-linear bound functions with breakpoints at the
    /// achieved distances. `None` for a single-point space.
    pub fn to_step_functions(&self) -> Option<(MonotoneStepFunction, MonotoneStepFunction)> {
        if self.is_empty() {
            return None;
        }
        let rho1 = MonotoneStepFunction::new(
            self.achieved_distances.iter().copied().zip(self.compression.iter().copied()).collect(),
        )
        .ok()?;
        let rho2 = MonotoneStepFunction::new(
            self.achieved_distances.iter().copied().zip(self.expansion.iter().copied()).collect(),
        )
        .ok()?;
        Some((rho1, rho2))
    }
}

fn check_sizes(metric_n: usize, other_n: usize, what: &str) -> Result<()> {
    if metric_n == other_n {
        Ok(())
    } else {
        Err(Error::invalid(format!("metric has {metric_n} points but the {what} has {other_n}")))
    }
}

/// `(d(i,j), ‖f_i − f_j‖)` for every unordered pair `i < j`, row by row.
fn pair_data(m: &FiniteMetric, e: &Embedding, exec: Execution) -> Vec<(f64, f64)> {
    let n = m.n();
    map_indices(n, exec, |i| (i + 1..n).map(|j| (m.get(i, j), e.distance(i, j))).collect::<Vec<_>>())
        .into_iter()
        .flatten()
        .collect()
}

pub fn empirical_moduli(m: &FiniteMetric, e: &Embedding) -> Result<ModuliReport> {
    empirical_moduli_with(m, e, Execution::default())
}

pub fn empirical_moduli_with(m: &FiniteMetric, e: &Embedding, exec: Execution) -> Result<ModuliReport> {
    check_sizes(m.n(), e.n(), "embedding")?;
    let mut pairs = pair_data(m, e, exec);
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    // group equal distances: (t, min image, max image)
    let mut groups: Vec<(f64, f64, f64)> = Vec::new();
    for (d, img) in pairs {
        match groups.last_mut() {
            Some(g) if g.0 == d => {
                g.1 = g.1.min(img);
                g.2 = g.2.max(img);
            }
            _ => groups.push((d, img, img)),
        }
    }

    let achieved_distances: Vec<f64> = groups.iter().map(|g| g.0).collect();
    let mut compression = vec![0.0; groups.len()];
    let mut running = f64::INFINITY;
    for (k, g) in groups.iter().enumerate().rev() {
        running = running.min(g.1);
        compression[k] = running;
    }
    let mut expansion = vec![0.0; groups.len()];
    let mut running = f64::NEG_INFINITY;
    for (k, g) in groups.iter().enumerate() {
        running = running.max(g.2);
        expansion[k] = running;
    }
    Ok(ModuliReport { achieved_distances, compression, expansion })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSide {
    Lower,
    Upper,
}

/// One pair outside its bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub distance: f64,
    /// Image distance, or kernel value for [`verify_kernel_bounds`].
    pub value: f64,
    pub bound: f64,
    pub side: BoundSide,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationReport {
    pub pairs_checked: usize,
    pub tolerance: f64,
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `ρ₁(d) − tol ≤ value ≤ ρ₂(d) + tol` for every `(d, value)` pair
/// with `tol = 1e−9 · max(1, largest value or bound seen)`.
fn check_pairs(
    pairs: impl Iterator<Item = (usize, usize, f64, f64)> + Clone,
    rho1: &MonotoneStepFunction,
    rho2: &MonotoneStepFunction,
) -> ViolationReport {
    let mut scale = 1.0_f64;
    let mut count = 0;
    for (_, _, d, v) in pairs.clone() {
        scale = scale.max(v.abs()).max(rho1.eval(d).abs()).max(rho2.eval(d).abs());
        count += 1;
    }
    let tol = VIOLATION_RELATIVE_TOL * scale;
    let mut violations = Vec::new();
    for (i, j, d, v) in pairs {
        let lo = rho1.eval(d);
        let hi = rho2.eval(d);
        if v < lo - tol {
            violations.push(Violation { i, j, distance: d, value: v, bound: lo, side: BoundSide::Lower });
        }
        if v > hi + tol {
            violations.push(Violation { i, j, distance: d, value: v, bound: hi, side: BoundSide::Upper });
        }
    }
    ViolationReport { pairs_checked: count, tolerance: tol, violations }
}

fn unordered_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> + Clone {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Lists every pair with `‖f_i − f_j‖` outside `[ρ₁(d(i,j)), ρ₂(d(i,j))]`.
pub fn verify_coarse_bounds(
    m: &FiniteMetric,
    e: &Embedding,
    rho1: &MonotoneStepFunction,
    rho2: &MonotoneStepFunction,
) -> Result<ViolationReport> {
    check_sizes(m.n(), e.n(), "embedding")?;
    let pairs = unordered_pairs(m.n()).map(|(i, j)| (i, j, m.get(i, j), e.distance(i, j)));
    Ok(check_pairs(pairs, rho1, rho2))
}

/// Lists every pair with `N(i,j)` outside `[ρ₁(d(i,j)), ρ₂(d(i,j))]`.
///
/// Together with a passing negative definiteness test and a zero diagonal
/// this is the full kernel-side hypothesis for a coarse embedding of the
/// finite space.
pub fn verify_kernel_bounds(
    n: &SymmetricKernel,
    m: &FiniteMetric,
    rho1: &MonotoneStepFunction,
    rho2: &MonotoneStepFunction,
) -> Result<ViolationReport> {
    check_sizes(m.n(), n.n(), "kernel")?;
    let pairs = unordered_pairs(m.n()).map(|(i, j)| (i, j, m.get(i, j), n.get(i, j)));
    Ok(check_pairs(pairs, rho1, rho2))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub uniform: bool,
    pub members: Vec<ViolationReport>,
}

/// Whether every `(metric, map)` member satisfies the shared bounds.
/// Members are checked independently; the report keeps input order.
pub fn uniform_family_check(
    family: &[(FiniteMetric, Embedding)],
    rho1: &MonotoneStepFunction,
    rho2: &MonotoneStepFunction,
) -> Result<FamilyReport> {
    uniform_family_check_with(family, rho1, rho2, Execution::default())
}

pub fn uniform_family_check_with(
    family: &[(FiniteMetric, Embedding)],
    rho1: &MonotoneStepFunction,
    rho2: &MonotoneStepFunction,
    exec: Execution,
) -> Result<FamilyReport> {
    let members = map_slice(family, exec, |(m, e)| verify_coarse_bounds(m, e, rho1, rho2))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyReport { uniform: members.iter().all(ViolationReport::passed), members })
}
