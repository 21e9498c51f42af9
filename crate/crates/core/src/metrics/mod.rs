//! Finite metric spaces, point clouds sampled from `ℓ_p`, and seeded
//! generators for test instances.

mod generate;
mod graph;

pub use generate::{random_point_cloud, CloudDistribution};
pub use graph::{
    cycle_edges, graph_shortest_path_metric, graph_shortest_path_metric_with, path_edges, random_connected_edges,
    star_edges,
};

use serde::Serialize;

use crate::exec::{fill_rows, find_first, Execution};
use crate::kernels::SymmetricKernel;
use crate::numerics::{scale_of, Matrix};
use crate::{Error, Result};

/// `n ≥ 1` points with `dim ≥ 1` finite coordinates each.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    coords: Matrix,
}

impl PointCloud {
    pub fn new(coords: Matrix) -> Result<Self> {
        if coords.rows() == 0 || coords.cols() == 0 {
            return Err(Error::invalid(format!(
                "point cloud needs n >= 1 and dim >= 1, got {}x{}",
                coords.rows(),
                coords.cols()
            )));
        }
        if let Some(pos) = coords.as_slice().iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "coordinate {} of point {} is not finite",
                pos % coords.cols(),
                pos / coords.cols()
            )));
        }
        Ok(Self { coords })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows).ok_or_else(|| Error::invalid("point rows are ragged"))?)
    }

    /// One-dimensional cloud.
    pub fn from_line(xs: &[f64]) -> Result<Self> {
        Self::new(Matrix::from_vec(xs.len(), 1, xs.to_vec()))
    }

    pub fn n(&self) -> usize {
        self.coords.rows()
    }

    pub fn dim(&self) -> usize {
        self.coords.cols()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        self.coords.row(i)
    }

    pub fn coords(&self) -> &Matrix {
        &self.coords
    }

    /// Restriction to the listed points, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<PointCloud> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n()) {
            return Err(Error::invalid(format!("point index {bad} out of range 0..{}", self.n())));
        }
        let rows: Vec<Vec<f64>> = indices.iter().map(|&i| self.point(i).to_vec()).collect();
        PointCloud::from_rows(&rows)
    }
}

/// Which metric axioms are known to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomFlags {
    pub symmetric: bool,
    pub zero_diagonal: bool,
    pub non_negative: bool,
    pub triangle: bool,
}

/// A distance array on `n ≥ 1` points.
///
/// Symmetry, zero diagonal and non-negativity always hold. The triangle
/// inequality holds when `axioms.triangle` is set; quasi-metrics are
/// accepted with the flag cleared.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetric {
    d: Matrix,
    axioms: AxiomFlags,
}

/// Axiom-by-axiom result of [`validate_metric`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub symmetric: bool,
    pub zero_diagonal: bool,
    pub non_negative: bool,
    pub triangle: bool,
    /// `(i, j, k)` with `d(i,j) > d(i,k) + d(k,j) + tol`, first in
    /// lexicographic order.
    pub triangle_witness: Option<(usize, usize, usize)>,
    /// `(i, j)` breaking one of the other axioms, first found.
    pub pair_witness: Option<(usize, usize)>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.symmetric && self.zero_diagonal && self.non_negative && self.triangle
    }
}

/// Default metric tolerance: `1e−12 · max(1, max d)`.
pub fn default_metric_tolerance(d: &Matrix) -> f64 {
    1e-12 * scale_of(d.as_slice())
}

/// Checks every metric axiom on a raw square array.
pub fn validate_metric(d: &Matrix, tol: f64) -> AxiomReport {
    validate_metric_with(d, tol, Execution::default())
}

pub fn validate_metric_with(d: &Matrix, tol: f64, exec: Execution) -> AxiomReport {
    let n = d.rows();
    let mut report = AxiomReport {
        symmetric: true,
        zero_diagonal: true,
        non_negative: true,
        triangle: true,
        triangle_witness: None,
        pair_witness: None,
    };
    if !d.is_square() {
        report.symmetric = false;
        report.triangle = false;
        return report;
    }
    for i in 0..n {
        if d[(i, i)].abs() > tol {
            report.zero_diagonal = false;
            report.pair_witness.get_or_insert((i, i));
        }
        for j in 0..n {
            let v = d[(i, j)];
            if !(v >= -tol) {
                report.non_negative = false;
                report.pair_witness.get_or_insert((i, j));
            }
            if j > i && !((v - d[(j, i)]).abs() <= tol) {
                report.symmetric = false;
                report.pair_witness.get_or_insert((i, j));
            }
        }
    }
    report.triangle_witness = find_first(n, exec, |i| {
        for j in 0..n {
            for k in 0..n {
                if d[(i, j)] > d[(i, k)] + d[(k, j)] + tol {
                    return Some((i, j, k));
                }
            }
        }
        None
    });
    report.triangle = report.triangle_witness.is_none();
    report
}

impl FiniteMetric {
    /// Validates a distance array. Symmetry, zero diagonal and
    /// non-negativity are required; the triangle flag records whether the
    /// triangle inequality holds within `1e−12 · scale`.
    pub fn new(d: Matrix) -> Result<Self> {
        if !d.is_square() || d.rows() == 0 {
            return Err(Error::invalid(format!(
                "distance array must be square with n >= 1, got {}x{}",
                d.rows(),
                d.cols()
            )));
        }
        if !d.all_finite() {
            return Err(Error::invalid("distance array has non-finite entries"));
        }
        let tol = default_metric_tolerance(&d);
        let report = validate_metric(&d, tol);
        if !(report.symmetric && report.zero_diagonal && report.non_negative) {
            let (i, j) = report.pair_witness.unwrap_or((0, 0));
            return Err(Error::invalid(format!(
                "distance array violates symmetry, zero diagonal or non-negativity at ({i}, {j})"
            )));
        }
        let n = d.rows();
        let d = Matrix::from_fn(n, n, |i, j| if i == j { 0.0 } else { 0.5 * (d[(i, j)] + d[(j, i)]).max(0.0) });
        Ok(Self {
            d,
            axioms: AxiomFlags { symmetric: true, zero_diagonal: true, non_negative: true, triangle: report.triangle },
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows).ok_or_else(|| Error::invalid("distance rows are ragged"))?)
    }

    /// For arrays that are metrics by construction.
    pub(crate) fn from_trusted(d: Matrix) -> Self {
        Self { d, axioms: AxiomFlags { symmetric: true, zero_diagonal: true, non_negative: true, triangle: true } }
    }

    pub fn n(&self) -> usize {
        self.d.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[(i, j)]
    }

    pub fn distances(&self) -> &Matrix {
        &self.d
    }

    pub fn axioms(&self) -> AxiomFlags {
        self.axioms
    }

    pub fn validate(&self, tol: f64) -> AxiomReport {
        validate_metric(&self.d, tol)
    }

    /// Restriction to the listed points.
    pub fn subset(&self, indices: &[usize]) -> Result<FiniteMetric> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n()) {
            return Err(Error::invalid(format!("point index {bad} out of range 0..{}", self.n())));
        }
        let k = indices.len();
        let d = Matrix::from_fn(k, k, |a, b| self.d[(indices[a], indices[b])]);
        Ok(Self { d, axioms: self.axioms })
    }
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p <= 2.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("p must lie in (0, 2], got {p}")))
    }
}

/// `∑_k |x_k − y_k|^p`.
pub(crate) fn power_sum(a: &[f64], b: &[f64], p: f64) -> f64 {
    if p == 2.0 {
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
    } else if p == 1.0 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
    } else {
        a.iter().zip(b).map(|(x, y)| (x - y).abs().powf(p)).sum()
    }
}

/// `ℓ_p` distances for `0 < p ≤ 2`.
///
/// For `p ≥ 1` this is `(∑|Δ_k|^p)^{1/p}`. For `0 < p < 1` the root is not
/// taken: `∑|Δ_k|^p` is the usual metric on `L_p` in that range (the rooted
/// version fails the triangle inequality).
pub fn lp_distance_matrix(cloud: &PointCloud, p: f64) -> Result<FiniteMetric> {
    lp_distance_matrix_with(cloud, p, Execution::default())
}

pub fn lp_distance_matrix_with(cloud: &PointCloud, p: f64, exec: Execution) -> Result<FiniteMetric> {
    check_p(p)?;
    let n = cloud.n();
    let data = fill_rows(n, n, exec, |i, row| {
        let xi = cloud.point(i);
        for (j, slot) in row.iter_mut().enumerate() {
            let s = power_sum(xi, cloud.point(j), p);
            *slot = if p <= 1.0 {
                s
            } else if p == 2.0 {
                s.sqrt()
            } else {
                s.powf(1.0 / p)
            };
        }
    });
    Ok(FiniteMetric::from_trusted(Matrix::from_vec(n, n, data)))
}

/// The kernel `N(i,j) = ∑_k |Δ_k|^p` of a cloud, for `0 < p ≤ 2`.
///
/// Equals `d^p` for the `ℓ_p` metric when `p ≥ 1` and the metric itself
/// when `p < 1`.
pub fn lp_power_kernel(cloud: &PointCloud, p: f64) -> Result<SymmetricKernel> {
    lp_power_kernel_with(cloud, p, Execution::default())
}

pub fn lp_power_kernel_with(cloud: &PointCloud, p: f64, exec: Execution) -> Result<SymmetricKernel> {
    check_p(p)?;
    let n = cloud.n();
    let data = fill_rows(n, n, exec, |i, row| {
        let xi = cloud.point(i);
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = power_sum(xi, cloud.point(j), p);
        }
    });
    Ok(SymmetricKernel::from_symmetric_unchecked(Matrix::from_vec(n, n, data)))
}

/// `N(i,j) = d(i,j)^β` for `β > 0`.
pub fn metric_power_kernel(m: &FiniteMetric, beta: f64) -> Result<SymmetricKernel> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::invalid(format!("beta must be finite and > 0, got {beta}")));
    }
    let entries = if beta == 1.0 {
        m.d.clone()
    } else if beta == 2.0 {
        m.d.map(|v| v * v)
    } else {
        m.d.map(|v| v.powf(beta))
    };
    SymmetricKernel::new(entries)
}
