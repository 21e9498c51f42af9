//! Symmetric kernels on finite point sets, definiteness verdicts and the
//! kernel transforms used to pass between negative definite kernels,
//! positive definite kernels and maps into Euclidean space.

mod definiteness;
mod levy;
mod transforms;

pub use definiteness::{
    check_negative_definite, check_negative_definite_batch, check_positive_definite, check_positive_definite_batch,
    default_tolerance, is_normalized, DefinitenessKind, DefinitenessReport, Verdict, NORMALIZATION_TOL,
};
pub use levy::{levy_constant, levy_integral, verify_levy_representation, LevyCheck, QuadratureParams};
pub(crate) use transforms::squared_distance as squared_distance_of;
pub use transforms::{fractional_power, induced_kernel, induced_kernel_with, schoenberg_transform, zero_extension};

use crate::numerics::{scale_of, Matrix};
use crate::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;

/// A real symmetric `n × n` kernel `K(x_i, x_j)` on `n ≥ 1` points.
///
/// Construction checks finiteness and near-symmetry (relative `1e−12`) and
/// then symmetrizes, so `entries(i,j) == entries(j,i)` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricKernel {
    entries: Matrix,
}

impl SymmetricKernel {
    pub fn new(entries: Matrix) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::invalid(format!("kernel must be square, got {}x{}", entries.rows(), entries.cols())));
        }
        if entries.rows() == 0 {
            return Err(Error::invalid("kernel needs at least one point"));
        }
        if let Some(pos) = entries.as_slice().iter().position(|v| !v.is_finite()) {
            let n = entries.cols();
            return Err(Error::invalid(format!("kernel entry ({}, {}) is not finite", pos / n, pos % n)));
        }
        let scale = scale_of(entries.as_slice());
        let asym = entries.asymmetry();
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::invalid(format!("kernel is not symmetric (max |k_ij - k_ji| = {asym:e})")));
        }
        let n = entries.rows();
        // addition commutes exactly, so this is symmetric bit for bit
        let sym = Matrix::from_fn(n, n, |i, j| 0.5 * (entries[(i, j)] + entries[(j, i)]));
        Ok(Self { entries: sym })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = Matrix::from_rows(rows).ok_or_else(|| Error::invalid("kernel rows are ragged"))?;
        Self::new(m)
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(Matrix::zeros(n, n))
    }

    pub fn ones(n: usize) -> Result<Self> {
        Self::new(Matrix::from_fn(n, n, |_, _| 1.0))
    }

    /// Skips validation; callers guarantee a symmetric, finite buffer.
    pub(crate) fn from_symmetric_unchecked(entries: Matrix) -> Self {
        debug_assert!(entries.is_square() && entries.asymmetry() == 0.0);
        Self { entries }
    }

    pub fn n(&self) -> usize {
        self.entries.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn into_matrix(self) -> Matrix {
        self.entries
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.entries[(i, i)]).collect()
    }

    /// `max(1, max |k_ij|)`.
    pub fn scale(&self) -> f64 {
        scale_of(self.entries.as_slice())
    }

    /// `∑ K(i,j) c_i c_j`.
    pub fn quadratic_form(&self, c: &[f64]) -> f64 {
        self.entries.quadratic_form(c)
    }

    pub fn max_abs_diff(&self, other: &SymmetricKernel) -> f64 {
        assert_eq!(self.n(), other.n());
        self.entries.as_slice().iter().zip(other.entries.as_slice()).fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()))
    }
}
