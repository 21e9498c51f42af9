use super::{scale_of, Matrix};
use crate::{Error, Result};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Relative off-diagonal norm at which the iteration stops.
const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Relative symmetry tolerance accepted on input.
const SYMMETRY_TOL: f64 = 1e-12;

/// Eigenvalues in ascending order with orthonormal eigenvectors stored as the
/// columns of `eigenvectors` (column `k` pairs with `eigenvalues[k]`).
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
    /// Sweeps used by the Jacobi iteration.
    pub sweeps: usize,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Column `k` of the eigenvector matrix.
    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        let n = self.dim();
        (0..n).map(|i| self.eigenvectors[(i, k)]).collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    /// `V · diag(λ) · Vᵀ`.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        Matrix::from_fn(n, n, |i, j| (0..n).map(|k| v[(i, k)] * self.eigenvalues[k] * v[(j, k)]).sum())
    }
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Pivots are visited in row-major order `(0,1), (0,2), …, (n−2,n−1)` each
/// sweep; the iteration stops once the off-diagonal Frobenius norm falls to
/// `1e−12 · ‖M‖_F` and fails after [`MAX_SWEEPS`] sweeps. The rotation order
/// is fixed, so identical input gives bit-identical output.
///
/// The input must be square, finite and symmetric to within
/// `1e−12 · max(1, max |m_ij|)`; it is symmetrized exactly before iterating.
pub fn eigh_symmetric(m: &Matrix) -> Result<SpectralDecomposition> {
    if !m.is_square() {
        return Err(Error::invalid(format!("eigendecomposition needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    if n == 0 {
        return Err(Error::invalid("eigendecomposition needs n >= 1"));
    }
    if !m.all_finite() {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    let scale = scale_of(m.as_slice());
    let asym = m.asymmetry();
    if asym > SYMMETRY_TOL * scale {
        return Err(Error::invalid(format!("matrix is not symmetric (max |m_ij - m_ji| = {asym:e})")));
    }

    let mut a = Matrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    let mut v = Matrix::identity(n);
    let target = OFF_DIAGONAL_TOL * a.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let eigenvalues = order.iter().map(|&k| a[(k, k)]).collect();
    let eigenvectors = Matrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(SpectralDecomposition { eigenvalues, eigenvectors, sweeps })
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Annihilates `a[p][q]` with one plane rotation and accumulates it into `v`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let app = a[(p, p)];
    let aqq = a[(q, q)];
    // negligible against both diagonal entries
    if app.abs() + 100.0 * apq.abs() == app.abs() && aqq.abs() + 100.0 * apq.abs() == aqq.abs() {
        a[(p, q)] = 0.0;
        a[(q, p)] = 0.0;
        return;
    }
    let theta = (aqq - app) / (2.0 * apq);
    let t =
        if theta.abs() > 1e150 { 0.5 / theta } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}
