//! Dense linear algebra and quadrature shared by every other module.
//!
//! Tolerances are relative to `scale = max(1, max |entry|)` unless a function
//! says otherwise; see [`scale_of`].

mod jacobi;
mod matrix;
mod quadrature;

pub use jacobi::{eigh_symmetric, SpectralDecomposition, MAX_SWEEPS};
pub use matrix::Matrix;
pub use quadrature::log_quadrature;

/// `max(1, max |x|)` over a slice.
pub fn scale_of(values: &[f64]) -> f64 {
    values.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()))
}

/// The orthogonal projector `I − (1/n)·11ᵀ` onto mean-zero vectors.
pub fn centering_projector(n: usize) -> Result<Matrix, crate::Error> {
    if n == 0 {
        return Err(crate::Error::invalid("centering projector needs n >= 1"));
    }
    let inv = 1.0 / n as f64;
    let mut p = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            p[(i, j)] = if i == j { 1.0 - inv } else { -inv };
        }
    }
    Ok(p)
}

/// `P·M·P` with `P` the centering projector, computed by double centering:
/// `M_ij − r_i − r_j + g` with row means `r` and grand mean `g`.
pub fn double_center(m: &Matrix) -> Matrix {
    let n = m.rows();
    debug_assert_eq!(n, m.cols());
    let nf = n as f64;
    let row_means: Vec<f64> = (0..n).map(|i| m.row(i).iter().sum::<f64>() / nf).collect();
    let col_means: Vec<f64> = (0..n).map(|j| (0..n).map(|i| m[(i, j)]).sum::<f64>() / nf).collect();
    let grand = row_means.iter().sum::<f64>() / nf;
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = m[(i, j)] - row_means[i] - col_means[j] + grand;
        }
    }
    out
}
