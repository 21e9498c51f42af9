use super::SymmetricKernel;
use crate::embed::Embedding;
use crate::exec::{fill_rows, Execution};
use crate::numerics::Matrix;
use crate::{Error, Result};

/// Elementwise `exp(−t · N(i,j))` for `t > 0`.
///
/// Maps negative definite kernels to positive definite ones. Large `t·N`
/// underflows to 0, which is harmless.
pub fn schoenberg_transform(n: &SymmetricKernel, t: f64) -> Result<SymmetricKernel> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::invalid(format!("exponential transform needs finite t > 0, got {t}")));
    }
    Ok(SymmetricKernel::from_symmetric_unchecked(n.entries().map(|v| (-t * v).exp())))
}

/// Elementwise `N(i,j)^α` for `0 < α ≤ 1` on a non-negative kernel.
///
/// `α = 1` returns the kernel unchanged.
pub fn fractional_power(n: &SymmetricKernel, alpha: f64) -> Result<SymmetricKernel> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::invalid(format!("fractional power needs 0 < alpha <= 1, got {alpha}")));
    }
    let size = n.n();
    for i in 0..size {
        for j in i..size {
            if n.get(i, j) < 0.0 {
                return Err(Error::invalid(format!(
                    "fractional power needs a non-negative kernel; entry ({i}, {j}) = {}",
                    n.get(i, j)
                )));
            }
        }
    }
    if alpha == 1.0 {
        return Ok(n.clone());
    }
    Ok(SymmetricKernel::from_symmetric_unchecked(n.entries().map(|v| v.powf(alpha))))
}

/// Extends a kernel on `|A|` points to `total_n` points by placing entry
/// `(a, b)` at `(placement[a], placement[b])` and filling everything else
/// with 0.
pub fn zero_extension(k: &SymmetricKernel, total_n: usize, placement: &[usize]) -> Result<SymmetricKernel> {
    if placement.len() != k.n() {
        return Err(Error::invalid(format!(
            "placement has {} indices for a kernel on {} points",
            placement.len(),
            k.n()
        )));
    }
    if total_n < k.n() {
        return Err(Error::invalid(format!("cannot extend a kernel on {} points to {total_n} points", k.n())));
    }
    let mut seen = vec![None; total_n];
    for (a, &target) in placement.iter().enumerate() {
        if target >= total_n {
            return Err(Error::invalid(format!("placement index {target} out of range 0..{total_n}")));
        }
        if let Some(prev) = seen[target] {
            return Err(Error::invalid(format!(
                "placement is not injective: points {prev} and {a} both map to {target}"
            )));
        }
        seen[target] = Some(a);
    }
    let mut out = Matrix::zeros(total_n, total_n);
    for (a, &ia) in placement.iter().enumerate() {
        for (b, &ib) in placement.iter().enumerate() {
            out[(ia, ib)] = k.get(a, b);
        }
    }
    Ok(SymmetricKernel::from_symmetric_unchecked(out))
}

/// The kernel `N(i,j) = ‖f_i − f_j‖²` of a point configuration.
pub fn induced_kernel(e: &Embedding) -> SymmetricKernel {
    induced_kernel_with(e, Execution::default())
}

pub fn induced_kernel_with(e: &Embedding, exec: Execution) -> SymmetricKernel {
    let n = e.n();
    let data = fill_rows(n, n, exec, |i, row| {
        let fi = e.point(i);
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = squared_distance(fi, e.point(j));
        }
    });
    SymmetricKernel::from_symmetric_unchecked(Matrix::from_vec(n, n, data))
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}
