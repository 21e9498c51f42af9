//! Execution policy for the crate's data-parallel loops.
//!
//! Every parallel path produces bit-identical output to the sequential one:
//! work is split by independent index (row, source vertex, kernel) and the
//! results are written back in index order.

/// How a data-parallel loop is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when the `parallel` feature is disabled.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Whether this policy will actually use worker threads.
    pub fn is_parallel(self) -> bool {
        matches!(self, Execution::Parallel) && cfg!(feature = "parallel")
    }
}

/// `(0..n).map(f).collect()` under the given policy.
pub(crate) fn map_indices<R, F>(n: usize, exec: Execution, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Maps a slice under the given policy, preserving order.
pub(crate) fn map_slice<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Fills a row-major `rows × cols` buffer one row at a time.
pub(crate) fn fill_rows<F>(rows: usize, cols: usize, exec: Execution, f: F) -> Vec<f64>
where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    let mut data = vec![0.0; rows * cols];
    if cols == 0 {
        return data;
    }
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            data.par_chunks_mut(cols).enumerate().for_each(|(i, row)| f(i, row));
        }
        _ => data.chunks_mut(cols).enumerate().for_each(|(i, row)| f(i, row)),
    }
    data
}

/// First index (in ascending order) for which `f` returns `Some`.
pub(crate) fn find_first<R, F>(n: usize, exec: Execution, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().find_map_first(f)
        }
        _ => (0..n).find_map(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies_agree() {
        let f = |i: usize, row: &mut [f64]| {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (i * 31 + j) as f64 / 7.0;
            }
        };
        let a = fill_rows(17, 5, Execution::Sequential, f);
        let b = fill_rows(17, 5, Execution::Parallel, f);
        assert_eq!(a, b);

        let g = |i: usize| if i % 13 == 12 { Some(i) } else { None };
        assert_eq!(find_first(100, Execution::Parallel, g), Some(12));
        assert_eq!(find_first(100, Execution::Sequential, g), Some(12));
        assert_eq!(map_indices(9, Execution::Parallel, |i| i * i), map_indices(9, Execution::Sequential, |i| i * i));
    }

    #[test]
    fn empty_rows() {
        assert!(fill_rows(3, 0, Execution::Parallel, |_, _| {}).is_empty());
        assert!(fill_rows(0, 4, Execution::Parallel, |_, _| {}).is_empty());
    }
}
