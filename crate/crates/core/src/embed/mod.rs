//! Constructive halves of the Moore and Schoenberg characterizations:
//! Euclidean point configurations realizing a positive definite kernel as
//! inner products, or a normalized negative definite kernel as squared
//! distances.
//!
//! Coordinates are reported along eigenvectors in descending eigenvalue
//! order. Any orthogonal transform of the output is an equally valid
//! realization, so compare Gram or distance data, never raw coordinates.

use serde::Serialize;

use crate::kernels::{
    check_negative_definite, default_tolerance, induced_kernel, is_normalized, DefinitenessKind, DefinitenessReport,
    SymmetricKernel,
};
use crate::metrics::{lp_power_kernel, metric_power_kernel, FiniteMetric, PointCloud};
use crate::numerics::{eigh_symmetric, Matrix};
use crate::{Error, Result};

/// How an [`Embedding`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum Provenance {
    Moore {
        tol: f64,
    },
    Schoenberg {
        base: usize,
        tol: f64,
    },
    Snowflake {
        p: f64,
        base: usize,
        tol: f64,
    },
    /// Coordinates supplied from outside the crate.
    External,
}

/// `n` image points in `ℝ^m`.
///
/// The constructions in this module always produce `1 ≤ m ≤ n`; externally
/// supplied coordinates may use any `m ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    coords: Matrix,
    provenance: Provenance,
}

impl Embedding {
    pub fn new(coords: Matrix, provenance: Provenance) -> Result<Self> {
        if coords.rows() == 0 || coords.cols() == 0 {
            return Err(Error::invalid(format!(
                "embedding needs n >= 1 points in dimension >= 1, got {}x{}",
                coords.rows(),
                coords.cols()
            )));
        }
        if !coords.all_finite() {
            return Err(Error::invalid("embedding has non-finite coordinates"));
        }
        Ok(Self { coords, provenance })
    }

    pub fn from_cloud(cloud: &PointCloud) -> Self {
        Self { coords: cloud.coords().clone(), provenance: Provenance::External }
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

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        crate::kernels::squared_distance_of(self.point(i), self.point(j)).sqrt()
    }

    /// Matrix of inner products `⟨f_i, f_j⟩`.
    pub fn gram(&self) -> Matrix {
        self.coords.matmul(&self.coords.transpose())
    }

    pub fn subset(&self, indices: &[usize]) -> Result<Embedding> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n()) {
            return Err(Error::invalid(format!("point index {bad} out of range 0..{}", self.n())));
        }
        let rows: Vec<Vec<f64>> = indices.iter().map(|&i| self.point(i).to_vec()).collect();
        let coords = Matrix::from_rows(&rows).ok_or_else(|| Error::Internal("ragged subset".into()))?;
        Embedding::new(coords, self.provenance)
    }
}

fn resolve_tol(k: &SymmetricKernel, tol: Option<f64>) -> Result<f64> {
    match tol {
        None => Ok(default_tolerance(k)),
        Some(t) if t >= 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(Error::invalid(format!("tolerance must be finite and >= 0, got {t}"))),
    }
}

/// Points whose inner products reproduce a positive definite kernel.
///
/// Eigenvalues in `[−tol, 0]` are clamped to 0; an eigenvalue below `−tol`
/// is refused with [`Error::NotDefinite`]. Coordinates are the eigenvector
/// rows scaled by `√λ`, keeping eigenvalues above the rounding floor
/// `n · ε · max|λ|` in descending order.
pub fn moore_factorize(k: &SymmetricKernel, tol: Option<f64>) -> Result<Embedding> {
    let tol = resolve_tol(k, tol)?;
    let coords = gram_factor(k, tol)?;
    Embedding::new(coords, Provenance::Moore { tol })
}

fn gram_factor(k: &SymmetricKernel, tol: f64) -> Result<Matrix> {
    let n = k.n();
    let spectrum = eigh_symmetric(k.entries())?;
    let lambda_min = spectrum.min_eigenvalue();
    if lambda_min < -tol {
        let witness = spectrum.eigenvector(0);
        let value = k.quadratic_form(&witness);
        return Err(Error::NotDefinite {
            kind: "positive",
            report: Box::new(DefinitenessReport {
                kind: DefinitenessKind::Positive,
                verdict: crate::kernels::Verdict::Fail,
                extremal_eigenvalue: lambda_min,
                witness: Some(witness),
                quadratic_form_value: Some(value),
                tolerance_used: tol,
            }),
        });
    }
    let max_abs = spectrum.eigenvalues.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let floor = n as f64 * f64::EPSILON * max_abs;
    let kept: Vec<usize> = (0..n).rev().filter(|&k| spectrum.eigenvalues[k] > floor).collect();
    if kept.is_empty() {
        return Ok(Matrix::zeros(n, 1));
    }
    Ok(Matrix::from_fn(n, kept.len(), |i, c| {
        let k = kept[c];
        spectrum.eigenvalues[k].sqrt() * spectrum.eigenvectors[(i, k)]
    }))
}

/// Points whose squared distances reproduce a normalized negative definite
/// kernel.
///
/// Builds the Gram array `K(i,j) = ½(N(i,b) + N(j,b) − N(i,j))` over
/// `i, j ≠ b`, factors it, and places the base point `b` at the origin.
pub fn schoenberg_embed(n: &SymmetricKernel, base: usize, tol: Option<f64>) -> Result<Embedding> {
    let tol = resolve_tol(n, tol)?;
    let coords = schoenberg_coords(n, base, tol)?;
    Embedding::new(coords, Provenance::Schoenberg { base, tol })
}

fn schoenberg_coords(n: &SymmetricKernel, base: usize, tol: f64) -> Result<Matrix> {
    let size = n.n();
    if base >= size {
        return Err(Error::invalid(format!("base index {base} out of range 0..{size}")));
    }
    if !is_normalized(n, DefinitenessKind::Negative) {
        return Err(Error::invalid("kernel is not normalized: diagonal must be 0"));
    }
    let report = check_negative_definite(n, Some(tol))?;
    if !report.passed() {
        return Err(Error::NotDefinite { kind: "negative", report: Box::new(report) });
    }
    if size == 1 {
        return Ok(Matrix::zeros(1, 1));
    }
    let others: Vec<usize> = (0..size).filter(|&i| i != base).collect();
    let gram = Matrix::from_fn(size - 1, size - 1, |a, b| {
        let (i, j) = (others[a], others[b]);
        0.5 * (n.get(i, base) + n.get(j, base) - n.get(i, j))
    });
    let gram = SymmetricKernel::new(gram)?;
    let factor = gram_factor(&gram, tol)?;
    let m = factor.cols();
    let mut coords = Matrix::zeros(size, m);
    for (a, &i) in others.iter().enumerate() {
        for c in 0..m {
            coords[(i, c)] = factor[(a, c)];
        }
    }
    Ok(coords)
}

/// Result of [`isometric_hilbert_test`].
#[derive(Debug, Clone)]
pub struct IsometricTest {
    pub embeddable: bool,
    /// Negative definiteness report for `d²`.
    pub report: DefinitenessReport,
    pub embedding: Option<Embedding>,
}

/// A finite metric embeds isometrically in Hilbert space iff `d²` is
/// negative definite; on success the realizing embedding is returned.
pub fn isometric_hilbert_test(m: &FiniteMetric, tol: Option<f64>) -> Result<IsometricTest> {
    let squared = metric_power_kernel(m, 2.0)?;
    let tol = resolve_tol(&squared, tol)?;
    let report = check_negative_definite(&squared, Some(tol))?;
    if !report.passed() {
        return Ok(IsometricTest { embeddable: false, report, embedding: None });
    }
    let embedding = schoenberg_embed(&squared, 0, Some(tol))?;
    Ok(IsometricTest { embeddable: true, report, embedding: Some(embedding) })
}

/// Euclidean embedding of an `ℓ_p` cloud, `0 < p ≤ 2`, with
/// `‖f_i − f_j‖ = (∑_k |Δ_k|^p)^{1/2}`.
///
/// For `p ≥ 1` image distances are `d_p^{p/2}`; for `p < 1` they are the
/// square root of the `L_p` metric; `p = 2` is an isometry.
pub fn snowflake_embed(cloud: &PointCloud, p: f64, tol: Option<f64>) -> Result<Embedding> {
    let kernel = lp_power_kernel(cloud, p)?;
    let tol = resolve_tol(&kernel, tol)?;
    let coords = schoenberg_coords(&kernel, 0, tol).map_err(|e| match e {
        Error::NotDefinite { report, .. } => Error::Internal(format!(
            "ℓ_p power kernel failed the negative definiteness test (λ_max = {:e})",
            report.extremal_eigenvalue
        )),
        other => other,
    })?;
    Embedding::new(coords, Provenance::Snowflake { p, base: 0, tol })
}

/// `max |‖f_i − f_j‖² − N(i,j)|` over all pairs.
pub fn max_squared_distance_error(e: &Embedding, n: &SymmetricKernel) -> f64 {
    induced_kernel(e).max_abs_diff(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{graph_shortest_path_metric, lp_distance_matrix, star_edges};

    fn kernel(rows: &[&[f64]]) -> SymmetricKernel {
        SymmetricKernel::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn gram_error(e: &Embedding, k: &SymmetricKernel) -> f64 {
        e.gram().as_slice().iter().zip(k.entries().as_slice()).fold(0.0_f64, |a, (x, y)| a.max((x - y).abs()))
    }

    #[test]
    fn moore_identity() {
        let k = kernel(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let e = moore_factorize(&k, None).unwrap();
        assert_eq!(e.dim(), 2);
        assert!(gram_error(&e, &k) < 1e-15);
    }

    #[test]
    fn moore_all_ones_is_rank_one() {
        let k = SymmetricKernel::ones(5).unwrap();
        let e = moore_factorize(&k, None).unwrap();
        assert_eq!(e.dim(), 1);
        for i in 0..5 {
            assert!((e.point(i)[0].abs() - 1.0).abs() < 1e-14);
            assert!(e.distance(0, i) < 1e-14);
        }
    }

    #[test]
    fn moore_two_by_two() {
        let k = kernel(&[&[1.0, 1.0], &[1.0, 4.0]]);
        let e = moore_factorize(&k, None).unwrap();
        assert!(gram_error(&e, &k) < 1e-14);
        assert!((e.distance(0, 1) - 3.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn moore_refuses_indefinite() {
        let k = kernel(&[&[0.0, 1.0], &[1.0, 0.0]]);
        match moore_factorize(&k, None) {
            Err(Error::NotDefinite { report, .. }) => assert!(report.quadratic_form_value.unwrap() < 0.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn moore_zero_kernel() {
        let e = moore_factorize(&SymmetricKernel::zeros(3).unwrap(), None).unwrap();
        assert_eq!(e.dim(), 1);
        assert!(e.coords().as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn schoenberg_examples() {
        let e = schoenberg_embed(&kernel(&[&[0.0, 1.0], &[1.0, 0.0]]), 0, None).unwrap();
        assert!((e.distance(0, 1) - 1.0).abs() < 1e-15);

        let z = schoenberg_embed(&SymmetricKernel::zeros(4).unwrap(), 0, None).unwrap();
        assert!(z.coords().as_slice().iter().all(|&v| v == 0.0));

        // line points {0, 1, 4} with N = |x − y|
        let n = kernel(&[&[0.0, 1.0, 4.0], &[1.0, 0.0, 3.0], &[4.0, 3.0, 0.0]]);
        let e = schoenberg_embed(&n, 0, None).unwrap();
        assert!(e.point(0).iter().all(|&v| v == 0.0));
        let g = e.gram();
        assert!((g[(1, 1)] - 1.0).abs() < 1e-14);
        assert!((g[(1, 2)] - 1.0).abs() < 1e-14);
        assert!((g[(2, 2)] - 4.0).abs() < 1e-14);
        assert!((e.distance(0, 1) - 1.0).abs() < 1e-14);
        assert!((e.distance(0, 2) - 2.0).abs() < 1e-14);
        assert!((e.distance(1, 2) - 3.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn schoenberg_input_errors() {
        let n = kernel(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!(matches!(schoenberg_embed(&n, 2, None), Err(Error::InvalidInput(_))));
        let unnormalized = kernel(&[&[1.0, 1.0], &[1.0, 0.0]]);
        assert!(matches!(schoenberg_embed(&unnormalized, 0, None), Err(Error::InvalidInput(_))));
        let star = metric_power_kernel(&graph_shortest_path_metric(4, &star_edges(4)).unwrap(), 2.0).unwrap();
        assert!(matches!(schoenberg_embed(&star, 0, None), Err(Error::NotDefinite { .. })));
    }

    #[test]
    fn isometric_test_cases() {
        let line = PointCloud::from_line(&[0.0, 1.0, 2.0]).unwrap();
        let m = lp_distance_matrix(&line, 2.0).unwrap();
        let r = isometric_hilbert_test(&m, None).unwrap();
        assert!(r.embeddable);
        let e = r.embedding.unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((e.distance(i, j) - m.get(i, j)).abs() < 1e-12);
            }
        }

        let star = graph_shortest_path_metric(4, &star_edges(4)).unwrap();
        let r = isometric_hilbert_test(&star, None).unwrap();
        assert!(!r.embeddable);
        assert!(r.embedding.is_none());
        let sq = metric_power_kernel(&star, 2.0).unwrap();
        assert_eq!(sq.quadratic_form(&[-3.0, 1.0, 1.0, 1.0]), 6.0);
    }

    #[test]
    fn planted_triangles_embed() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            // plant the triangle in the plane: a=(0,0), b=(c,0), third point from side lengths
            let pts: Vec<Vec<f64>> =
                (0..3).map(|_| vec![rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)]).collect();
            let cloud = PointCloud::from_rows(&pts).unwrap();
            let m = lp_distance_matrix(&cloud, 2.0).unwrap();
            let r = isometric_hilbert_test(&m, None).unwrap();
            assert!(r.embeddable);
            let e = r.embedding.unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    assert!((e.distance(i, j) - m.get(i, j)).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn snowflake_examples() {
        let line = PointCloud::from_line(&[0.0, 1.0, 4.0]).unwrap();
        let e = snowflake_embed(&line, 1.0, None).unwrap();
        assert!((e.distance(0, 1) - 1.0).abs() < 1e-14);
        assert!((e.distance(0, 2) - 2.0).abs() < 1e-14);
        assert!((e.distance(1, 2) - 3.0_f64.sqrt()).abs() < 1e-14);
        assert!(e.dim() <= e.n());
        assert!(snowflake_embed(&line, 2.5, None).is_err());
        assert!(snowflake_embed(&line, 0.0, None).is_err());
        assert!(matches!(e.provenance(), Provenance::Snowflake { p, .. } if p == 1.0));
    }

    #[test]
    fn single_point_embeddings() {
        let one = SymmetricKernel::zeros(1).unwrap();
        let e = schoenberg_embed(&one, 0, None).unwrap();
        assert_eq!((e.n(), e.dim()), (1, 1));
        let e = snowflake_embed(&PointCloud::from_line(&[3.0]).unwrap(), 1.5, None).unwrap();
        assert_eq!(e.n(), 1);
    }
}
