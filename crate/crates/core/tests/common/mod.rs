#![allow(dead_code)]

use coarse_embed::kernels::SymmetricKernel;
use coarse_embed::metrics::{lp_power_kernel, random_point_cloud, CloudDistribution, PointCloud};
use coarse_embed::numerics::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cloud(rng: &mut ChaCha8Rng, max_n: usize, max_dim: usize) -> PointCloud {
    let n = rng.random_range(1..=max_n);
    let dim = rng.random_range(1..=max_dim);
    let dist = if rng.random_bool(0.5) {
        CloudDistribution::UniformBox { low: -1.0, high: 1.0 }
    } else {
        CloudDistribution::Gaussian { mean: 0.0, std_dev: 2.0 }
    };
    random_point_cloud(n, dim, rng.random(), dist).unwrap()
}

/// Squared Euclidean distances of a random cloud: normalized and negative
/// definite, often rank deficient.
pub fn squared_euclidean_kernel(rng: &mut ChaCha8Rng, max_n: usize, max_dim: usize) -> SymmetricKernel {
    lp_power_kernel(&cloud(rng, max_n, max_dim), 2.0).unwrap()
}

/// Normalized negative definite kernels of several kinds.
pub fn negative_definite_kernel(rng: &mut ChaCha8Rng, max_n: usize) -> SymmetricKernel {
    let c = cloud(rng, max_n, 6);
    let p = [0.5, 1.0, 1.5, 2.0][rng.random_range(0..4)];
    lp_power_kernel(&c, p).unwrap()
}

/// Gram array of a random cloud: positive semidefinite.
pub fn gram_kernel(rng: &mut ChaCha8Rng, max_n: usize, max_dim: usize) -> SymmetricKernel {
    let c = cloud(rng, max_n, max_dim);
    let x = c.coords();
    SymmetricKernel::new(x.matmul(&x.transpose())).unwrap()
}

/// Symmetric array with zero diagonal and uniform off-diagonal entries in
/// `[0, 1)`: usually not negative definite.
pub fn random_dissimilarity(rng: &mut ChaCha8Rng, n: usize) -> SymmetricKernel {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v: f64 = rng.random();
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    SymmetricKernel::new(m).unwrap()
}

pub fn max_rel_diff(a: &SymmetricKernel, b: &SymmetricKernel) -> f64 {
    a.max_abs_diff(b) / a.scale().max(b.scale())
}
