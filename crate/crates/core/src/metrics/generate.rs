use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::PointCloud;
use crate::numerics::Matrix;
use crate::{Error, Result};

/// Coordinate distribution for [`random_point_cloud`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CloudDistribution {
    /// Independent uniform coordinates in `[low, high)`.
    UniformBox { low: f64, high: f64 },
    /// Independent normal coordinates.
    Gaussian { mean: f64, std_dev: f64 },
}

impl Default for CloudDistribution {
    fn default() -> Self {
        CloudDistribution::UniformBox { low: 0.0, high: 1.0 }
    }
}

/// Seeded random cloud of `n` points in dimension `dim`.
///
/// The generator is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
/// whose stream is fixed by the seed on every platform. Coordinates are
/// drawn row by row. Uniform coordinates are `low + (high − low)·u` with
/// `u` the generator's standard `[0, 1)` double; normal coordinates are
/// `mean + std_dev·z` with `z` from `rand_distr::StandardNormal`.
pub fn random_point_cloud(n: usize, dim: usize, seed: u64, dist: CloudDistribution) -> Result<PointCloud> {
    if n == 0 || dim == 0 {
        return Err(Error::invalid(format!("cloud needs n >= 1 and dim >= 1, got n={n}, dim={dim}")));
    }
    match dist {
        CloudDistribution::UniformBox { low, high } if !(low < high) || !low.is_finite() || !high.is_finite() => {
            return Err(Error::invalid(format!("uniform box needs finite low < high, got [{low}, {high})")));
        }
        CloudDistribution::Gaussian { mean, std_dev }
            if !(std_dev >= 0.0) || !mean.is_finite() || !std_dev.is_finite() =>
        {
            return Err(Error::invalid(format!("gaussian needs finite mean and std_dev >= 0, got {mean}, {std_dev}")));
        }
        _ => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = Vec::with_capacity(n * dim);
    for _ in 0..n * dim {
        let v = match dist {
            CloudDistribution::UniformBox { low, high } => {
                let u: f64 = rng.random();
                let v = low + (high - low) * u;
                // low + (high − low)·u can round up to high
                if v >= high {
                    high - (high - low) * f64::EPSILON
                } else {
                    v
                }
            }
            CloudDistribution::Gaussian { mean, std_dev } => {
                let z: f64 = rng.sample(StandardNormal);
                mean + std_dev * z
            }
        };
        data.push(v);
    }
    PointCloud::new(Matrix::from_vec(n, dim, data))
}
