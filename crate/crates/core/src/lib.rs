//! Kernel-theoretic tools for coarse embeddings of finite metric spaces into
//! Hilbert space.
//!
//! The crate works entirely on finite data:
//!
//! * [`numerics`]: a deterministic cyclic Jacobi eigensolver, the centering
//!   projector and log-grid trapezoid quadrature.
//! * [`kernels`]: symmetric kernels, positive/negative definiteness verdicts
//!   with witness coefficient vectors, and the kernel transforms
//!   (`e^{-tN}`, `N^α`, zero extension, the kernel induced by a map).
//! * [`metrics`]: finite metrics, `ℓ_p` point clouds, graph metrics and
//!   seeded instance generators.
//! * [`embed`]: Gram (Moore) factorization, the Schoenberg construction of a
//!   Euclidean configuration from a negative definite kernel, the isometric
//!   Hilbert test and the snowflake embedding of `ℓ_p` clouds.
//! * [`coarse`]: monotone bound functions, empirical compression/expansion
//!   moduli and bound verification for single maps and families of maps.
//!
//! Data-parallel loops (pairwise distance fills, BFS sweeps, pair
//! enumeration, batched verdicts) run on rayon when the `parallel` feature is
//! enabled and fall back to plain iterators otherwise. See [`exec`].

// `!(x >= 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coarse;
pub mod embed;
pub mod error;
pub mod exec;
pub mod kernels;
pub mod metrics;
pub mod numerics;

pub use error::{Error, Result};
pub use exec::Execution;
