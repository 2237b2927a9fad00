//! Linear stability of regular n-gon relative equilibria of the (1+n)-body
//! problem.
//!
//! One dominant mass sits at the origin and `n` infinitesimal bodies ride the
//! unit circle at angles `ϑ_i` with mass weights `μ_i`. Relative equilibria are
//! critical points of Hall's potential
//!
//! ```text
//! V = Σ_{i<k} μ_i μ_k (1/r_ki + r_ki²/2),   r_ki = 2 sin(|ϑ_k − ϑ_i| / 2)
//! ```
//!
//! and an equilibrium is linearly stable exactly when it is a local minimum of
//! `V` modulo the global rotation. For the regular polygon the Hessian of `V`
//! is circulant (equal masses) or 2×2 block circulant (two alternating masses),
//! so its spectrum reduces to discrete Fourier sums and one quadratic per
//! Fourier index.
//!
//! Module map:
//!
//! * [`special`]: the scalar kernels `F(φ)` and `f(φ) = F'(φ)`.
//! * [`circulant`]: circulant and block-circulant spectra.
//! * [`equilibrium`]: the antisymmetric force matrix, its rank and the
//!   admissible mass families.
//! * [`stability`]: potential, gradient, Hessian, mode coefficients,
//!   classification and mass-ratio intervals.
//! * [`oracle`]: brute-force checks: Jacobi eigenvalues, finite differences,
//!   bisection.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod circulant;
pub mod equilibrium;
mod error;
pub mod matrix;
pub mod oracle;
pub mod special;
pub mod stability;

pub use error::{Error, Result};
pub use matrix::SquareMatrix;
