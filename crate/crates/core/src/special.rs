//! The two scalar kernels behind the equilibrium and Hessian formulas.
//!
//! With `s = sin(φ/2)`:
//!
//! ```text
//! F(φ) = sin φ · (1 − 1/(8|s|³))
//! f(φ) = F'(φ) = (2/s² − 1)/(8|s|) + cos φ
//! ```
//!
//! `F` is the derivative of the pair term `1/r + r²/2` with respect to the
//! angular separation, so `f` is its second derivative. Both are singular at
//! `φ = 2kπ`.

use libm::{cos, fabs, sin};

use crate::{Error, Result};

/// Smallest admissible `|sin(φ/2)|`. Every call site in this crate uses
/// angles `2kπ/n` or `(2k−1)π/j` with moderate `n`, far above this.
pub const SINGULARITY_TOL: f64 = 1e-9;

#[inline]
fn half_sine(phi: f64) -> Result<f64> {
    let s = sin(0.5 * phi);
    if !(fabs(s) >= SINGULARITY_TOL) {
        return Err(Error::Singular { angle: phi });
    }
    Ok(s)
}

/// `F(φ)`: odd, 2π-periodic tangential force kernel.
pub fn force_kernel(phi: f64) -> Result<f64> {
    half_sine(phi).map(|s| force_from_half_sine(phi, s))
}

/// `f(φ) = F'(φ)`: even, 2π-periodic, bounded below by `f(π) = −7/8`.
pub fn stiffness_kernel(phi: f64) -> Result<f64> {
    half_sine(phi).map(|s| stiffness_from_half_sine(phi, s))
}

#[inline]
fn force_from_half_sine(phi: f64, s: f64) -> f64 {
    // |s|³ as |s|·s²
    sin(phi) * (1.0 - 1.0 / (8.0 * fabs(s) * s * s))
}

#[inline]
fn stiffness_from_half_sine(phi: f64, s: f64) -> f64 {
    (2.0 / (s * s) - 1.0) / (8.0 * fabs(s)) + cos(phi)
}

/// `F` at an angle the caller knows is nonsingular (regular polygon angles).
#[inline]
pub(crate) fn force_at(phi: f64) -> f64 {
    force_from_half_sine(phi, sin(0.5 * phi))
}

/// `f` at an angle the caller knows is nonsingular.
#[inline]
pub(crate) fn stiffness_at(phi: f64) -> f64 {
    stiffness_from_half_sine(phi, sin(0.5 * phi))
}

/// Central second difference of `f`, `(f(φ−h) − 2f(φ) + f(φ+h))/h²`.
///
/// Test helper for the convexity of `f` on `(0, 2π)`; not a production
/// derivative. Requires `φ ∈ (2h, 2π − 2h)`.
pub fn stiffness_second_difference(phi: f64, step: f64) -> Result<f64> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Domain { what: "finite-difference step", value: step });
    }
    if !(phi - 2.0 * step > 0.0 && phi + 2.0 * step < core::f64::consts::TAU) {
        return Err(Error::Domain { what: "stencil centre", value: phi });
    }
    let lo = stiffness_kernel(phi - step)?;
    let mid = stiffness_kernel(phi)?;
    let hi = stiffness_kernel(phi + step)?;
    Ok((lo - 2.0 * mid + hi) / (step * step))
}
