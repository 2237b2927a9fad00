//! Hall's potential, its derivatives, and linear stability of the regular
//! polygon.
//!
//! The Hessian has off-diagonal entries `−μ_iμ_l f(ϑ_l − ϑ_i)` and zero row
//! sums. With two alternating masses on the regular `2j`-gon it splits, per
//! Fourier index `l`, into
//!
//! ```text
//! α_l = μ₁² g₁(j,l) + μ₁μ₂ g₂(j)
//! β_l = μ₂² g₁(j,l) + μ₁μ₂ g₂(j)
//! |γ_l|² = (μ₁μ₂ g₃(j,l))²
//! ```
//!
//! where
//!
//! ```text
//! g₁(j,l) = Σ_{k=1}^{j−1} f(2kπ/j)(1 − cos(2(l−1)kπ/j))
//! g₂(j)   = Σ_{k=1}^{j}   f((2k−1)π/j)
//! g₃(j,l) = Σ_{k=1}^{j}   f((2k−1)π/j) cos((l−1)(2k−1)π/j)
//! ```
//!
//! An equilibrium is linearly stable exactly when the Hessian is positive
//! semidefinite with the rotational direction `(1, …, 1)` as its only null
//! vector.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use libm::{cos, fabs, log, sin, sqrt};

use crate::circulant::{BlockCirculant, BlockMode, BlockSpectrum, Circulant};
use crate::equilibrium::{residual, turn, RingConfiguration};
use crate::special::stiffness_at;
use crate::{Error, Result, SquareMatrix};

/// `Σ_{i<k} μ_iμ_k (1/r_ki + r_ki²/2)`.
pub fn hall_potential(config: &RingConfiguration) -> f64 {
    let m = config.masses();
    let mut v = 0.0;
    for i in 0..config.len() {
        for k in i + 1..config.len() {
            let r = config.chord(i, k);
            v += m[i] * m[k] * (1.0 / r + 0.5 * r * r);
        }
    }
    v
}

/// `∂V/∂ϑ_i = −μ_i Σ_{k≠i} μ_k F(ϑ_k − ϑ_i)`.
pub fn hall_gradient(config: &RingConfiguration) -> Vec<f64> {
    residual(config).into_iter().zip(config.masses()).map(|(r, m)| -m * r).collect()
}

/// Hessian of Hall's potential at a configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct HessianAtRing {
    pub masses: Vec<f64>,
    pub matrix: SquareMatrix,
    /// Block-circulant form, present for the regular `2j`-gon with
    /// alternating masses. Odd vertices (1-based) form the first block.
    pub block: Option<BlockCirculant>,
}

impl HessianAtRing {
    /// `‖H·(1,…,1)‖₂`, zero up to roundoff by rotational invariance.
    pub fn rotational_defect(&self) -> f64 {
        let ones = alloc::vec![1.0; self.matrix.order()];
        sqrt(self.matrix.mul_vec(&ones).iter().map(|x| x * x).sum())
    }
}

pub fn hessian(config: &RingConfiguration) -> HessianAtRing {
    let (a, m) = (config.angles(), config.masses());
    let n = config.len();
    let mut h = SquareMatrix::from_fn(n, |i, l| {
        if i == l {
            0.0
        } else {
            -m[i] * m[l] * stiffness_at(a[l] - a[i])
        }
    });
    for i in 0..n {
        h[(i, i)] = -(0..n).filter(|&l| l != i).map(|l| h[(i, l)]).sum::<f64>();
    }
    let alternating = n % 2 == 0 && (0..n).all(|i| m[i] == m[i % 2]);
    let block = if alternating && config.is_regular(1e-12) {
        let j = n / 2;
        let a_row = (0..j).map(|k| h[(0, 2 * k)]).collect();
        let b_row = (0..j).map(|k| h[(1, 2 * k + 1)]).collect();
        let c_row = (0..j).map(|k| h[(0, 2 * k + 1)]).collect();
        Circulant::new(a_row)
            .and_then(|a| BlockCirculant::new(a, Circulant::new(b_row)?, Circulant::new(c_row)?))
            .ok()
    } else {
        None
    };
    HessianAtRing { masses: m.to_vec(), matrix: h, block }
}

fn check_index(j: usize, l: usize) {
    assert!(j >= 1, "order must be positive");
    assert!((1..=j).contains(&l), "index {l} outside 1..={j}");
}

/// `g₁(j, l)`: Fourier sum of the like-mass couplings. Also the `l`-th
/// eigenvalue of the equal-mass `j`-gon Hessian.
///
/// # Panics
/// Unless `1 ≤ l ≤ j`.
pub fn like_stiffness(j: usize, l: usize) -> f64 {
    check_index(j, l);
    (1..j).map(|k| stiffness_at(turn(k, j)) * (1.0 - cos(turn((l - 1) * k, j)))).sum()
}

/// `(2k−1)π/j` for `k = 1..j`.
fn odd_angle(k: usize, j: usize) -> f64 {
    PI * (2 * k - 1) as f64 / j as f64
}

/// `g₂(j)`: total coupling of one body to the other species.
///
/// # Panics
/// If `j == 0`.
pub fn cross_stiffness(j: usize) -> f64 {
    assert!(j >= 1, "order must be positive");
    (1..=j).map(|k| stiffness_at(odd_angle(k, j))).sum()
}

/// `g₃(j, l)`, signed; `|γ_l| = μ₁μ₂|g₃(j, l)|`.
///
/// # Panics
/// Unless `1 ≤ l ≤ j`.
pub fn cross_coupling(j: usize, l: usize) -> f64 {
    check_index(j, l);
    (1..=j)
        .map(|k| stiffness_at(odd_angle(k, j)) * cos(turn((l - 1) * (2 * k - 1), 2 * j)))
        .sum()
}

/// `χ(j, l) = (α_lβ_l − |γ_l|²)/(μ₁μ₂)`.
pub fn mode_determinant(j: usize, l: usize, mu1: f64, mu2: f64) -> f64 {
    let (g1, g2, g3) = (like_stiffness(j, l), cross_stiffness(j), cross_coupling(j, l));
    mu1 * mu2 * (g1 * g1 + g2 * g2 - g3 * g3) + (mu1 * mu1 + mu2 * mu2) * g1 * g2
}

/// `(α_l, β_l, |γ_l|²)` and the two Hessian eigenvalues of Fourier index `l`
/// for the alternating `2j`-gon.
pub fn mode_coefficients(j: usize, l: usize, mu1: f64, mu2: f64) -> BlockMode {
    let (g1, g2, g3) = (like_stiffness(j, l), cross_stiffness(j), cross_coupling(j, l));
    let coupling = mu1 * mu2 * g3;
    BlockMode::new(mu1 * mu1 * g1 + mu1 * mu2 * g2, mu2 * mu2 * g1 + mu1 * mu2 * g2, coupling * coupling)
}

/// Masses `(μ₁, μ₂)` for a ratio `μ₁/μ₂`, normalized to `μ₁μ₂ = 1` so that
/// `ρ` and `1/ρ` are the same ring with the species swapped.
pub fn masses_for_ratio(ratio: f64) -> (f64, f64) {
    let root = sqrt(ratio);
    (root, 1.0 / root)
}

/// Block spectrum of the alternating `2j`-gon at mass ratio `ratio`.
pub fn alternating_spectrum(j: usize, ratio: f64) -> BlockSpectrum {
    let (mu1, mu2) = masses_for_ratio(ratio);
    BlockSpectrum::from_modes((1..=j).map(|l| mode_coefficients(j, l, mu1, mu2)).collect())
}

/// Hessian eigenvalues of the equal-mass regular `n`-gon, in Fourier-index
/// order. Index 1 is the rotational zero.
///
/// # Panics
/// If `n < 3`.
pub fn equal_mass_spectrum(n: usize) -> Vec<f64> {
    assert!(n >= 3, "regular ring needs n >= 3");
    (1..=n).map(|l| like_stiffness(n, l)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZeroTol {
    /// Multiple of the largest `|eigenvalue|`.
    Relative(f64),
    Absolute(f64),
}

impl Default for ZeroTol {
    fn default() -> Self {
        ZeroTol::Relative(1e-9)
    }
}

impl ZeroTol {
    pub fn resolve(self, eigenvalues: &[f64]) -> f64 {
        match self {
            ZeroTol::Absolute(t) => t,
            ZeroTol::Relative(r) => r * eigenvalues.iter().fold(0.0f64, |m, x| m.max(fabs(*x))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// One zero eigenvalue (rotation), all others positive.
    Stable,
    /// Some eigenvalue is negative.
    Unstable,
    /// No negative eigenvalue but more than one zero.
    Degenerate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Stable => "stable",
            Verdict::Unstable => "unstable",
            Verdict::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    pub n: usize,
    /// `μ₁/μ₂`.
    pub ratio: f64,
    pub masses: (f64, f64),
    pub verdict: Verdict,
    /// Sorted ascending.
    pub eigenvalues: Vec<f64>,
    /// Absolute tolerance the verdict was taken at.
    pub zero_tol: f64,
    pub zero_mode_count: usize,
    pub negative_count: usize,
    /// Fourier indices `l` (1-based) where `α_l + β_l ≥ 0` or
    /// `α_lβ_l ≥ |γ_l|²` fails. For odd rings, the indices with a negative
    /// eigenvalue.
    pub failed_conditions: Vec<usize>,
}

/// Linear stability of the regular `n`-gon with masses alternating in ratio
/// `ratio = μ₁/μ₂` (equal masses when `ratio == 1`).
///
/// Odd `n` only admits equal masses. The verdict is read from the sign of
/// every Hessian eigenvalue at tolerance `zero_tol`; the per-index conditions
/// are recorded alongside.
pub fn classify(n: usize, ratio: f64, zero_tol: ZeroTol) -> Result<StabilityReport> {
    if n < 3 {
        return Err(Error::InvalidInput("regular ring needs n >= 3"));
    }
    if !(ratio > 0.0 && ratio.is_finite()) {
        return Err(Error::Domain { what: "mass ratio", value: ratio });
    }
    if n % 2 == 1 && ratio != 1.0 {
        return Err(Error::OddRingRatio { n, ratio });
    }

    let masses = masses_for_ratio(ratio);
    let (mut eigenvalues, modes) = if n % 2 == 1 {
        (equal_mass_spectrum(n), None)
    } else {
        let spectrum = alternating_spectrum(n / 2, ratio);
        (spectrum.eigenvalues(), Some(spectrum))
    };
    let tol = zero_tol.resolve(&eigenvalues);
    if !(tol >= 0.0) {
        return Err(Error::Domain { what: "zero tolerance", value: tol });
    }

    let failed_conditions = match &modes {
        None => (1..=n).filter(|&l| eigenvalues[l - 1] < -tol).collect(),
        Some(spectrum) => spectrum
            .modes()
            .iter()
            .enumerate()
            .filter(|(_, m)| {
                m.alpha + m.beta < -tol
                    || m.alpha * m.beta - m.gamma_sq < -tol * (fabs(m.alpha) + fabs(m.beta))
            })
            .map(|(i, _)| i + 1)
            .collect(),
    };

    eigenvalues.sort_by(f64::total_cmp);
    let zero_mode_count = eigenvalues.iter().filter(|x| fabs(**x) <= tol).count();
    let negative_count = eigenvalues.iter().filter(|x| **x < -tol).count();
    let verdict = if negative_count > 0 {
        Verdict::Unstable
    } else if zero_mode_count == 0 {
        return Err(Error::MissingZeroMode { zero_tol: tol });
    } else if zero_mode_count == 1 {
        Verdict::Stable
    } else {
        Verdict::Degenerate
    };

    Ok(StabilityReport {
        n,
        ratio,
        masses,
        verdict,
        eigenvalues,
        zero_tol: tol,
        zero_mode_count,
        negative_count,
        failed_conditions,
    })
}

/// Range of stable mass ratios.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RatioRange {
    Empty,
    /// Open interval `(lo, hi)`.
    Bounded { lo: f64, hi: f64 },
    /// Every positive ratio.
    All,
}

impl RatioRange {
    pub fn contains(&self, ratio: f64) -> bool {
        match *self {
            RatioRange::Empty => false,
            RatioRange::Bounded { lo, hi } => lo < ratio && ratio < hi,
            RatioRange::All => ratio > 0.0,
        }
    }
}

/// Mass ratios `μ₁/μ₂` for which the alternating `2j`-gon is linearly
/// stable, with the mode-two quantities that determine them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioInterval {
    pub j: usize,
    pub range: RatioRange,
    /// `g₁(j, 2)`.
    pub like_stiffness: f64,
    /// `g₂(j)`.
    pub cross_stiffness: f64,
    /// `g₃(j, 2)`.
    pub cross_coupling: f64,
    /// `g₁² + g₂² − g₃²` at index 2.
    pub h5: f64,
    /// Discriminant `h5² − 4(g₁g₂)²` of `χ(j, 2) = 0` in the ratio.
    pub h4: f64,
}

/// Stable ratio range of the alternating `2j`-gon, `j ≥ 2`.
///
/// With `ρ = μ₁/μ₂`, `χ(j,2)·ρ/μ₁μ₂ = g₁g₂ρ² + h5·ρ + g₁g₂`, so for
/// `g₁(j,2) < 0` the determinant condition holds between the roots
/// `(−h5 ± √h4)/(2g₁g₂)`, whose product is 1. The trace condition
/// `g₁ρ² + 2g₂ρ + g₁ > 0` is intersected in as well; it is what rules out
/// `j = 2`. Higher indices only increase `χ`.
pub fn stability_interval(j: usize) -> Result<RatioInterval> {
    if j < 2 {
        return Err(Error::InvalidInput("alternating ring needs j >= 2"));
    }
    let g1 = like_stiffness(j, 2);
    let g2 = cross_stiffness(j);
    let g3 = cross_coupling(j, 2);
    let h5 = g1 * g1 + g2 * g2 - g3 * g3;
    let h4 = h5 * h5 - 4.0 * (g1 * g2) * (g1 * g2);
    let mut out = RatioInterval {
        j,
        range: RatioRange::Empty,
        like_stiffness: g1,
        cross_stiffness: g2,
        cross_coupling: g3,
        h5,
        h4,
    };

    if g1 >= 0.0 {
        out.range = RatioRange::All;
        return Ok(out);
    }
    if h4 <= 0.0 {
        return Ok(out);
    }
    let lead = 2.0 * g1 * g2;
    let (det_lo, det_hi) = ((-h5 + sqrt(h4)) / lead, (-h5 - sqrt(h4)) / lead);
    let trace_disc = g2 * g2 - g1 * g1;
    if trace_disc <= 0.0 {
        return Ok(out);
    }
    let (trace_lo, trace_hi) = ((-g2 + sqrt(trace_disc)) / g1, (-g2 - sqrt(trace_disc)) / g1);
    let (lo, hi) = (det_lo.max(trace_lo), det_hi.min(trace_hi));
    if lo < hi {
        out.range = RatioRange::Bounded { lo, hi };
    }
    Ok(out)
}

/// Auxiliary functions of the `g₁(j, 2)` and `g₂ − g₃` monotonicity bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StiffnessBoundTerms {
    /// `(ln cot x − x·cot(x)/2 − π/2)/(2x)`.
    pub like_stiffness_bound: f64,
    /// `ln cot x − x/(2 sin x) − π/2`.
    pub like_stiffness_sign: f64,
    /// See [`cross_gap_bound`].
    pub cross_gap_bound: f64,
}

/// Evaluates all three bound terms at `x ∈ (0, π/2)`.
pub fn stiffness_bound_terms(x: f64) -> Result<StiffnessBoundTerms> {
    if !(x > 0.0 && x < FRAC_PI_2) {
        return Err(Error::Domain { what: "bound argument", value: x });
    }
    let (s, c) = (sin(x), cos(x));
    let log_cot = log(c / s);
    Ok(StiffnessBoundTerms {
        like_stiffness_bound: (log_cot - x * c / (2.0 * s) - FRAC_PI_2) / (2.0 * x),
        like_stiffness_sign: log_cot - x / (2.0 * s) - FRAC_PI_2,
        cross_gap_bound: cross_gap_bound(x)?,
    })
}

/// `(ln cot(x/2) − x/(2 sin x) − π/2)/(2x)` on `(0, π)`.
pub fn cross_gap_bound(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < PI) {
        return Err(Error::Domain { what: "bound argument", value: x });
    }
    Ok((log(cos(0.5 * x) / sin(0.5 * x)) - x / (2.0 * sin(x)) - FRAC_PI_2) / (2.0 * x))
}
