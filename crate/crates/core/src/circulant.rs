//! Circulant and symmetric 2×2 block-circulant spectra.
//!
//! A circulant matrix is fixed by its first row `a_k`, and its eigenvalues
//! are the discrete Fourier sums
//!
//! ```text
//! α_l = Σ_k a_k · exp(−2πi (l−1)(k−1)/j),   l = 1..j
//! ```
//!
//! For `S = [[A, C], [Cᵀ, B]]` with circulant blocks, every Fourier index `l`
//! contributes the two roots of `λ² − (α_l+β_l)λ + α_lβ_l − |γ_l|² = 0`.
//! Sums run with `k` ascending so results are reproducible.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use libm::{cos, sin, sqrt};

use crate::{Error, Result, SquareMatrix};

/// Complex number as an explicit `(re, im)` pair.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn mul(self, rhs: Self) -> Self {
        Self::new(self.re * rhs.re - self.im * rhs.im, self.re * rhs.im + self.im * rhs.re)
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }
}

/// `Σ_k row[k] · exp(−2πi·index·k/len)`, `k` ascending.
fn fourier_sum(row: &[f64], index: usize) -> Complex {
    let j = row.len();
    let mut acc = Complex::default();
    for (k, &a) in row.iter().enumerate() {
        // reduce the phase exactly in integers before going to floating point
        let phase = TAU * ((index * k) % j) as f64 / j as f64;
        acc.re += a * cos(phase);
        acc.im -= a * sin(phase);
    }
    acc
}

/// A `j × j` circulant matrix, stored as its first row.
#[derive(Clone, Debug, PartialEq)]
pub struct Circulant {
    first_row: Vec<f64>,
}

impl Circulant {
    pub fn new(first_row: Vec<f64>) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::InvalidInput("circulant matrix needs at least one entry"));
        }
        Ok(Self { first_row })
    }

    pub fn zeros(order: usize) -> Result<Self> {
        Self::new(alloc::vec![0.0; order])
    }

    pub fn order(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    /// Entry `(i, k)`, zero-based: `a_{(k − i) mod j}`.
    pub fn entry(&self, i: usize, k: usize) -> f64 {
        let j = self.order();
        self.first_row[(k + j - i % j) % j]
    }

    /// Symmetric iff the first row is palindromic after its leading entry,
    /// here to within `1e-12·max|row|` so rows sampled from even kernels at
    /// `2kπ/j` and `2π − 2kπ/j` qualify.
    pub fn is_symmetric(&self) -> bool {
        let j = self.order();
        let scale = self.first_row.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        (1..j).all(|k| (self.first_row[k] - self.first_row[j - k]).abs() <= 1e-12 * scale)
    }

    pub fn transpose(&self) -> Self {
        let j = self.order();
        Self { first_row: (0..j).map(|k| self.first_row[(j - k) % j]).collect() }
    }

    /// All `j` eigenvalues, in Fourier-index order `l = 1..j`.
    pub fn eigenvalues(&self) -> Vec<Complex> {
        (0..self.order()).map(|l| fourier_sum(&self.first_row, l)).collect()
    }

    /// Real spectrum of a symmetric circulant, in Fourier-index order.
    ///
    /// Imaginary parts up to `1e-9·‖row‖₁` are roundoff and dropped; anything
    /// larger is reported as [`Error::ImaginaryResidue`].
    pub fn real_eigenvalues(&self) -> Result<Vec<f64>> {
        let limit = 1e-9 * self.first_row.iter().map(|a| a.abs()).sum::<f64>();
        self.eigenvalues()
            .into_iter()
            .enumerate()
            .map(|(index, z)| {
                if z.im.abs() > limit {
                    Err(Error::ImaginaryResidue { index, residue: z.im.abs(), limit })
                } else {
                    Ok(z.re)
                }
            })
            .collect()
    }

    pub fn to_dense(&self) -> SquareMatrix {
        SquareMatrix::from_fn(self.order(), |i, k| self.entry(i, k))
    }
}

/// `S = [[A, C], [Cᵀ, B]]` with `A`, `B` symmetric circulant and `C`
/// circulant, all of order `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockCirculant {
    a: Circulant,
    b: Circulant,
    c: Circulant,
}

impl BlockCirculant {
    pub fn new(a: Circulant, b: Circulant, c: Circulant) -> Result<Self> {
        if a.order() != b.order() || a.order() != c.order() {
            return Err(Error::InvalidInput("block orders differ"));
        }
        if !a.is_symmetric() || !b.is_symmetric() {
            return Err(Error::InvalidInput("diagonal blocks must be symmetric circulants"));
        }
        Ok(Self { a, b, c })
    }

    /// Block order `j`; the assembled matrix is `2j × 2j`.
    pub fn order(&self) -> usize {
        self.a.order()
    }

    pub fn a(&self) -> &Circulant {
        &self.a
    }

    pub fn b(&self) -> &Circulant {
        &self.b
    }

    pub fn c(&self) -> &Circulant {
        &self.c
    }

    pub fn spectrum(&self) -> Result<BlockSpectrum> {
        let alpha = self.a.real_eigenvalues()?;
        let beta = self.b.real_eigenvalues()?;
        let modes = (0..self.order())
            .map(|l| {
                let gamma = fourier_sum(self.c.first_row(), l);
                let gamma_bar = fourier_sum(&self.c.transpose().first_row, l);
                BlockMode::new(alpha[l], beta[l], gamma.mul(gamma_bar).re)
            })
            .collect();
        Ok(BlockSpectrum { modes })
    }

    pub fn to_dense(&self) -> SquareMatrix {
        let j = self.order();
        SquareMatrix::from_fn(2 * j, |i, k| match (i < j, k < j) {
            (true, true) => self.a.entry(i, k),
            (true, false) => self.c.entry(i, k - j),
            (false, true) => self.c.entry(k, i - j),
            (false, false) => self.b.entry(i - j, k - j),
        })
    }
}

/// Roots of `λ² − (α+β)λ + αβ − γ_sq = 0`, ascending.
///
/// Written as `(α+β)/2 ± sqrt(((α−β)/2)² + γ_sq)`, which is real whenever
/// `γ_sq ≥ 0`.
pub fn block_roots(alpha: f64, beta: f64, gamma_sq: f64) -> [f64; 2] {
    let mid = 0.5 * (alpha + beta);
    let half_gap = 0.5 * (alpha - beta);
    let radius = sqrt(half_gap * half_gap + gamma_sq.max(0.0));
    [mid - radius, mid + radius]
}

/// One Fourier index of a block-circulant spectrum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockMode {
    pub alpha: f64,
    pub beta: f64,
    /// `γ_l · conj(γ_l)`.
    pub gamma_sq: f64,
    pub roots: [f64; 2],
}

impl BlockMode {
    pub fn new(alpha: f64, beta: f64, gamma_sq: f64) -> Self {
        Self { alpha, beta, gamma_sq, roots: block_roots(alpha, beta, gamma_sq) }
    }

    /// `λ² − (α+β)λ + αβ − γ_sq` at `lambda`.
    pub fn characteristic(&self, lambda: f64) -> f64 {
        lambda * lambda - (self.alpha + self.beta) * lambda + self.alpha * self.beta - self.gamma_sq
    }
}

/// Per-index modes of a block-circulant matrix, `l = 1..j` in order.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockSpectrum {
    modes: Vec<BlockMode>,
}

impl BlockSpectrum {
    pub fn from_modes(modes: Vec<BlockMode>) -> Self {
        Self { modes }
    }

    pub fn modes(&self) -> &[BlockMode] {
        &self.modes
    }

    /// All `2j` eigenvalues, sorted ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.modes.iter().flat_map(|m| m.roots).collect();
        out.sort_by(f64::total_cmp);
        out
    }
}
