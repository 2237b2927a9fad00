//! Ring configurations, the equilibrium conditions and the admissible masses
//! of the regular polygon.
//!
//! A configuration is a relative equilibrium when, for every body `i`,
//!
//! ```text
//! Σ_{k≠i} μ_k F(ϑ_k − ϑ_i) = 0.
//! ```
//!
//! Read as `M_n · μ = 0` with `M_n[i][k] = F(ϑ_k − ϑ_i)`, the admissible mass
//! vectors form the null space of the antisymmetric matrix `M_n`. On the
//! regular polygon `M_n` is circulant and its `l`-th eigenvalue is
//! `i · f₁(n, l)` with
//!
//! ```text
//! f₁(n,l) = ½ Σ_{k=1}^{n−1} [cos(2lkπ/n) − cos((4−2l)kπ/n)] + f₂(n,l)
//! f₂(n,l) = ¼ Σ_{k=1}^{n−1} cos(kπ/n)/sin²(kπ/n) · sin(2(l−1)kπ/n)
//! ```
//!
//! so the rank of `M_n` counts the nonzero `f₁(n, l)`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};

use libm::{cos, fabs, log, sin};

use crate::special::{force_at, SINGULARITY_TOL};
use crate::{Error, Result, SquareMatrix};

/// Bodies on the unit circle: angular positions and positive mass weights.
#[derive(Clone, Debug, PartialEq)]
pub struct RingConfiguration {
    angles: Vec<f64>,
    masses: Vec<f64>,
}

/// Angle of vertex `i` (zero-based) of the regular `n`-gon, `2iπ/n`.
pub fn polygon_angle(n: usize, i: usize) -> f64 {
    TAU * i as f64 / n as f64
}

/// `2π·(numerator mod denominator)/denominator`, reduced in integers first.
#[inline]
pub(crate) fn turn(numerator: usize, denominator: usize) -> f64 {
    TAU * (numerator % denominator) as f64 / denominator as f64
}

impl RingConfiguration {
    /// Validates sizes, positivity of the masses and that no two bodies
    /// coincide modulo `2π`.
    pub fn new(angles: Vec<f64>, masses: Vec<f64>) -> Result<Self> {
        if angles.len() < 2 {
            return Err(Error::InvalidInput("a ring needs at least two bodies"));
        }
        if angles.len() != masses.len() {
            return Err(Error::InvalidInput("angles and masses differ in length"));
        }
        if let Some(&bad) = angles.iter().find(|a| !a.is_finite()) {
            return Err(Error::Domain { what: "angle", value: bad });
        }
        if let Some(&bad) = masses.iter().find(|m| !(**m > 0.0 && m.is_finite())) {
            return Err(Error::Domain { what: "mass", value: bad });
        }
        for i in 0..angles.len() {
            for k in i + 1..angles.len() {
                if fabs(sin(0.5 * (angles[k] - angles[i]))) < SINGULARITY_TOL {
                    return Err(Error::CoincidentBodies { first: i, second: k });
                }
            }
        }
        Ok(Self { angles, masses })
    }

    /// Regular `n`-gon with unit masses.
    pub fn regular(n: usize) -> Result<Self> {
        Self::regular_with_masses(alloc::vec![1.0; n])
    }

    /// Regular polygon with one vertex per mass, `ϑ_i = 2(i−1)π/n`.
    pub fn regular_with_masses(masses: Vec<f64>) -> Result<Self> {
        let n = masses.len();
        Self::new((0..n).map(|i| polygon_angle(n, i)).collect(), masses)
    }

    /// Regular `n`-gon, `n` even, with masses `μ₁, μ₂, μ₁, μ₂, …`.
    pub fn alternating(n: usize, mu1: f64, mu2: f64) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::InvalidInput("alternating masses need an even number of bodies"));
        }
        Self::regular_with_masses((0..n).map(|i| if i % 2 == 0 { mu1 } else { mu2 }).collect())
    }

    /// Same masses at new angles.
    pub fn with_angles(&self, angles: Vec<f64>) -> Result<Self> {
        Self::new(angles, self.masses.clone())
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// Chord length `2 sin(|ϑ_k − ϑ_i|/2)`.
    pub fn chord(&self, i: usize, k: usize) -> f64 {
        2.0 * fabs(sin(0.5 * (self.angles[k] - self.angles[i])))
    }

    /// Whether the angles are the regular polygon's, to `tol` radians.
    pub fn is_regular(&self, tol: f64) -> bool {
        let n = self.len();
        self.angles.iter().enumerate().all(|(i, a)| fabs(a - polygon_angle(n, i)) <= tol)
    }
}

/// The antisymmetric force matrix, `M[i][k] = F(ϑ_k − ϑ_i)`, zero diagonal.
pub fn force_matrix(config: &RingConfiguration) -> SquareMatrix {
    let a = config.angles();
    SquareMatrix::from_fn(config.len(), |i, k| if i == k { 0.0 } else { force_at(a[k] - a[i]) })
}

/// Equilibrium residual, `Σ_{k≠i} μ_k F(ϑ_k − ϑ_i)` for each body.
///
/// Equals `−(1/μ_i) ∂V/∂ϑ_i` for Hall's potential `V`.
pub fn residual(config: &RingConfiguration) -> Vec<f64> {
    let (a, m) = (config.angles(), config.masses());
    (0..config.len())
        .map(|i| (0..config.len()).filter(|&k| k != i).map(|k| m[k] * force_at(a[k] - a[i])).sum())
        .collect()
}

fn check_mode(n: usize, l: usize) {
    assert!(n >= 3, "regular ring needs n >= 3, got {n}");
    assert!((1..=n).contains(&l), "mode index {l} outside 1..={n}");
}

/// `f₂(n, l)`, the kernel part of [`force_mode_amplitude`].
///
/// # Panics
/// Unless `n ≥ 3` and `1 ≤ l ≤ n`.
pub fn force_mode_kernel_part(n: usize, l: usize) -> f64 {
    check_mode(n, l);
    let mut sum = 0.0;
    for k in 1..n {
        let x = PI * k as f64 / n as f64;
        let s = sin(x);
        sum += cos(x) / (s * s) * sin(turn((l - 1) * k, n));
    }
    0.25 * sum
}

/// `f₁(n, l)`: the `l`-th eigenvalue of the regular polygon's force matrix
/// is `i·f₁(n, l)`.
///
/// # Panics
/// Unless `n ≥ 3` and `1 ≤ l ≤ n`.
pub fn force_mode_amplitude(n: usize, l: usize) -> f64 {
    check_mode(n, l);
    let back = l.abs_diff(2);
    let cosine_part: f64 = (1..n).map(|k| cos(turn(l * k, n)) - cos(turn(back * k, n))).sum();
    0.5 * cosine_part + force_mode_kernel_part(n, l)
}

/// Default rank cut-off, `1e-8·n`.
pub fn default_rank_tol(n: usize) -> f64 {
    1e-8 * n as f64
}

/// Indices `l` (1-based) with `|f₁(n, l)| ≤ zero_tol`, after checking that no
/// amplitude falls within a decade of the cut-off.
fn null_modes(n: usize, zero_tol: f64) -> Result<Vec<usize>> {
    if n < 3 {
        return Err(Error::InvalidInput("regular ring needs n >= 3"));
    }
    if !(zero_tol > 0.0) {
        return Err(Error::Domain { what: "rank tolerance", value: zero_tol });
    }
    let mut zeros = Vec::new();
    for l in 1..=n {
        let value = fabs(force_mode_amplitude(n, l));
        if value > 0.1 * zero_tol && value < 10.0 * zero_tol {
            return Err(Error::AmbiguousRank { n, index: l, value, zero_tol });
        }
        if value <= zero_tol {
            zeros.push(l);
        }
    }
    Ok(zeros)
}

/// Rank of the regular `n`-gon's force matrix: the number of `l` with
/// `|f₁(n, l)| > zero_tol`.
///
/// Fails with [`Error::AmbiguousRank`] if some `|f₁|` lies in
/// `(zero_tol/10, 10·zero_tol)`.
pub fn force_matrix_rank(n: usize, zero_tol: f64) -> Result<usize> {
    null_modes(n, zero_tol).map(|z| n - z.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// How free mass parameters are laid out around the polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MassPattern {
    /// Every vertex carries the same mass.
    Uniform,
    /// Two masses alternate: `μ₁, μ₂, μ₁, μ₂, …`.
    Alternating,
}

/// Mass vectors for which the regular `n`-gon is a relative equilibrium.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MassFamily {
    pub n: usize,
    pub parity: Parity,
    pub parameter_count: usize,
    pub pattern: MassPattern,
}

impl MassFamily {
    /// Expands the free parameters into a full mass vector.
    pub fn masses(&self, params: &[f64]) -> Result<Vec<f64>> {
        if params.len() != self.parameter_count {
            return Err(Error::InvalidInput("wrong number of mass parameters"));
        }
        Ok((0..self.n).map(|i| params[i % self.parameter_count]).collect())
    }
}

/// Admissible masses of the regular `n`-gon, read off the null space of its
/// force matrix.
///
/// The null vector of mode 1 is `(1, …, 1)`; for even `n` the mode `n/2 + 1`
/// adds `(1, −1, 1, −1, …)`, and together they span the alternating pattern.
pub fn mass_family(n: usize) -> Result<MassFamily> {
    let zeros = null_modes(n, default_rank_tol(n))?;
    let parity = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
    let pattern = match (parity, zeros.as_slice()) {
        (_, [1]) => MassPattern::Uniform,
        (Parity::Even, [1, half]) if *half == n / 2 + 1 => MassPattern::Alternating,
        _ => return Err(Error::InvalidInput("force matrix has an unexpected null space")),
    };
    Ok(MassFamily { n, parity, parameter_count: zeros.len(), pattern })
}

/// The two auxiliary functions of the mode-two positivity bound, at
/// `x = π/(2n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankBoundTerms {
    /// `−π/(4x) + ln(cot x)/(2x) − cot(x)/2`, a lower bound for `f₁(n, 2)`.
    pub lower_bound: f64,
    /// `ln(cot x) − 2x/sin x − π/2`, whose sign is used to locate where the
    /// lower bound turns positive.
    pub sign_function: f64,
}

/// Evaluates [`RankBoundTerms`] for `x ∈ (0, π/2)`.
pub fn rank_bound_terms(x: f64) -> Result<RankBoundTerms> {
    if !(x > 0.0 && x < FRAC_PI_2) {
        return Err(Error::Domain { what: "bound argument", value: x });
    }
    let (s, c) = (sin(x), cos(x));
    let log_cot = log(c / s);
    Ok(RankBoundTerms {
        lower_bound: -PI / (4.0 * x) + log_cot / (2.0 * x) - c / (2.0 * s),
        sign_function: log_cot - 2.0 * x / s - FRAC_PI_2,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::Circulant;
    use crate::oracle::{bisect_root, jacobi_eigenvalues, DenseSymmetric, DEFAULT_SWEEP_TOL};
    use alloc::vec;
    use core::f64::consts::SQRT_2;

    #[test]
    fn configuration_validation() {
        assert!(RingConfiguration::new(vec![0.0], vec![1.0]).is_err());
        assert!(RingConfiguration::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(RingConfiguration::new(vec![0.0, 1.0], vec![1.0, 0.0]).is_err());
        assert!(RingConfiguration::new(vec![0.0, 1.0], vec![1.0, -2.0]).is_err());
        assert_eq!(
            RingConfiguration::new(vec![0.0, 1.0, TAU], vec![1.0; 3]),
            Err(Error::CoincidentBodies { first: 0, second: 2 })
        );
        assert!(RingConfiguration::alternating(5, 1.0, 2.0).is_err());
        let c = RingConfiguration::regular(6).unwrap();
        assert!(c.is_regular(0.0));
        assert!((c.chord(0, 3) - 2.0).abs() < 1e-15);
        assert!((c.angles()[2] - 2.0 * PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn force_matrix_structure() {
        for n in 3..=12 {
            let m = force_matrix(&RingConfiguration::regular(n).unwrap());
            for i in 0..n {
                for k in 0..n {
                    assert!((m[(i, k)] + m[(k, i)]).abs() < 1e-12);
                    // circulant
                    assert!((m[(i, k)] - m[((i + 1) % n, (k + 1) % n)]).abs() < 1e-12);
                }
            }
            for k in 1..n {
                assert!((m[(0, k)] + m[(0, n - k)]).abs() < 1e-12, "n = {n}, k = {k}");
            }
        }
        let m4 = force_matrix(&RingConfiguration::regular(4).unwrap());
        assert!((m4[(0, 1)] - (1.0 - SQRT_2 / 4.0)).abs() < 1e-15);
    }

    #[test]
    fn amplitude_structural_zeros() {
        for n in 3..=60 {
            assert_eq!(force_mode_amplitude(n, 1), 0.0);
            if n % 2 == 0 {
                assert!(force_mode_amplitude(n, n / 2 + 1).abs() < 1e-12, "n = {n}");
            }
        }
    }

    #[test]
    fn amplitude_three_gon_by_hand() {
        // −n/2 + ½ Σ (1/sin − sin) at n = 3, k = 1, 2
        let expected = -1.5 + 0.5 / 3f64.sqrt();
        assert!((force_mode_amplitude(3, 2) - expected).abs() < 1e-14);
        assert!((force_mode_amplitude(3, 2) - (-1.211324865405187)).abs() < 1e-14);
    }

    #[test]
    fn amplitude_is_imaginary_part_of_dft() {
        for n in 3..=30 {
            let row = force_matrix(&RingConfiguration::regular(n).unwrap()).row(0).to_vec();
            let ev = Circulant::new(row).unwrap().eigenvalues();
            for l in 1..=n {
                let z = ev[l - 1];
                assert!(z.re.abs() < 1e-10, "n = {n}, l = {l}");
                assert!((z.im - force_mode_amplitude(n, l)).abs() < 1e-10, "n = {n}, l = {l}");
            }
        }
    }

    #[test]
    fn amplitude_antisymmetry() {
        for n in 3..=50 {
            for l in 2..=n {
                let (a, b) = (force_mode_amplitude(n, l), force_mode_amplitude(n, n + 2 - l));
                assert!((a + b).abs() < 1e-10, "n = {n}, l = {l}");
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(force_matrix_rank(5, default_rank_tol(5)), Ok(4));
        assert_eq!(force_matrix_rank(8, default_rank_tol(8)), Ok(6));
        assert_eq!(force_matrix_rank(3, default_rank_tol(3)), Ok(2));
        assert!(force_matrix_rank(2, 1e-8).is_err());
        // a cut-off right next to a genuine amplitude is refused
        let near = force_mode_amplitude(5, 2).abs();
        assert!(matches!(force_matrix_rank(5, near * 2.0), Err(Error::AmbiguousRank { .. })));
    }

    #[test]
    fn rank_of_three_gon_by_jacobi() {
        // i·M is Hermitian; its real embedding [[0, −M], [M, 0]] is symmetric
        // with every eigenvalue of i·M doubled.
        let m = force_matrix(&RingConfiguration::regular(3).unwrap());
        let emb = SquareMatrix::from_fn(6, |i, k| match (i < 3, k < 3) {
            (true, false) => -m[(i, k - 3)],
            (false, true) => m[(i - 3, k)],
            _ => 0.0,
        });
        let ev = jacobi_eigenvalues(&DenseSymmetric::new(emb).unwrap(), DEFAULT_SWEEP_TOL).unwrap();
        let nonzero = ev.iter().filter(|v| v.abs() > default_rank_tol(3)).count();
        assert_eq!(nonzero / 2, 2);
    }

    #[test]
    fn mass_families() {
        let odd = mass_family(7).unwrap();
        assert_eq!((odd.parity, odd.parameter_count, odd.pattern), (Parity::Odd, 1, MassPattern::Uniform));
        let even = mass_family(8).unwrap();
        assert_eq!(
            (even.parity, even.parameter_count, even.pattern),
            (Parity::Even, 2, MassPattern::Alternating)
        );
        assert_eq!(even.masses(&[2.0, 3.0]).unwrap(), vec![2.0, 3.0, 2.0, 3.0, 2.0, 3.0, 2.0, 3.0]);
        // equal parameters reduce to the equal-mass ring
        assert_eq!(even.masses(&[1.5, 1.5]).unwrap(), odd_like(8, 1.5));
        assert!(even.masses(&[1.0]).is_err());
    }

    fn odd_like(n: usize, m: f64) -> Vec<f64> {
        vec![m; n]
    }

    #[test]
    fn family_members_are_equilibria() {
        for n in 3..=40 {
            let fam = mass_family(n).unwrap();
            let params: Vec<f64> = [0.7, 3.1].iter().take(fam.parameter_count).copied().collect();
            let config = RingConfiguration::regular_with_masses(fam.masses(&params).unwrap()).unwrap();
            let r = residual(&config);
            assert!(r.iter().all(|v| v.abs() <= 1e-12 * n as f64 * 3.1), "n = {n}: {r:?}");
        }
    }

    #[test]
    fn residual_examples() {
        for n in 3..=30 {
            let r = residual(&RingConfiguration::regular(n).unwrap());
            assert!(r.iter().all(|v| v.abs() <= 1e-12 * n as f64));
        }
        for j in 2..=15 {
            let r = residual(&RingConfiguration::alternating(2 * j, 0.3, 5.0).unwrap());
            assert!(r.iter().all(|v| v.abs() <= 1e-12 * (2 * j) as f64 * 5.0));
        }
        let base = RingConfiguration::regular(8).unwrap();
        let mut angles = base.angles().to_vec();
        angles[1] += 0.01;
        let r = residual(&base.with_angles(angles).unwrap());
        let worst = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(worst > 1e-4);
        // golden value from an independent double-precision evaluation
        assert!((worst - 0.08820394111097907).abs() < 1e-12, "{worst}");
    }

    #[test]
    fn positivity_of_extreme_modes() {
        for n in 42..=200 {
            assert!(force_mode_amplitude(n, 2) > 0.0, "n = {n}");
        }
        // the closed forms for l = ⌊(n+1)/2⌋ drop the −n/2 term, which only
        // vanishes once that index is at least 3
        for n in 5..=200 {
            assert!(force_mode_amplitude(n, (n + 1) / 2) > 0.0, "n = {n}");
        }
        assert!(force_mode_amplitude(3, 2) < 0.0);
        assert!(force_mode_amplitude(4, 2) < 0.0);
        assert!((force_mode_amplitude(4, 2) - (-1.2928932188134525)).abs() < 1e-14);
    }

    #[test]
    fn no_near_zero_amplitudes_below_42() {
        for n in 3..=41 {
            let tol = default_rank_tol(n);
            for l in 2..=(n + 1) / 2 {
                if n % 2 == 0 && l == n / 2 + 1 {
                    continue;
                }
                assert!(force_mode_amplitude(n, l).abs() > 10.0 * tol, "n = {n}, l = {l}");
            }
        }
    }

    #[test]
    fn kernel_part_is_concave_in_l() {
        for n in 7..=100usize {
            for l in 2..(n - 3) / 2 {
                let second = force_mode_kernel_part(n, l) + force_mode_kernel_part(n, l + 2)
                    - 2.0 * force_mode_kernel_part(n, l + 1);
                let closed: f64 = -(1..n)
                    .map(|k| cos(PI * k as f64 / n as f64) * sin(turn(l * k, n)))
                    .sum::<f64>();
                assert!(second < 0.0, "n = {n}, l = {l}");
                assert!((second - closed).abs() < 1e-9, "n = {n}, l = {l}");
            }
        }
    }

    #[test]
    fn trapezoid_bound_and_sine_sum() {
        for n in 3..=200usize {
            let nf = n as f64;
            let inv = |k: usize| 1.0 / sin(PI * k as f64 / nf);
            let direct: f64 = (1..n).map(inv).sum::<f64>() * PI / nf;
            let trapezoid = (0.5 * inv(1) + (2..n - 1).map(inv).sum::<f64>() + 0.5 * inv(n - 1)) * PI / nf;
            let integral = 2.0 * log(cos(PI / (2.0 * nf)) / sin(PI / (2.0 * nf)));
            assert!(direct >= trapezoid && trapezoid > integral, "n = {n}");

            let sines: f64 = (1..n).map(|k| sin(PI * k as f64 / nf)).sum();
            let closed = cos(PI / (2.0 * nf)) / sin(PI / (2.0 * nf));
            assert!((sines - closed).abs() < 1e-12 * closed, "n = {n}");
        }
    }

    #[test]
    fn rank_bound_sign_function() {
        let at = |n: f64| rank_bound_terms(PI / (2.0 * n)).unwrap().sign_function;
        // increasing in n
        for n in 3..500 {
            assert!(at(n as f64 + 1.0) > at(n as f64));
        }
        // As defined, the sign function is still negative at n = 41 and 42;
        // its sign change lies between n = 55 and n = 56.
        assert!(at(41.0) < 0.0);
        assert!(at(42.0) < 0.0);
        assert!(at(55.0) < 0.0 && at(56.0) > 0.0);
        let root = bisect_root(at, 55.0, 56.0, 1e-10).unwrap();
        assert!(root > 55.0 && root < 56.0);
        assert!(bisect_root(at, 41.0, 42.0, 1e-10).is_err());
    }

    #[test]
    fn rank_bound_is_a_lower_bound() {
        for n in 3..=200 {
            let t = rank_bound_terms(PI / (2.0 * n as f64)).unwrap();
            assert!(force_mode_amplitude(n, 2) >= t.lower_bound, "n = {n}");
        }
        assert!(rank_bound_terms(0.0).is_err());
        assert!(rank_bound_terms(FRAC_PI_2).is_err());
    }
}
