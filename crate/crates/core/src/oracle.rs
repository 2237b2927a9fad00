//! Brute-force verifiers, independent of the analytic reductions: a cyclic
//! Jacobi eigensolver, central finite differences and bisection.

use alloc::vec::Vec;

use crate::{Error, Result, SquareMatrix};

pub const DEFAULT_SWEEP_TOL: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 50;
pub const DEFAULT_HESSIAN_STEP: f64 = 1e-4;

/// A square matrix checked to be symmetric within `1e-12·max|entry|`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseSymmetric(SquareMatrix);

impl DenseSymmetric {
    pub fn new(matrix: SquareMatrix) -> Result<Self> {
        let (row, col, gap) = matrix.asymmetry();
        if gap > 1e-12 * matrix.max_abs() || gap.is_nan() {
            return Err(Error::NotSymmetric { row, col, gap });
        }
        Ok(Self(matrix))
    }

    /// `(H + Hᵀ)/2`, symmetric by construction.
    pub fn symmetrize(matrix: &SquareMatrix) -> Self {
        let t = matrix.transpose();
        Self(SquareMatrix::from_fn(matrix.order(), |i, k| 0.5 * (matrix[(i, k)] + t[(i, k)])))
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.0
    }

    pub fn into_inner(self) -> SquareMatrix {
        self.0
    }
}

fn off_diagonal_norm(a: &SquareMatrix) -> f64 {
    let n = a.order();
    let mut sum = 0.0;
    for i in 0..n {
        for k in 0..n {
            if i != k {
                sum += a[(i, k)] * a[(i, k)];
            }
        }
    }
    libm::sqrt(sum)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending.
///
/// Sweeps until the off-diagonal Frobenius norm drops to
/// `sweep_tol·‖matrix‖_F`, failing after [`MAX_SWEEPS`].
pub fn jacobi_eigenvalues(matrix: &DenseSymmetric, sweep_tol: f64) -> Result<Vec<f64>> {
    if !(sweep_tol > 0.0) {
        return Err(Error::Domain { what: "sweep tolerance", value: sweep_tol });
    }
    let mut a = matrix.0.clone();
    let n = a.order();
    let target = sweep_tol * a.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_diagonal: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut diag: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    diag.sort_by(f64::total_cmp);
    Ok(diag)
}

/// Central-difference gradient `(f(x+he_i) − f(x−he_i))/(2h)`.
pub fn numeric_gradient<E>(
    mut f: impl FnMut(&[f64]) -> Result<f64, E>,
    point: &[f64],
    h: f64,
) -> Result<Vec<f64>, E>
where
    E: From<Error>,
{
    check_step(h)?;
    let mut x = point.to_vec();
    let mut grad = Vec::with_capacity(point.len());
    for i in 0..point.len() {
        x[i] = point[i] + h;
        let plus = f(&x)?;
        x[i] = point[i] - h;
        let minus = f(&x)?;
        x[i] = point[i];
        grad.push((plus - minus) / (2.0 * h));
    }
    Ok(grad)
}

/// Second-order central-difference Hessian, symmetrized.
pub fn numeric_hessian<E>(
    mut f: impl FnMut(&[f64]) -> Result<f64, E>,
    point: &[f64],
    h: f64,
) -> Result<DenseSymmetric, E>
where
    E: From<Error>,
{
    check_step(h)?;
    let n = point.len();
    let mut x = point.to_vec();
    let centre = f(&x)?;
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        x[i] = point[i] + h;
        let plus = f(&x)?;
        x[i] = point[i] - h;
        let minus = f(&x)?;
        x[i] = point[i];
        out[(i, i)] = (plus - 2.0 * centre + minus) / (h * h);
        for k in i + 1..n {
            let mut corner = |di: f64, dk: f64, x: &mut Vec<f64>| {
                x[i] = point[i] + di;
                x[k] = point[k] + dk;
                let v = f(x);
                x[i] = point[i];
                x[k] = point[k];
                v
            };
            let pp = corner(h, h, &mut x)?;
            let pm = corner(h, -h, &mut x)?;
            let mp = corner(-h, h, &mut x)?;
            let mm = corner(-h, -h, &mut x)?;
            let v = (pp - pm - mp + mm) / (4.0 * h * h);
            out[(i, k)] = v;
            out[(k, i)] = v;
        }
    }
    Ok(DenseSymmetric::symmetrize(&out))
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what: "finite-difference step", value: h })
    }
}

/// Root of `f` on `[lo, hi]` by bisection, to bracket width `≤ tol`.
///
/// Returns the midpoint of the final bracket, or an endpoint where `f` is
/// exactly zero.
pub fn bisect_root(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain { what: "bisection tolerance", value: tol });
    }
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let (mut f_lo, f_hi) = (f(lo), f(hi));
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo * f_hi < 0.0) {
        return Err(Error::NoSignChange { lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sym(rows: &[Vec<f64>]) -> DenseSymmetric {
        DenseSymmetric::new(SquareMatrix::from_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn small_cases() {
        let ev = jacobi_eigenvalues(&sym(&[vec![2.0, 1.0], vec![1.0, 2.0]]), DEFAULT_SWEEP_TOL).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);

        let d = sym(&[vec![3.0, 0.0, 0.0], vec![0.0, -1.0, 0.0], vec![0.0, 0.0, 2.0]]);
        assert_eq!(jacobi_eigenvalues(&d, DEFAULT_SWEEP_TOL).unwrap(), vec![-1.0, 2.0, 3.0]);

        let c = sym(&[vec![2.0, 1.0, 1.0], vec![1.0, 2.0, 1.0], vec![1.0, 1.0, 2.0]]);
        let ev = jacobi_eigenvalues(&c, DEFAULT_SWEEP_TOL).unwrap();
        for (x, y) in ev.iter().zip([1.0, 1.0, 4.0]) {
            assert!((x - y).abs() < 1e-13);
        }
        assert!(jacobi_eigenvalues(&SquareMatrix::zeros(0).into_sym(), 1e-13).unwrap().is_empty());
    }

    trait IntoSym {
        fn into_sym(self) -> DenseSymmetric;
    }
    impl IntoSym for SquareMatrix {
        fn into_sym(self) -> DenseSymmetric {
            DenseSymmetric::new(self).unwrap()
        }
    }

    #[test]
    fn rejects_asymmetric_input() {
        let m = SquareMatrix::from_rows(&[vec![1.0, 2.0], vec![2.5, 1.0]]).unwrap();
        assert!(matches!(DenseSymmetric::new(m), Err(Error::NotSymmetric { row: 0, col: 1, .. })));
        let m = SquareMatrix::identity(2).into_sym();
        assert!(jacobi_eigenvalues(&m, 0.0).is_err());
    }

    #[test]
    fn trace_and_frobenius_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for case in 0..200 {
            let m = rng.gen_range(1..=20);
            let mut a = SquareMatrix::zeros(m);
            for i in 0..m {
                for k in i..m {
                    let v = rng.gen_range(-5.0..5.0);
                    a[(i, k)] = v;
                    a[(k, i)] = v;
                }
            }
            let norm = a.frobenius_norm();
            let ev = jacobi_eigenvalues(&a.clone().into_sym(), DEFAULT_SWEEP_TOL).unwrap();
            let sum: f64 = ev.iter().sum();
            let sq: f64 = ev.iter().map(|x| x * x).sum();
            assert!((sum - a.trace()).abs() <= 1e-10 * norm, "case {case}");
            assert!((sq - norm * norm).abs() <= 1e-9 * norm * norm.max(1.0), "case {case}");
            assert!(ev.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn finite_differences_of_quadratic() {
        let f = |x: &[f64]| -> Result<f64> { Ok(x.iter().map(|v| v * v).sum()) };
        let g = numeric_gradient(f, &[1.0, 2.0], 1e-6).unwrap();
        assert!((g[0] - 2.0).abs() < 1e-8 && (g[1] - 4.0).abs() < 1e-8);
        let h = numeric_hessian(f, &[1.0, 2.0, -0.5], DEFAULT_HESSIAN_STEP).unwrap();
        let id = SquareMatrix::identity(3);
        for (x, y) in h.matrix().as_slice().iter().zip(id.as_slice()) {
            assert!((x - 2.0 * y).abs() < 1e-6);
        }
        assert!(numeric_gradient(f, &[1.0], 0.0).is_err());
        assert!(numeric_hessian(f, &[1.0], -1.0).is_err());
    }

    #[test]
    fn finite_differences_propagate_errors() {
        let f = |x: &[f64]| -> Result<f64> {
            if x[0] > 0.5 {
                Err(Error::Domain { what: "x", value: x[0] })
            } else {
                Ok(x[0])
            }
        };
        assert!(numeric_gradient(f, &[0.5], 1e-3).is_err());
        assert!(numeric_gradient(f, &[0.0], 1e-3).is_ok());
    }

    #[test]
    fn bisection() {
        let r = bisect_root(|x| x * x - 2.0, 1.0, 2.0, 1e-12).unwrap();
        assert!((r - core::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(matches!(bisect_root(|x| x * x + 1.0, -1.0, 1.0, 1e-9), Err(Error::NoSignChange { .. })));
        assert_eq!(bisect_root(|x| x - 1.0, 1.0, 3.0, 1e-9).unwrap(), 1.0);
        // reversed bracket
        let r = bisect_root(|x| x - 0.25, 1.0, 0.0, 1e-12).unwrap();
        assert!((r - 0.25).abs() < 1e-12);
    }

    #[test]
    fn bisection_residual_is_bracket_sized() {
        let f = |x: f64| libm::cos(x) - x;
        let tol = 1e-10;
        let r = bisect_root(f, 0.0, 1.0, tol).unwrap();
        let bound = f(r - tol).abs().max(f(r + tol).abs());
        assert!(f(r).abs() <= bound);
    }
}
