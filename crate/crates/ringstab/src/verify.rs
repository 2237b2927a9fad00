//! The invariant suite behind `ringstab verify`.
//!
//! Every check is deterministic: random inputs come from a fixed-seed
//! ChaCha stream, and checks run in a fixed order.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ringstab_core::circulant::{BlockCirculant, Circulant};
use ringstab_core::equilibrium::{
    default_rank_tol, force_matrix_rank, force_mode_amplitude, mass_family, rank_bound_terms, residual,
    RingConfiguration,
};
use ringstab_core::oracle::{
    jacobi_eigenvalues, numeric_gradient, numeric_hessian, DenseSymmetric, DEFAULT_HESSIAN_STEP, DEFAULT_SWEEP_TOL,
};
use ringstab_core::special::{force_kernel, stiffness_kernel};
use ringstab_core::stability::{
    classify, hall_gradient, hall_potential, hessian, like_stiffness, stability_interval, RatioRange, Verdict,
    ZeroTol,
};
use ringstab_core::{Error, Result};

const SEED: u64 = 0x5a7u64;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&mut ChaCha8Rng) -> Result<(bool, String)>;

const CHECKS: &[(&str, Check)] = &[
    ("kernel_anchors", kernel_anchors),
    ("kernel_symmetries", kernel_symmetries),
    ("stiffness_is_force_derivative", stiffness_is_force_derivative),
    ("circulant_spectrum_vs_jacobi", circulant_spectrum_vs_jacobi),
    ("block_spectrum_vs_jacobi", block_spectrum_vs_jacobi),
    ("mass_families_are_equilibria", mass_families_are_equilibria),
    ("force_matrix_rank_law", force_matrix_rank_law),
    ("mode_amplitude_positive_beyond_41", mode_amplitude_positive_beyond_41),
    ("rank_bound_sign_change", rank_bound_sign_change),
    ("equal_mass_verdicts", equal_mass_verdicts),
    ("like_stiffness_sign_change", like_stiffness_sign_change),
    ("interval_structure", interval_structure),
    ("interval_samples", interval_samples),
    ("analytic_vs_jacobi_spectra", analytic_vs_jacobi_spectra),
    ("ratio_reciprocity", ratio_reciprocity),
    ("gradient_vs_finite_differences", gradient_vs_finite_differences),
    ("hessian_vs_finite_differences", hessian_vs_finite_differences),
    ("zero_mode_structure", zero_mode_structure),
];

/// Runs every check. A check that returns an error counts as failed.
pub fn run_checks() -> Vec<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    CHECKS
        .iter()
        .map(|(name, check)| {
            let (passed, detail) = match check(&mut rng) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome { name, passed, detail }
        })
        .collect()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

fn kernel_anchors(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let f_pi = stiffness_kernel(PI)?;
    let force_pi = force_kernel(PI)?;
    let force_third = force_kernel(PI / 3.0)?;
    let singular = matches!(force_kernel(0.0), Err(Error::Singular { .. }))
        && matches!(stiffness_kernel(TAU), Err(Error::Singular { .. }));
    let ok = (f_pi + 0.875).abs() <= 1e-12 && force_pi.abs() <= 1e-12 && force_third.abs() <= 1e-12 && singular;
    Ok((ok, format!("f(pi)={f_pi}, F(pi)={force_pi}, F(pi/3)={force_third}")))
}

fn kernel_symmetries(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for i in 1..1000 {
        let phi = TAU * i as f64 / 1000.0;
        let (force, stiff) = (force_kernel(phi)?, stiffness_kernel(phi)?);
        let scale = 1.0f64.max(force.abs()).max(stiff.abs());
        worst = worst.max((force + force_kernel(-phi)?).abs() / scale);
        worst = worst.max((force + force_kernel(TAU - phi)?).abs() / scale);
        worst = worst.max((stiff - stiffness_kernel(-phi)?).abs() / scale);
        worst = worst.max((stiff - stiffness_kernel(TAU - phi)?).abs() / scale);
    }
    Ok((worst <= 1e-12, format!("max relative parity defect {worst:e}")))
}

fn stiffness_is_force_derivative(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let h = 1e-5;
    let mut worst = 0.0f64;
    for i in 1..100 {
        let phi = 0.2 + (TAU - 0.4) * i as f64 / 100.0;
        let fd = (force_kernel(phi + h)? - force_kernel(phi - h)?) / (2.0 * h);
        let exact = stiffness_kernel(phi)?;
        worst = worst.max((fd - exact).abs() / 1.0f64.max(exact.abs()));
    }
    Ok((worst <= 1e-6, format!("max relative derivative gap {worst:e}")))
}

fn random_symmetric_row(rng: &mut ChaCha8Rng, j: usize) -> Vec<f64> {
    let mut row = vec![0.0; j];
    for k in 0..j {
        let v = rng.gen_range(-1.0..1.0);
        row[k] = v;
        row[(j - k) % j] = v;
    }
    row
}

fn circulant_spectrum_vs_jacobi(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for j in 1..=16 {
        let c = Circulant::new(random_symmetric_row(rng, j))?;
        let mut analytic = c.real_eigenvalues()?;
        analytic.sort_by(f64::total_cmp);
        let dense = jacobi_eigenvalues(&DenseSymmetric::new(c.to_dense())?, DEFAULT_SWEEP_TOL)?;
        worst = worst.max(max_abs_diff(&analytic, &dense));
    }
    Ok((worst <= 1e-10, format!("max deviation {worst:e} over orders 1..=16")))
}

fn block_spectrum_vs_jacobi(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for j in 1..=12 {
        let a = Circulant::new(random_symmetric_row(rng, j))?;
        let b = Circulant::new(random_symmetric_row(rng, j))?;
        let c = Circulant::new((0..j).map(|_| rng.gen_range(-1.0..1.0)).collect())?;
        let block = BlockCirculant::new(a, b, c)?;
        let analytic = block.spectrum()?.eigenvalues();
        let dense = jacobi_eigenvalues(&DenseSymmetric::new(block.to_dense())?, DEFAULT_SWEEP_TOL)?;
        worst = worst.max(max_abs_diff(&analytic, &dense));
    }
    Ok((worst <= 1e-10, format!("max deviation {worst:e} over block orders 1..=12")))
}

fn mass_families_are_equilibria(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for n in 3..=40 {
        let family = mass_family(n)?;
        let params: Vec<f64> = (0..family.parameter_count).map(|_| rng.gen_range(0.1..10.0)).collect();
        let config = RingConfiguration::regular_with_masses(family.masses(&params)?)?;
        let scale = config.masses().iter().fold(0.0f64, |m, x| m.max(*x));
        let r = residual(&config);
        worst = worst.max(r.iter().fold(0.0f64, |m, x| m.max(x.abs())) / scale);
    }
    Ok((worst <= 1e-10, format!("max |residual|/max mass {worst:e} for n = 3..=40")))
}

fn force_matrix_rank_law(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for n in 3..=41 {
        let expected = if n % 2 == 1 { n - 1 } else { n - 2 };
        let rank = force_matrix_rank(n, default_rank_tol(n))?;
        if rank != expected {
            bad.push(n);
        }
    }
    Ok((bad.is_empty(), format!("mismatched n: {bad:?}")))
}

fn mode_amplitude_positive_beyond_41(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let worst = (42..=200).map(|n| force_mode_amplitude(n, 2)).fold(f64::INFINITY, f64::min);
    Ok((worst > 0.0, format!("min f1(n,2) over n = 42..=200 is {worst}")))
}

fn rank_bound_sign_change(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let at = |n: usize| rank_bound_terms(PI / (2 * n) as f64).map(|t| t.sign_function);
    let mut increasing = true;
    for n in 3..200 {
        increasing &= at(n + 1)? > at(n)?;
    }
    let (before, after) = (at(55)?, at(56)?);
    let ok = increasing && before < 0.0 && after > 0.0;
    Ok((ok, format!("increasing in n: {increasing}; f4 at n=55: {before}, n=56: {after}")))
}

fn equal_mass_verdicts(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for n in 3..=60 {
        let expected = if n >= 7 { Verdict::Stable } else { Verdict::Unstable };
        if classify(n, 1.0, ZeroTol::default())?.verdict != expected {
            bad.push(n);
        }
    }
    Ok((bad.is_empty(), format!("mismatched n: {bad:?}")))
}

fn like_stiffness_sign_change(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let (six, seven) = (like_stiffness(6, 2), like_stiffness(7, 2));
    Ok((six < 0.0 && seven > 0.0, format!("g1(6,2)={six}, g1(7,2)={seven}")))
}

fn interval_structure(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for j in 2..=20 {
        let range = stability_interval(j)?.range;
        let expected_kind = match j {
            2 | 3 => matches!(range, RatioRange::Empty),
            4..=6 => matches!(range, RatioRange::Bounded { .. }),
            _ => matches!(range, RatioRange::All),
        };
        ok &= expected_kind;
        if let RatioRange::Bounded { lo, hi } = range {
            ok &= (lo * hi - 1.0).abs() <= 1e-10 && lo < 1.0 && 1.0 < hi;
            notes.push(format!("j={j}: ({lo}, {hi})"));
        }
    }
    Ok((ok, notes.join("; ")))
}

fn interval_samples(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for j in 4..=6 {
        let RatioRange::Bounded { lo, hi } = stability_interval(j)?.range else {
            bad.push(format!("j={j} not bounded"));
            continue;
        };
        let (llo, lhi) = ((lo + 1e-3).ln(), (hi - 1e-3).ln());
        for k in 0..10 {
            let inside = (llo + (lhi - llo) * k as f64 / 9.0).exp();
            let below = lo * (1.0 - 1e-3) * 0.5f64.powi(k);
            let above = hi * (1.0 + 1e-3) * 2.0f64.powi(k);
            if classify(2 * j, inside, ZeroTol::default())?.verdict != Verdict::Stable {
                bad.push(format!("j={j} ratio={inside}"));
            }
            for r in [below, above] {
                if classify(2 * j, r, ZeroTol::default())?.verdict != Verdict::Unstable {
                    bad.push(format!("j={j} ratio={r}"));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("misclassified: {bad:?}")))
}

const SAMPLE_RATIOS: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 10.0];

fn analytic_vs_jacobi_spectra(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for n in (4..=40).step_by(2) {
        for ratio in SAMPLE_RATIOS {
            let report = classify(n, ratio, ZeroTol::default())?;
            let (mu1, mu2) = report.masses;
            let h = hessian(&RingConfiguration::alternating(n, mu1, mu2)?);
            let dense = jacobi_eigenvalues(&DenseSymmetric::new(h.matrix)?, DEFAULT_SWEEP_TOL)?;
            worst = worst.max(max_abs_diff(&report.eigenvalues, &dense));
        }
    }
    Ok((worst <= 1e-9, format!("max deviation {worst:e}")))
}

fn ratio_reciprocity(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut verdicts_agree = true;
    for j in 2..=20 {
        for ratio in [0.01, 0.1, 0.3, 2.0, 7.0, 100.0] {
            let a = classify(2 * j, ratio, ZeroTol::default())?;
            let b = classify(2 * j, 1.0 / ratio, ZeroTol::default())?;
            verdicts_agree &= a.verdict == b.verdict;
            worst = worst.max(max_abs_diff(&a.eigenvalues, &b.eigenvalues));
        }
    }
    Ok((verdicts_agree && worst <= 1e-10, format!("max spectrum gap {worst:e}")))
}

fn random_configuration(rng: &mut ChaCha8Rng) -> Result<RingConfiguration> {
    let n = rng.gen_range(3..=10);
    loop {
        let angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        let masses: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..10.0)).collect();
        let well_separated = (0..n).all(|i| (0..i).all(|k| ((angles[i] - angles[k]) / 2.0).sin().abs() > 0.05));
        if well_separated {
            return RingConfiguration::new(angles, masses);
        }
    }
}

fn potential_at(config: &RingConfiguration) -> impl Fn(&[f64]) -> Result<f64> + '_ {
    move |x: &[f64]| Ok(hall_potential(&config.with_angles(x.to_vec())?))
}

fn gradient_vs_finite_differences(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let config = random_configuration(rng)?;
        let exact = hall_gradient(&config);
        let fd = numeric_gradient(potential_at(&config), config.angles(), 1e-6)?;
        let scale = exact.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        worst = worst.max(max_abs_diff(&exact, &fd) / scale);
    }
    Ok((worst <= 1e-6, format!("max relative gap {worst:e} over 20 configurations")))
}

fn hessian_vs_finite_differences(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let config = random_configuration(rng)?;
        let exact = hessian(&config).matrix;
        let fd = numeric_hessian(potential_at(&config), config.angles(), DEFAULT_HESSIAN_STEP)?;
        let gap = max_abs_diff(exact.as_slice(), fd.matrix().as_slice());
        worst = worst.max(gap / exact.max_abs());
    }
    Ok((worst <= 1e-5, format!("max gap / max|H| {worst:e} over 5 configurations")))
}

fn zero_mode_structure(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst_defect = 0.0f64;
    let mut bad = Vec::new();
    let mut cases: Vec<RingConfiguration> = Vec::new();
    for n in 3..=40 {
        if n % 2 == 0 {
            for ratio in SAMPLE_RATIOS {
                let report = classify(n, ratio, ZeroTol::default())?;
                if report.verdict == Verdict::Stable
                    && report.eigenvalues.iter().filter(|v| v.abs() <= report.zero_tol).count() != 1
                {
                    bad.push(format!("n={n} ratio={ratio}"));
                }
                cases.push(RingConfiguration::alternating(n, report.masses.0, report.masses.1)?);
            }
        } else {
            let report = classify(n, 1.0, ZeroTol::default())?;
            if report.verdict == Verdict::Stable && report.zero_mode_count != 1 {
                bad.push(format!("n={n}"));
            }
            cases.push(RingConfiguration::regular(n)?);
        }
    }
    for _ in 0..10 {
        cases.push(random_configuration(rng)?);
    }
    for config in &cases {
        let h = hessian(config);
        worst_defect = worst_defect.max(h.rotational_defect() / h.matrix.frobenius_norm());
    }
    let ok = bad.is_empty() && worst_defect <= 1e-10;
    Ok((ok, format!("max |H·1|/|H| {worst_defect:e}; zero-mode failures: {bad:?}")))
}
