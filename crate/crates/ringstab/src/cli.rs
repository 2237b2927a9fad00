//! Argument parsing and the subcommand implementations.
//!
//! Exit codes: 0 success, 1 computation error, 2 usage error. Diagnostics go
//! to standard error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use ringstab_core::equilibrium::{default_rank_tol, force_matrix_rank, force_mode_amplitude, RingConfiguration};
use ringstab_core::oracle::{jacobi_eigenvalues, DenseSymmetric, DEFAULT_SWEEP_TOL};
use ringstab_core::special::{force_kernel, stiffness_kernel};
use ringstab_core::stability::{classify, hessian, stability_interval, RatioRange, StabilityReport, ZeroTol};
use ringstab_core::Error;

use crate::format::sig15;
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ringstab", version, about = "Linear stability of regular n-gon rings of satellites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, clap::Args)]
struct ZeroTolArgs {
    /// Zero tolerance relative to the largest |eigenvalue|.
    #[arg(long, default_value_t = 1e-9, conflicts_with = "abs_zero_tol")]
    zero_tol: f64,
    /// Absolute zero tolerance (overrides --zero-tol).
    #[arg(long)]
    abs_zero_tol: Option<f64>,
}

impl ZeroTolArgs {
    fn resolve(self) -> ZeroTol {
        match self.abs_zero_tol {
            Some(t) => ZeroTol::Absolute(t),
            None => ZeroTol::Relative(self.zero_tol),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stability verdict for the regular n-gon with mass ratio μ₁/μ₂.
    Classify {
        #[arg(long)]
        n: usize,
        /// Mass ratio μ₁/μ₂ of the alternating masses (odd n: must be 1).
        #[arg(long, default_value_t = 1.0)]
        ratio: f64,
        #[command(flatten)]
        tol: ZeroTolArgs,
    },
    /// Stable mass-ratio interval of the alternating 2j-gon.
    Interval {
        #[arg(long)]
        j: usize,
    },
    /// Hessian spectrum, analytic and by dense Jacobi.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        ratio: f64,
        /// Jacobi stopping tolerance, relative to the Frobenius norm.
        #[arg(long, default_value_t = DEFAULT_SWEEP_TOL)]
        sweep_tol: f64,
    },
    /// Rank of the force matrix and its mode amplitudes.
    Rank {
        #[arg(long)]
        n: usize,
        /// Rank cut-off [default: 1e-8·n].
        #[arg(long)]
        zero_tol: Option<f64>,
    },
    /// CSV samples of a kernel on an evenly spaced grid.
    FnTable {
        #[arg(long = "fn", value_enum)]
        kernel: Kernel,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        points: usize,
    },
    /// Run the full invariant suite.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kernel {
    /// F(φ), the force kernel.
    #[value(name = "F")]
    Force,
    /// f(φ) = F'(φ), the stiffness kernel.
    #[value(name = "f")]
    Stiffness,
}

enum Failure {
    Usage(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OddRingRatio { .. } => Failure::Usage(e.to_string()),
            other => Failure::Computation(other.to_string()),
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::FnTable { kernel, from, to, points } => fn_table(kernel, from, to, points, out),
        Command::Verify => {
            let (value, ok) = verify_report();
            emit(out, &value).and_then(|_| {
                if ok {
                    Ok(())
                } else {
                    Err(Failure::Computation("invariant suite reported failures".into()))
                }
            })
        }
        other => json_command(other).and_then(|v| emit(out, &v)),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Computation(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_COMPUTATION
        }
    }
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Computation(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Failure::Computation(e.to_string()))
}

fn record(command: &str, inputs: Value, results: Value) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "results": results,
        "version": env!("CARGO_PKG_VERSION"),
    })
}

fn reals(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(sig15(*x))).collect())
}

fn json_command(command: Command) -> Result<Value, Failure> {
    match command {
        Command::Classify { n, ratio, tol } => {
            let report = classify(n, ratio, tol.resolve())?;
            Ok(record("classify", json!({ "n": n, "ratio": sig15(ratio) }), report_json(&report)))
        }
        Command::Interval { j } => {
            if j < 2 {
                return Err(Failure::Computation(format!("--j must be at least 2, got {j}")));
            }
            let iv = stability_interval(j)?;
            let mut results = Map::new();
            let kind = match iv.range {
                RatioRange::Empty => "empty",
                RatioRange::All => "all ratios",
                RatioRange::Bounded { lo, hi } => {
                    results.insert("lo".into(), sig15(lo).into());
                    results.insert("hi".into(), sig15(hi).into());
                    "bounded"
                }
            };
            results.insert("kind".into(), kind.into());
            results.insert("g1_2".into(), sig15(iv.like_stiffness).into());
            results.insert("g2".into(), sig15(iv.cross_stiffness).into());
            results.insert("g3_2".into(), sig15(iv.cross_coupling).into());
            results.insert("h4".into(), sig15(iv.h4).into());
            results.insert("h5".into(), sig15(iv.h5).into());
            Ok(record("interval", json!({ "j": j }), Value::Object(results)))
        }
        Command::Spectrum { n, ratio, sweep_tol } => {
            let report = classify(n, ratio, ZeroTol::default())?;
            let (mu1, mu2) = report.masses;
            let config = if n % 2 == 0 {
                RingConfiguration::alternating(n, mu1, mu2)?
            } else {
                RingConfiguration::regular(n)?
            };
            let dense = DenseSymmetric::new(hessian(&config).matrix)?;
            let oracle = jacobi_eigenvalues(&dense, sweep_tol)?;
            let deviation = report
                .eigenvalues
                .iter()
                .zip(&oracle)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            Ok(record(
                "spectrum",
                json!({ "n": n, "ratio": sig15(ratio), "sweep_tol": sig15(sweep_tol) }),
                json!({
                    "analytic": reals(&report.eigenvalues),
                    "oracle": reals(&oracle),
                    "max_deviation": sig15(deviation),
                }),
            ))
        }
        Command::Rank { n, zero_tol } => {
            if n < 3 {
                return Err(Failure::Computation(format!("--n must be at least 3, got {n}")));
            }
            let tol = zero_tol.unwrap_or_else(|| default_rank_tol(n));
            let rank = force_matrix_rank(n, tol)?;
            let table: Vec<Value> = (1..=n)
                .map(|l| json!({ "l": l, "f1": sig15(force_mode_amplitude(n, l)) }))
                .collect();
            Ok(record(
                "rank",
                json!({ "n": n, "zero_tol": sig15(tol) }),
                json!({ "rank": rank, "nullity": n - rank, "modes": table }),
            ))
        }
        Command::FnTable { .. } | Command::Verify => unreachable!("handled by run"),
    }
}

fn report_json(r: &StabilityReport) -> Value {
    json!({
        "verdict": r.verdict.as_str(),
        "eigenvalues": reals(&r.eigenvalues),
        "zero_mode_count": r.zero_mode_count,
        "negative_count": r.negative_count,
        "zero_tol": sig15(r.zero_tol),
        "masses": reals(&[r.masses.0, r.masses.1]),
        "failed_conditions": r.failed_conditions,
    })
}

/// Writes `phi,value` rows. Points on the `2kπ` singularity get an empty
/// value field.
fn fn_table(kernel: Kernel, from: f64, to: f64, points: usize, out: &mut dyn Write) -> Result<(), Failure> {
    if points == 0 {
        return Err(Failure::Usage("--points must be at least 1".into()));
    }
    if !from.is_finite() || !to.is_finite() {
        return Err(Failure::Usage("--from and --to must be finite".into()));
    }
    let eval = match kernel {
        Kernel::Force => force_kernel,
        Kernel::Stiffness => stiffness_kernel,
    };
    let io = |e: csv::Error| Failure::Computation(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["phi", "value"]).map_err(io)?;
    for i in 0..points {
        let phi = if points == 1 { from } else { from + (to - from) * i as f64 / (points - 1) as f64 };
        let value = match eval(phi) {
            Ok(v) => sig15(v),
            Err(Error::Singular { .. }) => String::new(),
            Err(e) => return Err(e.into()),
        };
        w.write_record([sig15(phi), value]).map_err(io)?;
    }
    w.flush().map_err(|e| Failure::Computation(e.to_string()))
}

fn verify_report() -> (Value, bool) {
    let outcomes = verify::run_checks();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let checks: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({ "name": o.name, "passed": o.passed, "detail": o.detail }))
        .collect();
    let value = record(
        "verify",
        json!({}),
        json!({ "checks": checks, "passed": outcomes.len() - failed, "failed": failed }),
    );
    (value, failed == 0)
}
