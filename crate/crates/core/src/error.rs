use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An angle hit the `2kπ` singularity of the kernels.
    Singular { angle: f64 },
    /// Two bodies share a position on the circle.
    CoincidentBodies { first: usize, second: usize },
    /// An argument lies outside the domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// Structurally invalid input (sizes, counts, orders).
    InvalidInput(&'static str),
    /// A value sits too close to the rank cut-off to be classified safely.
    AmbiguousRank { n: usize, index: usize, value: f64, zero_tol: f64 },
    /// Odd rings only admit equal masses.
    OddRingRatio { n: usize, ratio: f64 },
    /// A matrix declared symmetric produced a complex eigenvalue.
    ImaginaryResidue { index: usize, residue: f64, limit: f64 },
    /// The input matrix is not symmetric.
    NotSymmetric { row: usize, col: usize, gap: f64 },
    /// Bisection needs a bracket with a sign change.
    NoSignChange { lo: f64, hi: f64 },
    /// Jacobi sweeps did not reach the requested tolerance.
    NoConvergence { sweeps: usize, off_diagonal: f64 },
    /// No eigenvalue was found within the zero tolerance, so the rotational
    /// mode is not resolved.
    MissingZeroMode { zero_tol: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Singular { angle } => {
                write!(f, "kernel evaluated at a multiple of 2π (angle {angle})")
            }
            Error::CoincidentBodies { first, second } => {
                write!(f, "bodies {first} and {second} coincide on the circle")
            }
            Error::Domain { what, value } => write!(f, "{what} out of domain: {value}"),
            Error::InvalidInput(msg) => f.write_str(msg),
            Error::AmbiguousRank { n, index, value, zero_tol } => write!(
                f,
                "rank of the {n}-gon force matrix is ambiguous: mode {index} has magnitude {value:e}, \
                 within a decade of the cut-off {zero_tol:e}"
            ),
            Error::OddRingRatio { n, ratio } => write!(
                f,
                "n = {n} is odd: the regular n-gon is an equilibrium only for equal masses \
                 (one-parameter family), got ratio {ratio}"
            ),
            Error::ImaginaryResidue { index, residue, limit } => write!(
                f,
                "eigenvalue {index} of a symmetric circulant has imaginary part {residue:e} (limit {limit:e})"
            ),
            Error::NotSymmetric { row, col, gap } => {
                write!(f, "matrix is not symmetric at ({row}, {col}): gap {gap:e}")
            }
            Error::NoSignChange { lo, hi } => write!(f, "no sign change on [{lo}, {hi}]"),
            Error::NoConvergence { sweeps, off_diagonal } => write!(
                f,
                "Jacobi did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:e})"
            ),
            Error::MissingZeroMode { zero_tol } => {
                write!(f, "no eigenvalue within {zero_tol:e} of zero; rotational mode unresolved")
            }
        }
    }
}

impl core::error::Error for Error {}
