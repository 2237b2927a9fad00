//! Command-line front end, machine-readable output and the invariant suite
//! for [`ringstab_core`].
//!
//! Every subcommand writes one JSON object to standard output (`fn-table`
//! writes CSV). Real numbers are serialized as decimal strings with 15
//! significant digits.

pub mod cli;
pub mod format;
pub mod verify;

pub use cli::run;
