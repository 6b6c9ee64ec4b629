//! Command-line front end for `oscnet`: synthesise couplings, sweep `g_j(t)`,
//! and run the transfer checks with byte-stable CSV/JSON output.
//!
//! All times on the command line are in units of the transfer period `τ`.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{Command, Format, Options, RunConfig};
pub use error::CliError;
pub use run::{run, Outcome};

/// Exit status for a run whose numerical check failed.
pub const EXIT_CHECK_FAILED: i32 = 2;
/// Exit status for rejected input.
pub const EXIT_INVALID: i32 = 1;
