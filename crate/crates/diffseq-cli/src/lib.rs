//! Command-line front end for the Riccati sequence toolkit.
//!
//! The heavy lifting lives in `diffseq-core`; this crate parses user
//! input, dispatches commands, runs the verification suites, and renders
//! results as text, LaTeX or JSON.

pub mod commands;
pub mod json;
pub mod parse;
pub mod render;
pub mod rng;
pub mod suites;

pub use commands::{exit_code, run, Cli, CliError, Cmd, Format, Outcome};
