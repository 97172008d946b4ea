//! File formats and command implementations behind the `normmap` binary.
//!
//! Every command is a plain function returning a serializable value, so the
//! binary only parses flags, writes output and maps outcomes to exit codes:
//! `0` success, `1` a verification that ran and failed, `2` bad input.

pub mod commands;
pub mod error;
pub mod json;

pub use error::CliError;
