//! File formats, reports and commands of the `hodgecor` binary.

pub mod commands;
pub mod dgcat_format;
pub mod error;
pub mod green;
pub mod report;
pub mod selftest;
pub mod spec_format;

pub use commands::{render, run, Cli};
pub use error::{exit, CliError};
