//! File formats and command implementations for the `forge` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod fsio;

pub use error::{CliError, CliResult, ExitKind};
pub use format::{Artifact, BuildConfig, ConfigJson};
