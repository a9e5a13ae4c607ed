//! Command-line companion to `paucity-core`: system files, census reports,
//! parallel runners and the seeded verification suites.

pub mod commands;
pub mod error;
pub mod format;
pub mod parallel;
pub mod report;
pub mod verify;

pub use error::{CliError, Result};
