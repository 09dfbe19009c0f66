//! Problem files, reports and command implementations for the `posygp` binary.
//!
//! The numerical work lives in [`posygp_core`]; this crate adds the JSON problem
//! format, report documents and the command-line surface.

pub mod commands;
pub mod error;
pub mod file;
pub mod report;

pub use commands::{dual_model, solve_model, Options};
pub use error::CliError;
pub use file::{parse_problem, parse_str, Model, ProblemFile};
pub use report::{ReportDocument, ReportStatus};
