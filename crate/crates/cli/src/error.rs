use std::path::PathBuf;

/// Failures that stop a command before any report is produced.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    /// Malformed input: bad JSON, wrong types, unknown fields.
    #[error("syntax error: {0}")]
    Syntax(String),
    /// Well-formed input that does not describe a valid model.
    #[error("invalid problem: {0}")]
    Semantic(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Syntax(_) => 2,
            CliError::Semantic(_) => 3,
        }
    }
}

impl From<posygp_core::Error> for CliError {
    fn from(e: posygp_core::Error) -> Self {
        CliError::Semantic(e.to_string())
    }
}
