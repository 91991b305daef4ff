use std::fmt;

use forge_core::ForgeError;

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitKind {
    Validation = 2,
    Certification = 3,
    Verification = 4,
    Depth = 5,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ExitKind, message: impl Into<String>) -> Self {
        Self { kind, message: message.into() }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self::new(ExitKind::Validation, message)
    }

    /// Prefixes the message with the offending field.
    pub fn field(field: &str, err: impl fmt::Display) -> Self {
        Self::validation(format!("field `{field}`: {err}"))
    }

    pub fn code(&self) -> i32 {
        self.kind as i32
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<ForgeError> for CliError {
    fn from(e: ForgeError) -> Self {
        let kind = match e {
            ForgeError::Certification { .. } | ForgeError::SamplerLimit { .. } | ForgeError::EmptyIntersection(_) => {
                ExitKind::Certification
            }
            ForgeError::InsufficientDepth { .. } => ExitKind::Depth,
            _ => ExitKind::Validation,
        };
        Self::new(kind, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::validation(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
