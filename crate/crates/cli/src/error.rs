use std::fmt;

/// Process exit codes.
pub mod exit {
    pub const PASS: u8 = 0;
    pub const INTERNAL: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const VALIDATION: u8 = 3;
    pub const MATH_FAILURE: u8 = 4;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Syntax errors and unresolved references. Line 0 refers to the task
    /// or command line.
    Parse { line: usize, message: String },
    Usage(String),
    /// Structure constants, morphisms or bimodules failing their axioms.
    Validation(Vec<Issue>),
    /// A mathematical check failed in a way that prevents a report.
    Math(String),
    Io(String),
    Internal(String),
}

/// One object that failed validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub object: String,
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}: {}", self.line, self.object, self.message)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => exit::PARSE,
            CliError::Validation(_) => exit::VALIDATION,
            CliError::Math(_) => exit::MATH_FAILURE,
            CliError::Io(_) | CliError::Internal(_) => exit::INTERNAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { line: 0, message } => write!(f, "error: {message}"),
            CliError::Parse { line, message } => write!(f, "error at line {line}: {message}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Validation(issues) => {
                write!(f, "validation failed")?;
                for i in issues {
                    write!(f, "\n  {i}")?;
                }
                Ok(())
            }
            CliError::Math(m) => write!(f, "mathematical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}
