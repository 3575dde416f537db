//! Failure channel of the command-line tool.
//!
//! Argument problems exit with code 2; runtime failures and failed
//! validation suites exit with code 1, so scripts can tell a typo from a
//! broken invariant.

/// A terminal failure, tagged by which exit code it deserves.
#[derive(Debug)]
pub enum CliError {
    /// The invocation itself is wrong: bad flag value, malformed config
    /// entry, missing required parameter. Exit code 2.
    Usage(String),
    /// The invocation was fine but the work failed: numerical error, I/O
    /// error, or a validation suite reporting a broken invariant. Exit
    /// code 1.
    Runtime(String),
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        CliError::Runtime(message.into())
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => m,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<duosc_core::Error> for CliError {
    fn from(error: duosc_core::Error) -> Self {
        CliError::Runtime(error.to_string())
    }
}
