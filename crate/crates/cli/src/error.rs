use thiserror::Error;

/// CLI failure modes, each with its own process exit code so scripts can
/// tell a bad config from a failed verification.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("premise failure: {0}")]
    Premise(String),

    #[error("verdict failure: {0}")]
    Verdict(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("internal error: {0}")]
    Internal(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_PREMISE: i32 = 3;
pub const EXIT_VERDICT: i32 = 4;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Premise(_) => EXIT_PREMISE,
            CliError::Verdict(_) => EXIT_VERDICT,
            CliError::Io(_) | CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }
}

impl From<garch_orders::GarchError> for CliError {
    fn from(e: garch_orders::GarchError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<garch_orders::OracleError> for CliError {
    fn from(e: garch_orders::OracleError) -> Self {
        match e {
            garch_orders::OracleError::InvalidScenario(_)
            | garch_orders::OracleError::EnumerationTooLarge { .. }
            | garch_orders::OracleError::TooManySignVectors { .. } => {
                CliError::Config(e.to_string())
            }
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<garch_orders::DistError> for CliError {
    fn from(e: garch_orders::DistError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Config(e.to_string())
    }
}
