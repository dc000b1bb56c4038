use cpsphere_core::Error as CoreError;

/// Failure classes, each with its own process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("validity error: {0}")]
    Validity(String),
    #[error("quadrature failure: {0}")]
    Quadrature(String),
    #[error("verification failed: {0} check(s) did not pass")]
    Verify(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Config(_) => 2,
            CliError::Validity(_) => 3,
            CliError::Quadrature(_) => 4,
        }
    }

    /// Classifies a core error raised while evaluating a scenario.
    pub fn from_core(context: &str, e: CoreError) -> Self {
        let msg = if context.is_empty() {
            e.to_string()
        } else {
            format!("{context}: {e}")
        };
        match e {
            CoreError::Quadrature { .. } => CliError::Quadrature(msg),
            CoreError::Domain { .. } | CoreError::InvalidParameter { .. } => CliError::Config(msg),
            _ => CliError::Validity(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("i/o: {e}"))
    }
}
