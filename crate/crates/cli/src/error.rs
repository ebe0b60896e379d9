use thiserror::Error;

/// Exit code for configuration problems.
pub const EXIT_CONFIG: u8 = 2;
/// Exit code for failures after the configuration was accepted.
pub const EXIT_COMPUTE: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    /// One message per offending field.
    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),

    #[error("{stage}: {source}")]
    Compute {
        stage: &'static str,
        #[source]
        source: pqc_regress::Error,
    },
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(vec![msg.into()])
    }

    /// Rejects a field using a core validation error, without repeating the
    /// "invalid configuration" prefix.
    pub fn field(field: &str, e: pqc_regress::Error) -> Self {
        CliError::config(format!("{field}: {}", detail(e)))
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Compute { .. } => EXIT_COMPUTE,
        }
    }
}

/// Message of a core error minus the "invalid configuration" prefix.
pub(crate) fn detail(e: pqc_regress::Error) -> String {
    match e {
        pqc_regress::Error::Config(msg) => msg,
        other => other.to_string(),
    }
}

/// Tags a core error with the pipeline stage it came from.
pub(crate) trait Stage<T> {
    fn stage(self, stage: &'static str) -> Result<T, CliError>;
}

impl<T> Stage<T> for pqc_regress::Result<T> {
    fn stage(self, stage: &'static str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Compute { stage, source })
    }
}
