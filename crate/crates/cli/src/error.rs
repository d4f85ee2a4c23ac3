use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad config, flags or input files. Exit status 2.
    #[error("configuration error: {0}")]
    Config(String),
    /// A computation failed. Exit status 3.
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn config(e: impl std::fmt::Display) -> Self {
        CliError::Config(e.to_string())
    }

    pub fn numerical(e: ebound::Error) -> Self {
        CliError::Numerical(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 3,
        }
    }
}
