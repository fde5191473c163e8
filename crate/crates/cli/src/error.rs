use cpshift::CpError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("invalid parameters: {0}")]
    Invalid(CpError),
    #[error("numerical failure: {0}")]
    Numerical(#[from] CpError),
    #[error("site budget exceeded: {sites} sites > {budget}")]
    Budget { sites: u128, budget: f64 },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Invalid(_) | CliError::Io(_) | CliError::Csv(_) => 1,
            CliError::Numerical(_) | CliError::Budget { .. } => 2,
            CliError::Verification(_) => 3,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
