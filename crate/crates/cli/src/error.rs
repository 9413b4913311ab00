use ptnls_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::NoSolution(_) => 4,
            CliError::Verification(_) => 5,
            CliError::Numerical(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Domain(_) | Error::WrongSigma(_) | Error::CriticalSigma | Error::DegenerateMap => {
                CliError::Config(msg)
            }
            Error::BranchAbsent { .. }
            | Error::MassOutOfRange { .. }
            | Error::Unbounded { .. }
            | Error::NoMinimizer { .. }
            | Error::NoEigenvalue => CliError::NoSolution(msg),
            _ => CliError::Numerical(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
