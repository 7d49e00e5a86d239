use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] modrep_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use modrep_core::Error as E;
        match self {
            CliError::Core(E::ResourceGuard { .. }) => EXIT_GUARD,
            CliError::Core(E::NotProjective(_) | E::NoLift { .. } | E::BrokenInvariant { .. }) => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;
    use modrep_core::Error as E;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(E::ResourceGuard { size: 9, bound: 4 }).exit_code(), EXIT_GUARD);
        assert_eq!(CliError::from(E::NotOddPrime(9)).exit_code(), EXIT_USAGE);
        assert_eq!(CliError::from(E::NotProjective("x".into())).exit_code(), EXIT_FAILED);
        assert_eq!(CliError::Usage("x".into()).exit_code(), EXIT_USAGE);
    }
}
