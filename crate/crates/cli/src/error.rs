use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Command failures, grouped by the exit code they map to.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn data(msg: impl Into<String>) -> Self {
        CliError::Data(msg.into())
    }
}

impl From<asm_binaural::Error> for CliError {
    fn from(e: asm_binaural::Error) -> Self {
        use asm_binaural::Error as E;
        let msg = e.to_string();
        match e {
            E::ShIndex { .. }
            | E::UnsupportedGrid(_)
            | E::InvalidGrid(_)
            | E::InvalidDirection(_)
            | E::InvalidInput(_)
            | E::Geometry(_) => CliError::Config(msg),
            E::Dimension(_) | E::Format(_) | E::Io(_) | E::Json(_) | E::Csv(_) | E::Wav(_) => CliError::Data(msg),
            E::TruncationOrder { .. } | E::RankDeficient(_) | E::Undefined(_) => CliError::Numerical(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Data(e.to_string())
    }
}
