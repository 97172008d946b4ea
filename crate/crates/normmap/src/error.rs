use thiserror::Error;

/// Failures that stop a command before any verdict is reached. All of
/// them exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] normmap_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
