use thiserror::Error;

/// Library-level failures surfaced to callers (CLI, FFI, config loading).
///
/// Arithmetic misuse (mixing coefficient rings, dividing by zero, inexact
/// ring division through the panicking operators) is treated as a programming
/// error and panics instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("quaternion is not integral for this order (rescale first)")]
    NotIntegral,
    #[error("reduced norm has a factor outside the gate-set prime support: {prime}")]
    NormNotSupported { prime: String },
    #[error("unknown label: {0}")]
    UnknownLabel(String),
    #[error("ideal is not principal (class-number assumption violated): {0}")]
    NotPrincipal(String),
    #[error("class-number verification failed: {0}")]
    ClassNumber(String),
    #[error("algebra is not totally definite; synthesis is refused for this gate set")]
    Indefinite,
    #[error("quaternion does not normalize the reference order")]
    NotTwoSided,
    #[error("unit is not reachable from the configured unit generators")]
    UnitNotGenerated,
    #[error("no descent step exists; synthesis aborted: {0}")]
    DescentStuck(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line frontend.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NormNotSupported { .. } | Error::UnknownLabel(_) => 2,
            Error::NotPrincipal(_) | Error::ClassNumber(_) | Error::DescentStuck(_) => 3,
            _ => 1,
        }
    }
}
