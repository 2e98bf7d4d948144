use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular input: {0}")]
    SingularInput(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("divergent integral: {0}")]
    Divergent(String),
    #[error("extrapolation: {0}")]
    Extrapolation(String),
    #[error("no root: {0}")]
    NoRoot(String),
    #[error("not balanceable: {0}")]
    NotBalanceable(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
