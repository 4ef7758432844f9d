use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("pole: {factor} vanishes at s = {s}")]
    Pole { factor: String, s: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn pole(factor: impl Into<String>, s: num_complex::Complex64) -> Self {
        Error::Pole { factor: factor.into(), s: format!("{}{:+}i", s.re, s.im) }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
