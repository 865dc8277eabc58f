//! Error type shared by the parameter maps, the band solver and the
//! exact-diagonalization oracle.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input violates a documented precondition (non-positive coupling,
    /// momentum outside the Brillouin zone, odd ring size, ...).
    Domain(String),
    /// The effective coupling a'(K) was evaluated at its pole ε = -cos K.
    Pole { eps: f64, k: f64 },
    /// A band-equation residual was requested inside the free-state continuum.
    InsideContinuum { eps: f64, k: f64 },
    /// An extraction window contained more than one bound-state candidate.
    Ambiguous(String),
    /// A matrix entry or an input value is NaN or infinite.
    NonFinite(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Pole { eps, k } => {
                write!(f, "pole error: a'(K) diverges at eps = {eps} for K = {k}")
            }
            Error::InsideContinuum { eps, k } => {
                write!(f, "eps = {eps} lies inside the free continuum at K = {k}")
            }
            Error::Ambiguous(msg) => write!(f, "ambiguous spectrum: {msg}"),
            Error::NonFinite(msg) => write!(f, "non-finite value: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
