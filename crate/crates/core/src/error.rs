use thiserror::Error;

use crate::integrals::{FcidumpError, IntegralError};
use crate::pauli::PauliError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Crate-level error; each module keeps its own error type and converts into this one.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Fcidump(#[from] FcidumpError),
    #[error(transparent)]
    Integrals(#[from] IntegralError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid excitation input: {0}")]
    Excitation(String),
    #[error("tapering failed: {0}")]
    Tapering(String),
    #[error("simulation error: {0}")]
    Simulation(String),
    #[error("optimizer error: {0}")]
    Optimizer(String),
    #[error("{what} needs {needed} qubits but the limit is {limit}; {hint}")]
    TooLarge {
        what: &'static str,
        needed: usize,
        limit: usize,
        hint: &'static str,
    },
}
