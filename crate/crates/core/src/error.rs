use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid chain parameters: {0}")]
    InvalidParams(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("order {order} exceeds the stable evaluation bound {max}")]
    Overflow { order: usize, max: usize },

    #[error("Bessel order {order} outside the supported range |n| <= {max}")]
    Range { order: i64, max: usize },

    #[error("mode {mode} has detuning {detuning:e}, below the floor {floor:e}")]
    SingularDetuning { mode: usize, detuning: f64, floor: f64 },

    #[error("operation requires the {required} topology")]
    Topology { required: &'static str },

    #[error("mode {mode} is {actual} but the formula requires a {required} mode")]
    ModeDegeneracy {
        mode: usize,
        actual: &'static str,
        required: &'static str,
    },

    #[error("regime precondition failed: {0}")]
    Precondition(String),

    #[error("Bessel series not converged before order {max_order}")]
    Truncation { max_order: usize },
}
