use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// Each variant maps onto one of the process exit codes used by the CLI
/// (see [`Error::exit_code`]).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("radicand {0} is not a squarefree integer >= 2")]
    InvalidRadicand(u64),

    #[error("field mismatch: Q(sqrt {left}) vs Q(sqrt {right})")]
    FieldMismatch { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("radicand {0} is not totally positive")]
    NotTotallyPositive(String),

    #[error("element is not an algebraic integer: {0}")]
    NonIntegral(String),

    #[error("unsupported radicand {0} for unit search (supported: 2..=1000)")]
    UnsupportedRadicand(u64),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("root isolation failed: {0}")]
    RootIsolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("traces outside the supported tower: {0}")]
    OutsideTower(String),

    #[error("Fricke identity violated: expected tr[A,B] = {expected}, got {given}")]
    FrickeMismatch { expected: String, given: String },

    #[error("degenerate trace data: {0}")]
    DegenerateTraces(String),

    #[error("Karcher iteration cap of {iterations} exceeded (gradient norm {gradient_norm:e})")]
    IterationCap { iterations: usize, gradient_norm: f64 },

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) | Error::RootIsolation(_) => 1,
            Error::DegenerateTraces(_) => 3,
            Error::IterationCap { .. } => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
