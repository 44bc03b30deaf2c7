use thiserror::Error;

/// Errors produced while evaluating sums, constants or identities.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite term at index {index}")]
    NonFiniteTerm { index: usize },
    #[error("empty range: end {end} < start {start}")]
    EmptyRange { start: u64, end: u64 },
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("not alternating: sign pattern broken at n = {0}")]
    NotAlternating(u64),
    #[error("interior singularity: integrand not finite at x = {0}")]
    InteriorSingularity(f64),
    #[error("divergent zeta argument s = {0}")]
    DivergentZeta(i64),
    #[error("divergent: {0}")]
    Divergent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no explicit formula for k = {0}")]
    NoExplicitFormula(u32),
    #[error("no closed form for k = {0}")]
    NoClosedForm(u32),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("parameter out of domain for {id}: {constraint}")]
    Domain { id: String, constraint: String },
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
