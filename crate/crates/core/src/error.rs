use std::fmt;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("overflow in {op} at x = {x}")]
    Overflow { op: &'static str, x: f64 },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("evaluation error: {0}")]
    Eval(String),

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("invalid problem: {0}")]
    Problem(String),

    #[error("interval error: {0}")]
    Interval(String),

    #[error("subgrid alignment error: {0}")]
    SubgridAlignment(String),

    #[error("the problem has no constraint integrand")]
    MissingConstraint,

    #[error("solver did not converge after {iterations} iterations (last KKT norm {kkt_norm:.3e})")]
    NonConvergence { iterations: usize, kkt_norm: f64 },

    #[error("constraint cannot be satisfied: |I(y) - l| stays at {gap:.3e}")]
    Infeasible { gap: f64 },

    #[error("no stationary point in bracket ({lo}, {hi})")]
    NoStationaryPoint { lo: f64, hi: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("problem file key `{key}`: {msg}")]
    ProblemFile { key: String, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl fmt::Display) -> Self {
        Error::Domain { op, detail: detail.to_string() }
    }

    pub(crate) fn key(key: impl Into<String>, msg: impl fmt::Display) -> Self {
        Error::ProblemFile { key: key.into(), msg: msg.to_string() }
    }

    /// Process exit status for the command-line front end: 1 for usage and
    /// parse problems, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::UnknownIdentifier { .. }
            | Error::Problem(_)
            | Error::Grid(_)
            | Error::GridMismatch(_)
            | Error::ProblemFile { .. }
            | Error::MissingConstraint
            | Error::Io(_)
            | Error::Domain { .. }
            | Error::Interval(_)
            | Error::SubgridAlignment(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
