use thiserror::Error;

use crate::poly::Var;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("cannot parse polynomial {input:?}: {msg}")]
    PolySyntax { input: String, msg: String },
    #[error("diagram is not planar: V - E + F = {euler}, expected 2")]
    NonPlanar { euler: i64 },
    #[error("expected exactly one leg and one head, found {legs} legs and {heads} heads")]
    BadEndpoints { legs: usize, heads: usize },
    #[error("diagram is not connected")]
    DisconnectedSegment,
    #[error("inconsistent orientation: {0}")]
    Orientation(String),
    #[error("cannot substitute a non-unit for {var} appearing with exponent {exponent}")]
    NegativeExponentSubstitution { var: Var, exponent: i32 },
    #[error("state has {got} entries but the diagram has {expected} crossings")]
    PartialState { expected: usize, got: usize },
    #[error("state sum over {crossings} crossings refused without override (limit {limit})")]
    StateSpaceTooLarge { crossings: usize, limit: usize },
    #[error("operation requires a diagram in the plane")]
    NotPlanar,
    #[error("operation requires a knotoid diagram (one leg, one head)")]
    NotAKnotoid,
    #[error("diagrams live on different surfaces or the plane product needs normal diagrams")]
    IncompatibleSurfaces,
    #[error("diagrams do not form a Conway triple: {0}")]
    NotAConwayTriple(String),
    #[error("move does not apply to this diagram")]
    StaleMove,
    #[error("skein recursion exceeded its budget of {0} nodes")]
    RecursionBudgetExceeded(usize),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
