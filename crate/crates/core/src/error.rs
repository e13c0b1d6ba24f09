use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("construction does not fit in {slots} slots (needs {needed})")]
    InfeasibleHorizon { slots: usize, needed: usize },
    #[error("user {user} never completes: zero secrecy rate while hovering overhead")]
    NeverCompletes { user: usize },
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("penalized objective decreased at iteration {iteration}: {previous} -> {current}")]
    NonMonotoneObjective {
        iteration: usize,
        previous: f64,
        current: f64,
    },
    #[error("upper end of bisection bracket ({n_max} slots) is not feasible")]
    InfeasibleBracket { n_max: usize },
    #[error("instance too large for exhaustive enumeration: {combinations} combinations (limit {limit})")]
    InstanceTooLarge { combinations: u128, limit: u128 },
    #[error("invalid options: {0}")]
    InvalidOptions(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
