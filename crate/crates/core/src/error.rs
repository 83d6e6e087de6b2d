//! Error type shared by all solver modules.

/// Failures surfaced by grid construction, linear solves and the PGD driver.
///
/// Contract violations (dimension mismatches, invalid indices) panic instead;
/// these variants cover conditions that depend on runtime data.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("iterative solver did not converge within {iterations} iterations (relative residual {last_residual:.3e})")]
    MaxIterations {
        iterations: usize,
        last_residual: f64,
        /// Relative residual after each iteration, for diagnosis.
        residual_trace: Vec<f64>,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("parameter value {value} outside axis {axis} interval [{lo}, {hi}]")]
    OutOfRange {
        axis: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// Normalization met a factor with zero norm: the enrichment direction is null.
    #[error("zero mode: a separated factor has zero norm")]
    ZeroMode,

    #[error("degenerate coefficient: zero denominator at collocation point {point} of axis {axis}")]
    DegenerateCoefficient { axis: usize, point: usize },

    #[error("empty problem: no Dirichlet data and no right-hand side")]
    EmptyProblem,

    #[error("sweep budget exceeded: {required} solves requested, budget is {budget}")]
    BudgetExceeded { required: usize, budget: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
