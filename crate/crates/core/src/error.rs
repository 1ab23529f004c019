use thiserror::Error;

/// Every failure the library can report. Variant names double as the
/// stable error identifiers printed by the command-line tool.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("row {order}: length at position {position} is not strictly positive")]
    NonPositiveLength { order: usize, position: usize },

    #[error("row {order}: lengths sum differs from the target by {deviation:e} (tolerance {tol:e})")]
    SumMismatch { order: usize, deviation: f64, tol: f64 },

    #[error("row {order}: expected {expected} lengths, found {found}")]
    WrongCardinality { order: usize, expected: usize, found: usize },

    #[error("invalid exponent p = {p}: {reason}")]
    InvalidExponent { p: f64, reason: &'static str },

    #[error("row {order}: maximum length {max} exceeds the declared upper bound {bound}")]
    UbViolation { order: usize, max: f64, bound: f64 },

    #[error("upper bound did not drop below {value} within {budget} rows past row {frontier}")]
    StalledStream { value: f64, frontier: usize, budget: usize },

    #[error("family construction: {0}")]
    FamilyConstruction(String),

    #[error("spectral row {order}: sum {sum} differs from {target} beyond {tol:e}")]
    TraceIdentityViolation { order: usize, sum: f64, target: f64, tol: f64 },

    #[error("eigenvalue ({n}, {m}) = {value} is not positive")]
    NonPositiveEigenvalue { n: usize, m: usize, value: f64 },

    #[error("row {order} exceeds the configured spectral limit n_max = {n_max}")]
    RowLimit { order: usize, n_max: usize },

    #[error("{what}: argument {value} is outside the domain {domain}")]
    ArgumentOutOfDomain { what: &'static str, value: f64, domain: &'static str },

    #[error("Legendre table (m = {m}, x = {x}): Wronskian residual {residual:e} at n = {n}")]
    PrecisionLoss { n: usize, m: usize, x: f64, residual: f64 },

    #[error("eigenvalue formula gate failed: {0}")]
    GateFailure(String),

    #[error("quadrature did not converge: estimated error {estimate:e} after {panels} panels")]
    QuadratureNonConvergence { estimate: f64, panels: usize },

    #[error("no bracket found for target {target}: {reason}")]
    BracketNotFound { target: f64, reason: String },

    #[error("coefficient map is not monotone near xi0 = {xi0}")]
    NonMonotoneMap { xi0: f64 },

    #[error("{nodes} quadrature nodes exceed the budget of {budget}")]
    BudgetExceeded { nodes: usize, budget: usize },

    #[error("eigenvalue solve failed: {0}")]
    EigenSolveFailure(String),

    #[error("invalid family spec `{spec}`: {reason}")]
    InvalidFamilySpec { spec: String, reason: String },

    #[error("custom family: {0}")]
    CustomFamily(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable identifier of the variant, e.g. `"BracketNotFound"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonPositiveLength { .. } => "NonPositiveLength",
            Error::SumMismatch { .. } => "SumMismatch",
            Error::WrongCardinality { .. } => "WrongCardinality",
            Error::InvalidExponent { .. } => "InvalidExponent",
            Error::UbViolation { .. } => "UbViolation",
            Error::StalledStream { .. } => "StalledStream",
            Error::FamilyConstruction(_) => "FamilyConstruction",
            Error::TraceIdentityViolation { .. } => "TraceIdentityViolation",
            Error::NonPositiveEigenvalue { .. } => "NonPositiveEigenvalue",
            Error::RowLimit { .. } => "RowLimit",
            Error::ArgumentOutOfDomain { .. } => "ArgumentOutOfDomain",
            Error::PrecisionLoss { .. } => "PrecisionLoss",
            Error::GateFailure(_) => "GateFailure",
            Error::QuadratureNonConvergence { .. } => "QuadratureNonConvergence",
            Error::BracketNotFound { .. } => "BracketNotFound",
            Error::NonMonotoneMap { .. } => "NonMonotoneMap",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::EigenSolveFailure(_) => "EigenSolveFailure",
            Error::InvalidFamilySpec { .. } => "InvalidFamilySpec",
            Error::CustomFamily(_) => "CustomFamily",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
