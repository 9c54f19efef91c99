use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by the whole library.
///
/// A number of variants are *refusals*: the inputs violate a documented
/// precondition (the function is not strict, an order lies above the
/// admissible threshold, ...). Refusals are distinguished from failed
/// computations so that front ends can map them to a dedicated exit code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("function takes the value +inf on the requested range: {0}")]
    InfiniteValue(String),
    #[error("degenerate function: {0}")]
    Degenerate(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("function is not strict: q_phi = {q_phi}, p_phi = {p_phi}")]
    NotStrict { q_phi: f64, p_phi: f64 },
    #[error("squeezing constants unbounded on the grid: {0}")]
    SqueezingViolation(String),
    #[error("modular never dropped below 1 within the bracket growth limit")]
    DivergentModular,
    #[error("symbol evaluation failed: {0}")]
    SymbolEvaluation(String),
    #[error("derivative order (x^{x_order:?}, xi^{xi_order:?}) unavailable and finite-difference fallback disabled")]
    MissingDerivative {
        x_order: Vec<usize>,
        xi_order: Vec<usize>,
    },
    #[error("phase function rejected: {0}")]
    PhaseRejected(String),
    #[error("operator order outside the admissible range: {0}")]
    OrderViolation(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("unknown catalog entry: {0}")]
    UnknownCatalogEntry(String),
    #[error("serialization: {0}")]
    Serialization(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True when the error reports a refused precondition rather than a
    /// computation that ran and failed.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::InfiniteValue(_)
                | Error::Degenerate(_)
                | Error::Precondition(_)
                | Error::NotStrict { .. }
                | Error::OrderViolation(_)
                | Error::PhaseRejected(_)
                | Error::ResourceLimit(_)
                | Error::InvalidGrid(_)
                | Error::UnknownCatalogEntry(_)
                | Error::MissingDerivative { .. }
        )
    }
}
