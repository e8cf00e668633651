use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("grid of {requested} cells exceeds the budget of {budget}")]
    CellBudget { requested: usize, budget: usize },

    #[error("tail of the {sequence} sequence is not decreasing for ell = {ell} (scanned to n = {n_cut})")]
    TailNotDecreasing {
        ell: usize,
        sequence: &'static str,
        n_cut: usize,
    },

    #[error("{what}: value {value} at (n = {n}, ell = {ell}) exceeds limit {limit}")]
    BoundViolated {
        what: String,
        n: usize,
        ell: usize,
        value: f64,
        limit: f64,
    },

    #[error(
        "large-ell bound increases from ell = {from} ({from_value}) to ell = {to} ({to_value})"
    )]
    NotMonotone {
        from: usize,
        from_value: f64,
        to: usize,
        to_value: f64,
    },

    #[error("negative jump rate {rate} for particle {index}")]
    NegativeRate { index: usize, rate: f64 },

    #[error("need at least 3 points above the noise floor, got {usable}")]
    InsufficientData { usable: usize },

    #[error("rejection sampler exceeded {0} attempts")]
    RejectionCapExceeded(usize),

    #[error("histogram holds no samples")]
    EmptyHistogram,

    #[error("unsupported potential exponent alpha = {0} (expected 0 or 2)")]
    UnsupportedAlpha(u32),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
