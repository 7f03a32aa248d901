use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m_ij - conj(m_ji)| = {max_asymmetry:e}")]
    NonHermitian { max_asymmetry: f64 },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("root not bracketed: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    BracketFailure { f_lo: f64, f_hi: f64 },

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    /// The closed forms divide by 2 eta^2 -/+ eta b1, which vanish for J = 0.
    #[error("closed form unavailable for J = 0; use the eigensolver path")]
    ClosedFormUnavailable,

    #[error("temperature must be positive here (kbT = 0 is the ground state)")]
    ZeroTemperature,

    #[error("invalid temperature kbT = {0}")]
    InvalidTemperature(f64),

    #[error("{what} = {value} is out of range")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("no envelope for J = 0")]
    NoEnvelope,

    #[error("invalid scan spec: {}", .0.join("; "))]
    InvalidSpec(Vec<String>),

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
