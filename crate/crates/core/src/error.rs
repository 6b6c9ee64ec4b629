use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid network spec: {0}")]
    InvalidSpec(String),

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not unitary (max residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("site {site} out of range 1..={s}")]
    SiteOutOfRange { site: usize, s: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("degenerate time grid: {0}")]
    DegenerateGrid(String),

    #[error("Fock sector has {size} states, limit is {limit}")]
    SectorTooLarge { size: u128, limit: usize },

    #[error("Fock vectors live in different bases")]
    BasisMismatch,
}
