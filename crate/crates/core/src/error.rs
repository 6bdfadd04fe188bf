use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Fock basis: {0}")]
    InvalidBasis(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("singular transform: 1 + lambda*beta = {0} must be positive")]
    SingularTransform(f64),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("frequency selection failed: requires {requirement}, got {got}")]
    FrequencyDomain { requirement: &'static str, got: f64 },

    #[error("unsupported frequency mode for this operation: {0}")]
    UnsupportedMode(String),

    #[error("QR iteration failed to deflate eigenvalue index {index} after {sweeps} sweeps")]
    Convergence { index: usize, sweeps: usize },

    #[error("shift {re}+{im}i is singular for inverse iteration")]
    SingularShift { re: f64, im: f64 },

    #[error("basis of {n_basis} states too small, need more than {required}")]
    BasisTooSmall { n_basis: usize, required: usize },

    #[error("degenerate unperturbed spectrum: diagonal coefficient is zero")]
    DegenerateSpectrum,

    #[error("grid half-width {half_width} does not reach turning point {turning_point}")]
    GridTooNarrow { half_width: f64, turning_point: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
