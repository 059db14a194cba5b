use thiserror::Error;

/// Errors surfaced by the Jordan pair kernel.
#[derive(Debug, Error)]
pub enum JpError {
    #[error("unsupported family `{0}`")]
    UnsupportedFamily(String),
    #[error("malformed algebra spec `{0}` (expected sym:R, herm_c:R, spin:N or rect:PxQ)")]
    MalformedSpec(String),
    #[error("dimension {dim} exceeds configured maximum {max}")]
    DimensionOverflow { dim: usize, max: usize },
    #[error("parity mismatch: expected {expected:?} element, got {got:?}")]
    ParityMismatch {
        expected: crate::element::Side,
        got: crate::element::Side,
    },
    #[error("Bergman operator is singular (|det| = {det:.3e}, condition cap {cap:.1e})")]
    SingularBergman { det: f64, cap: f64 },
    #[error("branch ambiguity: homotopy for the pair determinant crosses a zero of Det B at s = {s:.4}")]
    BranchAmbiguity { s: f64 },
    #[error("numerical rank ambiguous: singular value ratio {ratio:.3e} inside band [{lo:.1e}, {hi:.1e}]")]
    RankAmbiguous { ratio: f64, lo: f64, hi: f64 },
    #[error("eigenvalue clustering failure: spectrum value {value:.6} not within {tol:.1e} of {{0,1,2}}")]
    SpectrumClustering { value: f64, tol: f64 },
    #[error("element is not invertible in its Peirce-2 space")]
    NotInvertible,
    #[error("not an idempotent: residual {residual:.3e} exceeds tolerance {tol:.1e}")]
    NotIdempotent { residual: f64, tol: f64 },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, JpError>;
