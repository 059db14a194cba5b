use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConeError {
    #[error("element is not in the open cone (spectral value {0:.3e})")]
    NotInCone(f64),
    #[error("element is not invertible (spectral value {0:.3e})")]
    NotInvertibleInCone(f64),
    #[error("quadrature did not converge: error estimate {estimate:.3e} above tolerance {tol:.3e}")]
    NonConvergence { estimate: f64, tol: f64 },
    #[error("Gindikin Gamma pole at lambda - (i-1)d/2 = {0}")]
    GammaPole(f64),
    #[error("unsupported cone parameters: {0}")]
    Unsupported(String),
    #[error("integrand must be K-invariant for the radial rule")]
    NotInvariant,
    #[error(transparent)]
    Jp(#[from] jb_core::JpError),
}

pub type Result<T> = std::result::Result<T, ConeError>;
