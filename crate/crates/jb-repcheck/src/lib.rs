//! Representation-theoretic verification layer: the infinitesimal actions
//! in the non-compact and Fourier pictures, spherical vectors and their
//! differential characterization, norm membership on the orbits, the
//! restriction intertwiner, and the rank-one Fourier normalization check.

pub mod dpi;
pub mod fourier;
pub mod intertwiner;
pub mod norms;
pub mod spherical;

use jb_core::JordanPairStructure;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("operation requires d+ = d-, but this pair has d+ = {dp}, d- = {dm}")]
    UnequalMultiplicities { dp: f64, dm: f64 },
    #[error("no equivariant measure: {0}")]
    NoMeasure(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Orbit(#[from] jb_orbits::OrbitError),
    #[error(transparent)]
    KBessel(#[from] jb_kbessel::KBesselError),
    #[error(transparent)]
    Cone(#[from] jb_cone::ConeError),
    #[error(transparent)]
    Jp(#[from] jb_core::JpError),
}

pub type Result<T> = std::result::Result<T, RepError>;

/// Principal series parameters: the induction parameter nu, the operator
/// order lambda = p - 2 nu, and the reducibility points nu_k = p/2 - k d/2.
#[derive(Clone)]
pub struct RepParams {
    pub jp: Arc<JordanPairStructure>,
    pub nu: f64,
}

impl RepParams {
    pub fn new(jp: Arc<JordanPairStructure>, nu: f64) -> Self {
        RepParams { jp, nu }
    }

    pub fn lambda(&self) -> f64 {
        self.jp.constants().p - 2.0 * self.nu
    }

    /// nu_k = p/2 - k d/2 for k = 0..r-1; nu_0 = p/2.
    pub fn nu_k(jp: &JordanPairStructure, k: usize) -> f64 {
        let c = jp.constants();
        c.p / 2.0 - (k as f64) * c.d / 2.0
    }
}

pub use dpi::{commutator_residual_fourier, commutator_residual_noncompact, Generator};
pub use fourier::fourier_rank1_check;
pub use intertwiner::{intertwiner_pairing_residual, kernel_property_residual};
pub use norms::{norm_membership, NormReport};
pub use spherical::{phi_nu_field, sphericality_residual, PhiNu, SphericalCase, SphericalityReport};
