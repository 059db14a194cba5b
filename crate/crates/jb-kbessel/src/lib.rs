//! The K-Bessel function of a symmetric cone: both integral forms, the
//! radial differential system that certifies it, integrability thresholds
//! with the Gindikin Gamma closed form, and the lower-rank restriction
//! property.

pub mod eval;
pub mod integrability;
pub mod macdonald;
pub mod ode;
pub mod restriction;

use jb_cone::{ConeContext, QuadratureSpec};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KBesselError {
    #[error("radial point must be strictly ordered and positive, got {0:?}")]
    Unordered(Vec<f64>),
    #[error("separation margin {margin:.3e} too small for finite-difference steps {h:.3e}")]
    SeparationTooSmall { margin: f64, h: f64 },
    #[error("unsupported cone rank {0} for this evaluator")]
    UnsupportedRank(usize),
    #[error("extrapolation unstable: {0}")]
    ExtrapolationUnstable(String),
    #[error(transparent)]
    Cone(#[from] jb_cone::ConeError),
    #[error(transparent)]
    Jp(#[from] jb_core::JpError),
}

pub type Result<T> = std::result::Result<T, KBesselError>;

/// Parameters of the K-Bessel function on a cone: the cone itself, the
/// order, and the quadrature policy.
#[derive(Clone)]
pub struct KBesselParams {
    pub cone: Arc<ConeContext>,
    pub lambda: f64,
    pub quad: QuadratureSpec,
}

impl KBesselParams {
    pub fn new(cone: Arc<ConeContext>, lambda: f64) -> Self {
        KBesselParams { cone, lambda, quad: QuadratureSpec::default() }
    }

    pub fn rank(&self) -> usize {
        self.cone.rank()
    }

    /// Peirce multiplicity of the cone.
    pub fn d(&self) -> f64 {
        self.cone.mult_d()
    }

    /// dim/rank of the cone (the n/r in the integral forms).
    pub fn dim_over_rank(&self) -> f64 {
        self.cone.dim_over_rank()
    }
}

/// A point of the open spectral chamber t_1 > ... > t_k > 0.
#[derive(Debug, Clone)]
pub struct RadialPoint {
    t: Vec<f64>,
}

impl RadialPoint {
    pub fn new(t: Vec<f64>) -> Result<Self> {
        if t.is_empty() || t.iter().any(|&x| !(x > 0.0)) {
            return Err(KBesselError::Unordered(t));
        }
        for i in 1..t.len() {
            if !(t[i - 1] > t[i]) {
                return Err(KBesselError::Unordered(t));
            }
        }
        Ok(RadialPoint { t })
    }

    pub fn values(&self) -> &[f64] {
        &self.t
    }

    /// Smallest gap, including the distance of t_k to the boundary 0.
    pub fn margin(&self) -> f64 {
        let mut m = self.t[self.t.len() - 1];
        for i in 1..self.t.len() {
            m = m.min(self.t[i - 1] - self.t[i]);
        }
        m
    }
}

pub use eval::{kbessel_point, kbessel_radial, IntegralForm};
pub use integrability::{integrability_check, integrability_verdict, IntegrabilityMode, IntegrabilityVerdict};
pub use macdonald::macdonald_k;
pub use ode::ode_residual;
pub use restriction::restriction_ratio_check;
