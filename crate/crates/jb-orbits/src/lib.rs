//! Rank varieties and their Levi orbits: the local chart x -> x + Q_{x_1}
//! x_2^{-1}, the pullback group action, polar coordinates, existence and
//! Jacobians of equivariant measures, and orbit integration.

pub mod chart;
pub mod haar;
pub mod integrate;
pub mod measure;

use jb_core::{Element, Idempotent, JordanPairStructure, JpError, PeirceDecomposition};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("x_2 component is not invertible in the Peirce-2 space (min singular value ratio {0:.2e})")]
    SingularX2(f64),
    #[error("no equivariant measure on this orbit: {0}")]
    NoMeasure(String),
    #[error("measure table and trace certificate disagree for k = {k}: table {table}, certificate {certificate}")]
    CertificateMismatch { k: usize, table: bool, certificate: bool },
    #[error("radial point must be strictly ordered positive, got {0:?}")]
    Unordered(Vec<f64>),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Jp(#[from] JpError),
}

pub type Result<T> = std::result::Result<T, OrbitError>;

/// Context for the rank-k variety and the orbit of e_1 + .. + e_k.
pub struct OrbitContext {
    jp: Arc<JordanPairStructure>,
    k: usize,
    idem: Idempotent,
    peirce: PeirceDecomposition,
    verdict: MeasureVerdict,
}

/// Existence verdict for the L-equivariant measure, with the case label of
/// the classification and the numerical trace certificate.
#[derive(Debug, Clone)]
pub struct MeasureVerdict {
    pub exists: bool,
    pub lambda_char: f64,
    pub case: MeasureCase,
    /// max |trace| over the certificate directions (1 <= k <= r-1 only)
    pub certificate_residual: Option<f64>,
    /// dimension of the certificate space
    pub certificate_dim: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureCase {
    ZeroOrbit,
    Interior,
    OpenUnital,
    OpenNonUnital,
    RectException,
}

impl MeasureCase {
    pub fn label(&self) -> &'static str {
        match self {
            MeasureCase::ZeroOrbit => "k=0",
            MeasureCase::Interior => "interior-k",
            MeasureCase::OpenUnital => "open-unital",
            MeasureCase::OpenNonUnital => "open-nonunital",
            MeasureCase::RectException => "rect-exception",
        }
    }
}

impl OrbitContext {
    pub fn new(jp: Arc<JordanPairStructure>, k: usize) -> Result<Self> {
        if k < 1 || k > jp.rank() {
            return Err(OrbitError::Unsupported(format!(
                "orbit rank {k} outside 1..={}",
                jp.rank()
            )));
        }
        let idem = jp.complete_idempotent(&jp.frame_sum(k))?;
        let peirce = jp.peirce(&idem)?;
        let verdict = measure::measure_existence(&jp, k)?;
        Ok(OrbitContext { jp, k, idem, peirce, verdict })
    }

    pub fn pair(&self) -> &Arc<JordanPairStructure> {
        &self.jp
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn idem(&self) -> &Idempotent {
        &self.idem
    }

    pub fn peirce(&self) -> &PeirceDecomposition {
        &self.peirce
    }

    pub fn verdict(&self) -> &MeasureVerdict {
        &self.verdict
    }

    /// b_t = t_1 e_1 + ... + t_k e_k; with an automorphism m applied when given.
    pub fn polar_point(&self, t: &[f64], m: Option<&haar::Automorphism>) -> Result<Element> {
        if t.len() != self.k
            || t.iter().any(|&x| !(x > 0.0))
            || t.windows(2).any(|w| !(w[0] > w[1]))
        {
            return Err(OrbitError::Unordered(t.to_vec()));
        }
        let b = self.jp.b_t(t);
        Ok(match m {
            Some(a) => a.apply_plus(&b),
            None => b,
        })
    }
}

pub use chart::{chart_forward, chart_inverse, pullback_action, v2_inverse};
pub use integrate::{fiber_jacobian, jacobian_j, orbit_integrate_radial, pullback_density};
pub use measure::measure_existence;
