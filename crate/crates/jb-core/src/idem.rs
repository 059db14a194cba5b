//! Idempotents, frames, and the rank function.

use crate::element::Element;
use crate::error::{JpError, Result};
use crate::structure::JordanPairStructure;

/// A completed idempotent (e, e') with Q_e e' = e and Q_{e'} e = e'.
#[derive(Debug, Clone)]
pub struct Idempotent {
    pub e: Element,
    pub e_prime: Element,
    pub rank: usize,
}

/// Ordered system of orthogonal primitive tripotents e_1..e_r together with
/// their Cartan partners theta(e_i).
#[derive(Debug, Clone)]
pub struct Frame {
    pub tripotents: Vec<Element>,
    pub duals: Vec<Element>,
}

impl Frame {
    pub fn len(&self) -> usize {
        self.tripotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tripotents.is_empty()
    }
}

pub(crate) fn complete_idempotent(jp: &JordanPairStructure, e: &Element) -> Result<Idempotent> {
    let parts = jp.support_decomposition(e)?;
    if parts.is_empty() {
        return Err(JpError::Invalid("cannot complete the zero element".into()));
    }
    let n = e.dim();
    let mut e_prime = Element::zero(n, e.side.flip());
    let mut rank = 0usize;
    for (t, u) in &parts {
        let ub = jp.theta(u);
        e_prime = e_prime.add(&ub.scale(1.0 / t));
        rank += jp.tau(u, &ub).round() as usize;
    }
    let idem = Idempotent { e: e.clone(), e_prime, rank };
    validate_idempotent(jp, &idem)?;
    Ok(idem)
}

pub(crate) fn validate_idempotent(jp: &JordanPairStructure, idem: &Idempotent) -> Result<()> {
    let tol = jp.config().idem_tol;
    let r1 = jp.quad(&idem.e, &idem.e_prime)?.sub(&idem.e).norm();
    let r2 = jp.quad(&idem.e_prime, &idem.e)?.sub(&idem.e_prime).norm();
    let scale = 1.0 + idem.e.norm() + idem.e_prime.norm();
    let residual = (r1 + r2) / scale;
    if residual > tol {
        return Err(JpError::NotIdempotent { residual, tol });
    }
    Ok(())
}

/// Rank via dim [x] = dim Q_x V^-, matched against the Peirce-2 dimension
/// table k (e+1) + k(k-1) d.
pub(crate) fn rank_of(jp: &JordanPairStructure, x: &Element) -> Result<usize> {
    let q = jp.q_matrix(x);
    let svd = q.svd(false, false);
    let smax = svd.singular_values.max();
    if smax <= 0.0 {
        return Ok(0);
    }
    let cfg = jp.config();
    let mut dim = 0usize;
    for sv in svd.singular_values.iter() {
        let ratio = sv / smax;
        if ratio > cfg.rank_band {
            dim += 1;
        } else if ratio > cfg.rank_tol {
            return Err(JpError::RankAmbiguous {
                ratio,
                lo: cfg.rank_tol,
                hi: cfg.rank_band,
            });
        }
    }
    let c = jp.constants();
    for k in 0..=c.rank {
        let expect = (k as f64) * (c.e + 1.0) + (k as f64) * (k as f64 - 1.0) * c.d;
        if (expect - dim as f64).abs() < 0.5 {
            return Ok(k);
        }
    }
    Err(JpError::Invalid(format!(
        "principal inner ideal dimension {dim} matches no rank 0..{}",
        c.rank
    )))
}
