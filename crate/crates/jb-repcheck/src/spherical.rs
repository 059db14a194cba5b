//! Spherical vectors: the compact-picture vector Delta(-theta y, y)^{-nu-p/2}
//! with exact first derivatives, and the Fourier-picture vectors given by
//! K-Bessel functions, certified through their radial differential systems.

use crate::{RepError, RepParams, Result};
use jb_besselop::field::ScalarField;
use jb_besselop::radial::RadialField;
use jb_core::Element;
use jb_kbessel::{IntegralForm, KBesselParams};
use jb_cone::ConeContext;
use nalgebra::DVector;
use std::sync::Arc;

/// phi_nu(y) = Delta(-theta y, y)^{-nu - p/2} on V^-.
pub struct PhiNu {
    params: RepParams,
}

pub fn phi_nu_field(params: &RepParams) -> PhiNu {
    PhiNu { params: params.clone() }
}

impl PhiNu {
    fn exponent(&self) -> f64 {
        -(self.params.nu + self.params.jp.constants().p / 2.0)
    }

    pub fn eval(&self, y: &Element) -> Result<f64> {
        let jp = &self.params.jp;
        let ybar = jp.theta(y);
        let delta = jp.pair_det(&ybar.scale(-1.0), y)?;
        Ok(delta.powf(self.exponent()))
    }
}

impl ScalarField for PhiNu {
    fn value(&self, ycoords: &DVector<f64>) -> f64 {
        let y = Element::minus(ycoords.clone());
        self.eval(&y).unwrap_or(f64::NAN)
    }

    fn gradient(&self, ycoords: &DVector<f64>) -> Option<DVector<f64>> {
        // d_v log Delta(-ybar, y) = tau(theta v, y^{-ybar}) - tau((-ybar)^y, v)
        let jp = &self.params.jp;
        let y = Element::minus(ycoords.clone());
        let ybar = jp.theta(&y);
        let x0 = ybar.scale(-1.0);
        let dec = jp.bergman_decompose(&x0, &y).ok()?;
        let val = self.value(ycoords);
        let s = self.exponent();
        // gradient of tau(theta v, q1): theta^T G^T-contraction; of
        // tau(q2, v): (q2^T G)^T
        let n = ycoords.len();
        let theta_m = jb_core::linalg::matrix_of(n, |v| {
            jp.theta(&Element::minus(v.clone())).coords
        });
        let g = jp.gram();
        // tau(theta v, q1) = (theta_m v)^T G q1
        let grad_log = theta_m.transpose() * (g * &dec.y_qx.coords)
            - (dec.x_qy.coords.transpose() * g).transpose();
        Some(grad_log * (s * val))
    }
}

/// Which spherical vector the residual certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphericalCase {
    /// Psi_nu on the open orbit: order (p - e + 1)/2 - nu on the rank-r cone.
    Full,
    /// Psi_k on the rank-k orbit at nu = -nu_k: order (kd - e + 1)/2.
    Orbit(usize),
}

#[derive(Debug, Clone)]
pub struct SphericalityReport {
    /// max over samples and tangential axes of |B^i F - t_i F| / |t_i F|
    pub radial_residual: f64,
    /// max over samples of the trailing-component magnitude relative to F
    pub tail_residual: f64,
    /// whether the trailing components are required to vanish (d+ = d-)
    pub tail_certified: bool,
}

/// K-Bessel radial profile F(t) = K_mu((t_1/2)^2, ..), as a radial field.
pub struct KBesselProfile {
    pub kp: KBesselParams,
}

impl RadialField for KBesselProfile {
    fn value(&self, t: &[f64]) -> f64 {
        let mut s: Vec<f64> = t.iter().map(|x| (x / 2.0) * (x / 2.0)).collect();
        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
        jb_kbessel::eval::radial_eval(&self.kp, &s, IntegralForm::Two)
            .map(|e| e.value)
            .unwrap_or(f64::NAN)
    }
}

/// Differential characterization of the spherical vector: the radial
/// components satisfy B^i F = t_i F, and for d+ = d- pairs the trailing
/// components vanish. Orders:
///   full picture: mu = (p - e + 1)/2 - nu on the rank-r cone,
///   orbit k:      mu = (kd - e + 1)/2 on the rank-k cone.
pub fn sphericality_residual(
    params: &RepParams,
    case: SphericalCase,
    samples: &[Vec<f64>],
) -> Result<SphericalityReport> {
    let jp = &params.jp;
    let c = *jp.constants();
    let equal_mult = c.d_plus == c.d_minus;
    let (k, mu, lambda) = match case {
        SphericalCase::Full => {
            if !equal_mult {
                return Err(RepError::UnequalMultiplicities { dp: c.d_plus, dm: c.d_minus });
            }
            (c.rank, (c.p - c.e + 1.0) / 2.0 - params.nu, params.lambda())
        }
        SphericalCase::Orbit(k) => {
            if k >= 2 && !equal_mult {
                return Err(RepError::UnequalMultiplicities { dp: c.d_plus, dm: c.d_minus });
            }
            let verdict = jb_orbits::measure_existence(jp, k)?;
            if !verdict.exists {
                return Err(RepError::NoMeasure(format!("case {}", verdict.case.label())));
            }
            (k, ((k as f64) * c.d - c.e + 1.0) / 2.0, (k as f64) * c.d)
        }
    };
    // the cone of A^(k) carries the Peirce multiplicity dim A_12 = d_plus
    let d_cone = if k >= 2 { c.d_plus as usize } else { 1 };
    let cone = Arc::new(ConeContext::synthetic(k, d_cone.max(1)).map_err(RepError::Cone)?);
    let mut kp = KBesselParams::new(cone, mu);
    kp.quad.nodes_per_axis = 96;
    let profile = KBesselProfile { kp };
    let mut radial: f64 = 0.0;
    let mut tail: f64 = 0.0;
    for t in samples {
        assert_eq!(t.len(), k);
        let fv = profile.value(t);
        let comps = match case {
            SphericalCase::Full => {
                jb_besselop::radial_components_full(jp, lambda, &profile, t)
            }
            SphericalCase::Orbit(k) => {
                jb_besselop::radial_components_orbit(jp, k, &profile, t)
            }
        };
        for i in 0..k {
            radial = radial.max((comps[i] - t[i] * fv).abs() / (t[i] * fv).abs());
        }
        for comp in comps.iter().skip(k) {
            tail = tail.max(comp.abs() / fv.abs());
        }
    }
    Ok(SphericalityReport { radial_residual: radial, tail_residual: tail, tail_certified: equal_mult })
}
