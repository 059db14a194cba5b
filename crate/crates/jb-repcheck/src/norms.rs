//! L^1 / L^2 membership of the Fourier-picture spherical vector on the
//! rank-k orbit: the orbit integral reduces through s = (t/2)^2 to an
//! integrability instance of the cone K-Bessel function, whose inequalities
//! are checked symbolically alongside the numeric norm.

use crate::spherical::KBesselProfile;
use crate::{RepError, RepParams, Result};
use jb_besselop::radial::RadialField;
use jb_cone::ConeContext;
use jb_kbessel::{IntegrabilityMode, KBesselParams};
use jb_orbits::{orbit_integrate_radial, OrbitContext};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct NormReport {
    pub finite: bool,
    pub value: f64,
    /// reduced cone-integrability exponent mu = (r-k+1)d/2 + b/4 - 1
    pub reduced_mu: f64,
    /// K-Bessel order of the profile, mu_k = (kd - e + 1)/2
    pub order: f64,
}

/// Norm of Psi_k on the rank-k orbit: mode selects L^1 or L^2. The verdict
/// comes from the threshold inequalities of the reduced instance, the value
/// from polar quadrature of K^m against J(t).
pub fn norm_membership(
    params: &RepParams,
    k: usize,
    mode: IntegrabilityMode,
) -> Result<NormReport> {
    let jp = &params.jp;
    let c = *jp.constants();
    if k == 0 {
        // the zero orbit is a point: the constant vector is trivially in
        // both spaces
        return Ok(NormReport { finite: true, value: 1.0, reduced_mu: 0.0, order: 0.5 * (1.0 - c.e) });
    }
    if k >= 2 && c.d_plus != c.d_minus {
        return Err(RepError::UnequalMultiplicities { dp: c.d_plus, dm: c.d_minus });
    }
    let ctx = OrbitContext::new(jp.clone(), k)?;
    if !ctx.verdict().exists {
        return Err(RepError::NoMeasure(format!("case {}", ctx.verdict().case.label())));
    }
    let order = ((k as f64) * c.d - c.e + 1.0) / 2.0;
    let reduced_mu = (c.rank as f64 - k as f64 + 1.0) * c.d / 2.0 + c.b / 4.0 - 1.0;
    // reduced instance on the rank-k cone with multiplicity d
    let d_cone = if k >= 2 { c.d_plus as usize } else { 1 };
    let cone = Arc::new(ConeContext::synthetic(k, d_cone.max(1)).map_err(RepError::Cone)?);
    let mut kp = KBesselParams::new(cone, order);
    kp.quad.nodes_per_axis = 80;
    let finite = jb_kbessel::integrability_verdict(&kp, reduced_mu, mode);
    let profile = KBesselProfile { kp };
    let quad = jb_cone::QuadratureSpec { nodes_per_axis: 72, ..Default::default() };
    let power = match mode {
        IntegrabilityMode::L1 => 1,
        IntegrabilityMode::L2 => 2,
    };
    let value = orbit_integrate_radial(
        &ctx,
        &|t: &[f64]| profile.value(t).powi(power),
        &quad,
    )?
    .value;
    Ok(NormReport { finite, value, reduced_mu, order })
}
