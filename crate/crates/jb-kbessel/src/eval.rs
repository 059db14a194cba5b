//! Evaluation of the K-Bessel function through its two integral forms.
//!
//! Rank 1 and 2 use deterministic chamber quadrature (with an exact angular
//! reduction at rank 2); rank 3 falls back to Monte Carlo over the cone.

use crate::{KBesselError, KBesselParams, RadialPoint, Result};
use jb_cone::integrate::General;
use jb_cone::quad::{gauss_legendre_ab, half_line_nodes, Estimate, U_MAX};
use jb_core::Element;

/// The two equivalent integral representations.
///
/// Form one integrates e^{-tr(u^{-1}) - (x|u)} Det(u)^{lambda - 2n/r};
/// form two integrates e^{-tr(v) - (x|v^{-1})} Det(v)^{-lambda}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralForm {
    One,
    Two,
}

/// K-Bessel value at a cone element: reduce to the spectral chamber by
/// invariance, then integrate.
pub fn kbessel_point(params: &KBesselParams, x: &Element) -> Result<Estimate> {
    let vals = params.cone.spectral_values(x)?;
    if vals.iter().any(|&v| v <= 0.0) {
        return Err(KBesselError::Cone(jb_cone::ConeError::NotInCone(
            vals.iter().cloned().fold(f64::INFINITY, f64::min),
        )));
    }
    radial_eval(params, &vals, IntegralForm::Two)
}

/// K-Bessel value at b_t for an ordered radial point.
pub fn kbessel_radial(params: &KBesselParams, t: &RadialPoint) -> Result<Estimate> {
    radial_eval(params, t.values(), IntegralForm::Two)
}

/// Evaluate with an explicit choice of integral form (consistency checks).
pub fn kbessel_radial_form(
    params: &KBesselParams,
    t: &RadialPoint,
    form: IntegralForm,
) -> Result<Estimate> {
    radial_eval(params, t.values(), form)
}

/// Spectral values may repeat here (e.g. near-boundary restriction probes),
/// so this takes a plain slice sorted descending.
pub fn radial_eval(params: &KBesselParams, s: &[f64], form: IntegralForm) -> Result<Estimate> {
    match params.rank() {
        1 => Ok(rank1(params, s[0], form)),
        2 => Ok(rank2(params, s, form)),
        3 => monte_carlo(params, s, form),
        r => Err(KBesselError::UnsupportedRank(r)),
    }
}

fn rank1(params: &KBesselParams, s: f64, form: IntegralForm) -> Estimate {
    let lam = params.lambda;
    let n = params.quad.nodes_per_axis.max(32);
    let f = |v: f64| match form {
        // e^{-v - s/v} v^{-lambda}
        IntegralForm::Two => (-v - s / v - lam * v.ln()).exp(),
        // e^{-1/u - s u} u^{lambda - 2}
        IntegralForm::One => (-1.0 / v - s * v + (lam - 2.0) * v.ln()).exp(),
    };
    jb_cone::quad::integrate_half_line(f, n)
}

/// Rank-2 evaluation: the angular average of e^{-(b_s | k b_q k^{-1})} over
/// the cone's automorphisms reduces to a one-dimensional Beta(d/2, d/2)
/// average of the frame overlap, the same law for every rank-2 cone.
fn rank2(params: &KBesselParams, s: &[f64], form: IntegralForm) -> Estimate {
    let lam = params.lambda;
    let d = params.d();
    let nr = params.dim_over_rank();
    let n = params.quad.nodes_per_axis.max(32);
    let n_ang = (n / 4).clamp(12, 48);
    let nodes = half_line_nodes(n, U_MAX);
    // beta = sin^2(phi): Beta(d/2,d/2) density becomes sin(2 phi)^{d-1} d phi
    let ang: Vec<(f64, f64)> = {
        let raw = gauss_legendre_ab(n_ang, 0.0, std::f64::consts::FRAC_PI_2);
        let mut pts: Vec<(f64, f64)> = raw
            .into_iter()
            .map(|(phi, w)| {
                let beta = phi.sin().powi(2);
                ((2.0 * phi).sin().powf(d - 1.0) * w, beta)
            })
            .map(|(w, b)| (b, w))
            .collect();
        let total: f64 = pts.iter().map(|p| p.1).sum();
        for p in &mut pts {
            p.1 /= total;
        }
        pts
    };
    let c_rad = jb_cone::integrate::radial_constant(&params.cone, n)
        .expect("rank-2 calibration cannot hit a Gamma pole");

    let pass = |stride: usize| -> f64 {
        let mut acc = 0.0;
        for (j1, &(g1, wt1_raw)) in nodes.iter().enumerate() {
            if j1 % stride != 0 {
                continue;
            }
            let wt1 = wt1_raw * stride as f64;
            for (j2, &(g2, wt2_raw)) in nodes.iter().enumerate() {
                if j2 % stride != 0 {
                    continue;
                }
                let wt2 = wt2_raw * stride as f64;
                // ordered chamber in gap coordinates: w1 = g1 + g2 > w2 = g2
                let w2 = g2;
                let w1 = g1 + g2;
                let ln_det = w1.ln() + w2.ln();
                let radial_log = match form {
                    IntegralForm::Two => -(w1 + w2) - lam * ln_det,
                    IntegralForm::One => -(1.0 / w1 + 1.0 / w2) + (lam - 2.0 * nr) * ln_det,
                } + d * (w1 - w2).ln()
                    + (wt1 * wt2).ln();
                if radial_log < -745.0 {
                    continue;
                }
                // coupling coordinates: q_i for form 2 uses v^{-1}, form 1 uses u
                let (a1, a2) = match form {
                    IntegralForm::Two => (1.0 / w1, 1.0 / w2),
                    IntegralForm::One => (w1, w2),
                };
                let mut avg = 0.0;
                for &(beta, wb) in &ang {
                    let q1 = beta * a1 + (1.0 - beta) * a2;
                    let q2 = (1.0 - beta) * a1 + beta * a2;
                    avg += wb * (-(s[0] * q1 + s[1] * q2)).exp();
                }
                if avg > 0.0 {
                    acc += (radial_log + avg.ln()).exp();
                }
            }
        }
        c_rad * acc
    };
    let full = pass(1);
    let coarse = pass(2);
    Estimate { value: full, error: (full - coarse).abs().max(f64::EPSILON * full.abs()) }
}

fn monte_carlo(params: &KBesselParams, s: &[f64], form: IntegralForm) -> Result<Estimate> {
    let lam = params.lambda;
    let nr = params.dim_over_rank();
    let x = params.cone.point_from_radial(s);
    let jp = params.cone.pair().clone();
    let f = General(move |pt: &jb_cone::ConePoint| match form {
        IntegralForm::Two => {
            (-pt.trace - jp.inner(&x, &pt.inverse) - lam * pt.det.ln()).exp()
        }
        IntegralForm::One => {
            let tr_inv: f64 = pt.w.iter().map(|w| 1.0 / w).sum();
            (-tr_inv - jp.inner(&x, &pt.element) + (lam - 2.0 * nr) * pt.det.ln()).exp()
        }
    });
    let mut spec = params.quad.clone();
    spec.method = "montecarlo".into();
    Ok(jb_cone::cone_integrate(&params.cone, &f, &spec)?)
}
