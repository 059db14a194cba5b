//! Integrability thresholds for int_Omega K_lambda(x)^m Det(x)^mu dx and the
//! Gindikin Gamma closed form of the L^1 value.

use crate::eval::radial_eval;
use crate::{IntegralForm, KBesselParams, Result};
use jb_cone::quad::{half_line_nodes, U_MAX};
use jb_cone::{gindikin_gamma_real, integrate::radial_constant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrabilityMode {
    L1,
    L2,
}

#[derive(Debug, Clone)]
pub struct IntegrabilityVerdict {
    pub finite: bool,
    /// numeric value (L1 mode only, when finite)
    pub value: Option<f64>,
    /// Gamma-product prediction (L1 mode only, when finite and off poles)
    pub closed_form: Option<f64>,
}

/// Decide finiteness of int K_lambda^m Det^mu by the threshold inequalities
///   L1: mu > -1  and  mu - lambda > -2 - (k-1)d/2,
///   L2: mu > -1  and  mu - 2 lambda > -3 - (k-1)d.
/// The verdict itself is cheap; `integrability_check` additionally evaluates
/// the L1 integral numerically in the finite case.
pub fn integrability_verdict(params: &KBesselParams, mu: f64, mode: IntegrabilityMode) -> bool {
    let k = params.rank();
    let d = params.d();
    let lam = params.lambda;
    match mode {
        IntegrabilityMode::L1 => mu > -1.0 && mu - lam > -2.0 - (k as f64 - 1.0) * d / 2.0,
        IntegrabilityMode::L2 => mu > -1.0 && mu - 2.0 * lam > -3.0 - (k as f64 - 1.0) * d,
    }
}

pub fn integrability_check(
    params: &KBesselParams,
    mu: f64,
    mode: IntegrabilityMode,
) -> Result<IntegrabilityVerdict> {
    let finite = integrability_verdict(params, mu, mode);
    if !finite || mode == IntegrabilityMode::L2 {
        return Ok(IntegrabilityVerdict { finite, value: None, closed_form: None });
    }
    let k = params.rank();
    let d = params.d();
    let lam = params.lambda;
    let nr = params.dim_over_rank();
    let closed_form = match (
        gindikin_gamma_real(k, d, mu + nr),
        gindikin_gamma_real(k, d, mu - lam + 2.0 * nr),
    ) {
        (Ok(a), Ok(b)) => Some(a * b),
        _ => None,
    };
    let value = Some(l1_value(params, mu, None)?);
    Ok(IntegrabilityVerdict { finite, value, closed_form })
}

/// Numeric value of int_Omega K_lambda(x) Det(x)^mu dx. An optional spectral
/// floor truncates the chamber away from the boundary, used to exhibit
/// divergence outside the finite region.
pub fn l1_value(params: &KBesselParams, mu: f64, floor: Option<f64>) -> Result<f64> {
    let k = params.rank();
    let d = params.d();
    // keep the outer resolution moderate: the inner K evaluation dominates
    let n_outer = (params.quad.nodes_per_axis / 2).clamp(32, 64);
    let nodes = half_line_nodes(n_outer, U_MAX);
    let c_rad = radial_constant(&params.cone, n_outer)?;
    let mut inner = params.clone();
    inner.quad.nodes_per_axis = params.quad.nodes_per_axis.clamp(32, 72);

    // iterate the ordered chamber in gap coordinates
    let mut acc = 0.0;
    let mut idx = vec![0usize; k];
    let m = nodes.len();
    let mut w = vec![0.0f64; k];
    'outer: loop {
        let mut weight = 1.0;
        let mut cum = 0.0;
        for j in (0..k).rev() {
            let (g, wt) = nodes[idx[j]];
            cum += g;
            w[j] = cum;
            weight *= wt;
        }
        if w.iter().all(|&wi| floor.map_or(true, |f| wi > f)) {
            let mut v = 1.0;
            for i in 0..k {
                for j in (i + 1)..k {
                    v *= (w[i] - w[j]).powf(d);
                }
            }
            let det: f64 = w.iter().product();
            let kb = radial_eval(&inner, &w, IntegralForm::Two)?.value;
            let contrib = weight * v * det.powf(mu) * kb;
            if contrib.is_finite() {
                acc += contrib;
            }
        }
        let mut pos = 0;
        loop {
            idx[pos] += 1;
            if idx[pos] < m {
                break;
            }
            idx[pos] = 0;
            pos += 1;
            if pos == k {
                break 'outer;
            }
        }
    }
    Ok(c_rad * acc)
}
