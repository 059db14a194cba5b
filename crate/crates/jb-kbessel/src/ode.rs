//! The radial differential system of the K-Bessel function:
//!   B^i K = K,   B^i = t_i d^2/dt_i^2 + (lambda - (k-1)d/2) d/dt_i
//!                      + (d/2) sum_{j != i} (t_i d_i - t_j d_j)/(t_i - t_j),
//! checked by five-point finite differences on top of the quadrature
//! evaluator.

use crate::eval::radial_eval;
use crate::{IntegralForm, KBesselError, KBesselParams, RadialPoint, Result};

/// Per-axis relative residuals |B^i K - K| / |K|.
pub fn ode_residual(params: &KBesselParams, t: &RadialPoint) -> Result<Vec<f64>> {
    ode_residual_with_order(params, t, params.lambda)
}

/// Residuals of the system with an explicit operator order (negative
/// controls use a deliberately wrong order).
pub fn ode_residual_with_order(
    params: &KBesselParams,
    t: &RadialPoint,
    order: f64,
) -> Result<Vec<f64>> {
    let k = params.rank();
    let tv = t.values();
    let steps: Vec<f64> = tv.iter().map(|&ti| (1e-3 * ti).max(1e-4)).collect();
    let max_h = steps.iter().cloned().fold(0.0, f64::max);
    if t.margin() < 4.0 * max_h {
        return Err(KBesselError::SeparationTooSmall { margin: t.margin(), h: max_h });
    }
    let eval = |t: &[f64]| -> Result<f64> {
        let mut sorted = t.to_vec();
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(radial_eval(params, &sorted, IntegralForm::Two)?.value)
    };
    let center = eval(tv)?;
    // first and second derivatives per axis, five-point stencils
    let mut d1 = vec![0.0; k];
    let mut d2 = vec![0.0; k];
    for i in 0..k {
        let h = steps[i];
        let mut f = [0.0; 5];
        for (m, off) in [-2.0f64, -1.0, 0.0, 1.0, 2.0].iter().enumerate() {
            if *off == 0.0 {
                f[m] = center;
            } else {
                let mut tt = tv.to_vec();
                tt[i] += off * h;
                f[m] = eval(&tt)?;
            }
        }
        d1[i] = (-f[4] + 8.0 * f[3] - 8.0 * f[1] + f[0]) / (12.0 * h);
        d2[i] = (-f[4] + 16.0 * f[3] - 30.0 * f[2] + 16.0 * f[1] - f[0]) / (12.0 * h * h);
    }
    let d = params.d();
    let mut residuals = Vec::with_capacity(k);
    for i in 0..k {
        let mut op = tv[i] * d2[i] + (order - (k as f64 - 1.0) * d / 2.0) * d1[i];
        for j in 0..k {
            if j != i {
                op += d / 2.0 * (tv[i] * d1[i] - tv[j] * d1[j]) / (tv[i] - tv[j]);
            }
        }
        residuals.push((op - center).abs() / center.abs().max(1e-300));
    }
    Ok(residuals)
}
