//! Restriction of the K-Bessel function to lower rank: padding the radial
//! argument with trailing zeros reproduces the lower-rank function up to a
//! constant, for orders below the threshold 1 + k d/2.

use crate::eval::radial_eval;
use crate::{IntegralForm, KBesselError, KBesselParams, Result};
use jb_cone::ConeContext;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct RestrictionReport {
    /// fitted lower-rank constant (never asserted, only its constancy)
    pub constant: f64,
    /// relative dispersion of the per-sample ratios
    pub dispersion: f64,
    pub ratios: Vec<f64>,
}

/// Compare K_mu at rank k+m with trailing arguments sent to zero against
/// K_mu at rank k on `samples` points t_1 > ... > t_k. The limit is taken by
/// power-law extrapolation in the padding value.
///
/// Requires mu < 1 + k d / 2.
pub fn restriction_ratio_check(
    high: &Arc<ConeContext>,
    low: &Arc<ConeContext>,
    mu: f64,
    samples: &[Vec<f64>],
) -> Result<RestrictionReport> {
    let k = low.rank();
    let m = high.rank() - k;
    let d = low.mult_d();
    if high.rank() < k {
        return Err(KBesselError::UnsupportedRank(high.rank()));
    }
    if mu >= 1.0 + k as f64 * d / 2.0 {
        return Err(KBesselError::ExtrapolationUnstable(format!(
            "order {mu} is not below the restriction threshold {}",
            1.0 + k as f64 * d / 2.0
        )));
    }
    if m == 0 {
        return Ok(RestrictionReport {
            constant: 1.0,
            dispersion: 0.0,
            ratios: vec![1.0; samples.len()],
        });
    }
    let p_high = KBesselParams::new(high.clone(), mu);
    let p_low = KBesselParams::new(low.clone(), mu);
    let mut ratios = Vec::with_capacity(samples.len());
    for t in samples {
        assert_eq!(t.len(), k);
        let eps0 = (0.02 * t[k - 1]).min(0.02);
        let f = |eps: f64| -> Result<f64> {
            let mut tt = t.clone();
            for _ in 0..m {
                tt.push(eps * (1.0 - 1e-3 * tt.len() as f64)); // keep strict ordering
            }
            Ok(radial_eval(&p_high, &tt, IntegralForm::Two)?.value)
        };
        let (f1, f2, f4) = (f(eps0 / 4.0)?, f(eps0 / 2.0)?, f(eps0)?);
        // power-law extrapolation f(eps) = c0 + c1 eps^alpha
        let (r1, r2) = (f2 - f1, f4 - f2);
        let limit = if r1.abs() < 1e-14 * f1.abs() {
            f1
        } else {
            let ratio = r2 / r1;
            if !(ratio > 1.01) {
                return Err(KBesselError::ExtrapolationUnstable(format!(
                    "non-contracting differences at t = {t:?} (ratio {ratio})"
                )));
            }
            f1 - r1 / (ratio - 1.0)
        };
        let low_val = radial_eval(&p_low, t, IntegralForm::Two)?.value;
        ratios.push(limit / low_val);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let dispersion = ratios
        .iter()
        .map(|r| (r / mean - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(RestrictionReport { constant: mean, dispersion, ratios })
}
