//! Rank-one Fourier normalization: the transform of the compact-picture
//! spherical vector (1 + y^2)^{-nu - 1/2} is proportional to the K-Bessel
//! vector K_{1-nu}((x/2)^2), and the proportionality constant times
//! Gamma(nu + 1/2) is independent of nu.

use crate::Result;
use jb_cone::quad::gauss_legendre_ab;
use jb_cone::ConeContext;
use jb_kbessel::{IntegralForm, KBesselParams};
use std::sync::Arc;

/// Cosine transform 2 int_0^inf cos(x y) (1 + y^2)^{-s} dy by half-period
/// panels with iterated averaging of the alternating tail.
pub fn spherical_cosine_transform(s: f64, x: f64) -> f64 {
    assert!(x > 0.0 && s > 0.55);
    let half = std::f64::consts::PI / x;
    let f = |y: f64| (x * y).cos() * (1.0 + y * y).powf(-s);
    // direct head
    let mut head = 0.0;
    let head_periods = 24usize;
    for i in 0..head_periods {
        for &(y, w) in &gauss_legendre_ab(24, i as f64 * half, (i + 1) as f64 * half) {
            head += w * f(y);
        }
    }
    // alternating tail accelerated by iterated averaging
    let mut partial = Vec::with_capacity(40);
    let mut acc = 0.0;
    for i in head_periods..(head_periods + 40) {
        let mut piece = 0.0;
        for &(y, w) in &gauss_legendre_ab(16, i as f64 * half, (i + 1) as f64 * half) {
            piece += w * f(y);
        }
        acc += piece;
        partial.push(acc);
    }
    let mut avg = partial;
    while avg.len() > 1 {
        avg = avg.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    2.0 * (head + avg[0])
}

#[derive(Debug, Clone)]
pub struct FourierRank1Report {
    /// max over x of the in-shape deviation |ratio(x)/ratio_ref - 1| per nu
    pub shape_dispersion: f64,
    /// max over nu of |c(nu) Gamma(nu + 1/2) / reference - 1|
    pub normalization_dispersion: f64,
    pub constants: Vec<(f64, f64)>,
}

/// Ratio constancy of transform / K-profile in x for each nu, and of
/// c(nu) * Gamma(nu + 1/2) across nu.
pub fn fourier_rank1_check(nus: &[f64], xs: &[f64]) -> Result<FourierRank1Report> {
    let cone = Arc::new(ConeContext::synthetic(1, 1)?);
    let mut shape: f64 = 0.0;
    let mut constants = Vec::new();
    for &nu in nus {
        let mut kp = KBesselParams::new(cone.clone(), 1.0 - nu);
        kp.quad.nodes_per_axis = 128;
        let mut ratios = Vec::new();
        for &x in xs {
            let ft = spherical_cosine_transform(nu + 0.5, x);
            let psi =
                jb_kbessel::eval::radial_eval(&kp, &[(x / 2.0) * (x / 2.0)], IntegralForm::Two)?
                    .value;
            ratios.push(ft / psi);
        }
        let mid = ratios[ratios.len() / 2];
        for r in &ratios {
            shape = shape.max((r / mid - 1.0).abs());
        }
        constants.push((nu, mid * jb_cone::gamma_real(nu + 0.5)));
    }
    let ref_c = constants[0].1;
    let mut norm_disp: f64 = 0.0;
    for (_, c) in &constants {
        norm_disp = norm_disp.max((c / ref_c - 1.0).abs());
    }
    Ok(FourierRank1Report {
        shape_dispersion: shape,
        normalization_dispersion: norm_disp,
        constants,
    })
}
