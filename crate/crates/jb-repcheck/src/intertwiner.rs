//! The restriction intertwiner f -> f|_orbit dmu_k: kernel property and the
//! numerical core of the intertwining relation, which is the symmetry of
//! B_{kd} against the orbit measure (the multiplication part cancels
//! identically).

use crate::{RepError, RepParams, Result};
use jb_besselop::field::ScalarField;
use jb_besselop::{orbit_symmetry_residual_ambient, tangency::VanishingField};
use jb_core::{Element, Side};
use jb_cone::QuadratureSpec;
use jb_orbits::OrbitContext;

/// Pairing <T_k f, g> = int f g dmu_k over the polar grid (circle and torus
/// compact parts), plus the residual of
///   <(B_{lambda(nu_k)} - xbar) f|, g> = <f|, (B_{kd} - xbar) g>,
/// whose content at lambda(nu_k) = kd is the measure symmetry of the
/// operator; the xbar terms agree exactly by construction.
pub fn intertwiner_pairing_residual(
    params: &RepParams,
    k: usize,
    f: &dyn ScalarField,
    g: &dyn ScalarField,
    quad: &QuadratureSpec,
    n_angles: usize,
) -> Result<f64> {
    let jp = &params.jp;
    let lambda = jp.constants().p - 2.0 * RepParams::nu_k(jp, k);
    debug_assert!((lambda - k as f64 * jp.constants().d).abs() < 1e-12);
    let ctx = OrbitContext::new(jp.clone(), k)?;
    Ok(orbit_symmetry_residual_ambient(&ctx, f, g, quad, n_angles)?)
}

/// Fields vanishing on the variety restrict to zero: max |f(y)| over orbit
/// samples for a chart-coordinate vanishing field.
pub fn kernel_property_residual(params: &RepParams, k: usize, samples: usize) -> Result<f64> {
    let jp = &params.jp;
    let ctx = OrbitContext::new(jp.clone(), k)?;
    let pd = ctx.peirce();
    let mut rng = jb_core::probe::rng(33);
    let v0 = jb_core::linalg::column_space(&pd.proj_minus[2], 1e-7);
    if v0.is_empty() {
        return Err(RepError::Unsupported("open orbit has no vanishing directions".into()));
    }
    let mut worst: f64 = 0.0;
    for i in 0..samples {
        use rand::Rng;
        let mut u = nalgebra::DVector::zeros(jp.dim());
        for b in &v0 {
            u += b * rng.gen_range(-1.0f64..1.0);
        }
        let field = VanishingField::new(&ctx, Element::minus(u));
        // orbit point through the chart
        let noise = jb_core::probe::random_element_scaled(jp, Side::Plus, 0.3, &mut rng);
        let x = ctx
            .idem()
            .e
            .add(&pd.project(2, &noise))
            .add(&pd.project(1, &jb_core::probe::random_element(jp, Side::Plus, &mut rng)));
        let y = jb_orbits::chart_forward(&ctx, &x)?;
        worst = worst.max(field.value(&y.coords).abs());
        let _ = i;
    }
    Ok(worst)
}
