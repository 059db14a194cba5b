//! Two-way consistency of the equivariant measure at k = 1: the
//! polar-coordinate density J(t) against the chart density |Delta(x_2)|^{kd-p},
//! compared on invariant window profiles. Each side carries its own free
//! normalization, so only the constancy of the ratio is asserted.

use jb_cone::quad::gauss_legendre_ab;
use jb_core::{AlgebraSpec, Element, JordanPairStructure};
use jb_orbits::*;
use std::sync::Arc;

/// Analytic window: Gaussian in the invariant q. Effectively compact, and
/// the box-boundary leak is checked explicitly below.
fn window(u: f64) -> f64 {
    (-u * u).exp()
}

/// Chart-side integral of f(q1(y)) over the rank-1 patch, parameterized as
/// x_2 = u^2 e_1, x_1 = u * beta: the substitution absorbs the corner where
/// the chart frame degenerates (exponent 2(kd - p) + dim V_1 + 1 = 2d-2e-1).
/// Returns (integral, boundary/interior leak ratio).
fn chart_side(
    ctx: &OrbitContext,
    f: &dyn Fn(f64) -> f64,
    u_max: f64,
    beta_max: f64,
    n: usize,
) -> (f64, f64) {
    let jp = ctx.pair();
    let pd = ctx.peirce();
    let c = jp.constants();
    let v1_basis = jb_core::linalg::column_space(&pd.proj_plus[1], 1e-7);
    let n1 = v1_basis.len();
    let expo = 2.0 * (ctx.k() as f64 * c.d - c.p) + n1 as f64 + 1.0;
    assert!(expo >= -1e-9, "substitution exponent must be nonnegative");
    let u_nodes = gauss_legendre_ab(n, 0.0, u_max);
    let b_nodes = gauss_legendre_ab(n, -beta_max, beta_max);
    let mut idx = vec![0usize; n1];
    let mut acc = 0.0;
    let mut boundary_max: f64 = 0.0;
    let mut interior_max: f64 = 0.0;
    loop {
        for (ui, &(u, wu)) in u_nodes.iter().enumerate() {
            let mut x1 = Element::zero(jp.dim(), jb_core::Side::Plus);
            let mut wb = 1.0;
            for (j, &bi) in idx.iter().enumerate() {
                let (b, w) = b_nodes[bi];
                x1 = x1.add(&Element::plus(&v1_basis[j] * (b * u)));
                wb *= w;
            }
            let x = ctx.idem().e.scale(u * u).add(&x1);
            let Ok(y) = chart_forward(ctx, &x) else { continue };
            let q1 = jp.inner(&y, &y);
            let val = f(q1) * u.powf(expo);
            acc += wu * wb * val;
            let on_boundary =
                ui == n - 1 || idx.iter().any(|&bi| bi == 0 || bi == n - 1);
            if on_boundary {
                boundary_max = boundary_max.max(val.abs());
            } else {
                interior_max = interior_max.max(val.abs());
            }
        }
        let mut pos = 0;
        loop {
            if n1 == 0 {
                return (acc, boundary_max / interior_max.max(1e-300));
            }
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
            if pos == n1 {
                return (acc, boundary_max / interior_max.max(1e-300));
            }
        }
    }
}

#[test]
fn polar_and_chart_measures_agree_on_windows() {
    // spin is excluded here: its chart degenerates along the null cone of
    // V_1 and the window support is not box-compact in chart coordinates;
    // its density is validated by the equivariance test below instead
    for spec in ["sym:2", "sym:3", "herm_c:2"] {
        let jp =
            Arc::new(JordanPairStructure::build(&AlgebraSpec::parse(spec).unwrap()).unwrap());
        let ctx = OrbitContext::new(jp.clone(), 1).unwrap();
        let quad = jb_cone::QuadratureSpec { nodes_per_axis: 340, ..Default::default() };
        let mut ratios = Vec::new();
        for i in 0..10 {
            let center = 2.5 + 0.45 * i as f64;
            let width = 1.0;
            let prof = move |q1: f64| window((q1 - center) / width);
            // polar side: q1(b_t) = t^2
            let polar = orbit_integrate_radial(&ctx, &|t: &[f64]| prof(t[0] * t[0]), &quad)
                .unwrap()
                .value;
            // chart side over a box covering q1 <= center + 8 width
            let q_max = center + 9.0 * width;
            let t_max = q_max.sqrt();
            // the beta extent of the support depends on the family's V_1
            // coupling; grow the box until the boundary leak vanishes
            let mut accepted = None;
            for scale in [1.0, 1.6, 2.4, 3.4] {
                let (chart, leak) =
                    chart_side(&ctx, &prof, t_max.sqrt(), scale * t_max.sqrt(), 48);
                if leak < 1e-9 {
                    accepted = Some(chart);
                    break;
                }
            }
            let chart = accepted.unwrap_or_else(|| panic!("{spec}: support leaks through every box"));
            ratios.push(chart / polar);
        }
        let mid = {
            let mut r = ratios.clone();
            r.sort_by(|a, b| a.partial_cmp(b).unwrap());
            r[r.len() / 2]
        };
        for (i, r) in ratios.iter().enumerate() {
            assert!(
                (r / mid - 1.0).abs() < 1e-2,
                "{spec}: window {i} ratio {r} deviates from {mid} by {:.2e}",
                (r / mid - 1.0).abs()
            );
        }
    }
}


#[test]
fn pullback_density_equivariance_spin() {
    // defining property: density(h x_2) / density(x_2) =
    // |Det_{V_2}(h)|^{(kd-p)/p_2} for h in the Peirce-preserving Levi part;
    // scalings of V_2 realize enough of that group for the exponent check
    let jp = Arc::new(JordanPairStructure::build(&AlgebraSpec::parse("spin:4").unwrap()).unwrap());
    let ctx = OrbitContext::new(jp.clone(), 1).unwrap();
    let c = *jp.constants();
    let expo = (ctx.k() as f64 * c.d - c.p) / c.p_sub2(ctx.k());
    let x2 = ctx.idem().e.scale(1.3);
    let base = pullback_density(&ctx, &x2).unwrap();
    for s in [0.5_f64, 2.0, 3.7] {
        let scaled = pullback_density(&ctx, &x2.scale(s)).unwrap();
        // Det of s id on the one-dimensional V_2 is s
        let expect = base * s.powf(expo);
        assert!(
            (scaled - expect).abs() < 1e-10 * expect.abs(),
            "s={s}: {scaled} vs {expect}"
        );
    }
    // numerical value at the base point: |Delta(1.3 e)|^{kd-p} = 1.3^{-1}
    assert!((base - 1.0 / 1.3).abs() < 1e-10);
}
