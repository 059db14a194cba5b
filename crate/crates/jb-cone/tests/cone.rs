//! Cone calculus and quadrature validation: spectral consistency, the
//! Laplace transform identity against the Gindikin Gamma, and agreement of
//! the radial and Monte Carlo rules.

use jb_cone::quad::QuadratureSpec;
use jb_cone::{cone_integrate, ConeContext, General, Invariant};
use jb_core::{AlgebraSpec, Element, JordanPairStructure};
use std::sync::Arc;

fn pair(spec: &str) -> Arc<JordanPairStructure> {
    Arc::new(JordanPairStructure::build(&AlgebraSpec::parse(spec).unwrap()).unwrap())
}

#[test]
fn cone_membership_and_diagonal_calculus() {
    let jp = pair("sym:2");
    let ctx = ConeContext::from_pair(jp.clone(), 2).unwrap();
    let e = ctx.unit().clone();
    assert!(ctx.contains(&e).unwrap());
    assert!(!ctx.contains(&e.scale(-1.0)).unwrap());
    // b_t with t = (2,1): det 2, trace 3, inverse e_1/2 + e_2
    let x = ctx.point_from_radial(&[2.0, 1.0]);
    assert!((ctx.det(&x).unwrap() - 2.0).abs() < 1e-10);
    assert!((ctx.trace(&x) - 3.0).abs() < 1e-10);
    let inv = ctx.inverse(&x).unwrap();
    let expect = ctx.point_from_radial(&[0.5, 1.0]);
    assert!(inv.sub(&expect).norm() < 1e-9);
    // pair relation Q_x theta(inv) = x
    let q = jp.quad(&x, &jp.theta(&inv)).unwrap();
    assert!(q.sub(&x).norm() < 1e-9);
    // det(inverse) = 1/det
    assert!((ctx.det(&inv).unwrap() - 0.5).abs() < 1e-10);
}

#[test]
fn spectral_matches_matrix_oracle_for_sym2() {
    // random SPD 2x2 symmetric matrix: cone membership + Jordan inverse
    // equals the matrix inverse
    let jp = pair("sym:2");
    let ctx = ConeContext::from_pair(jp.clone(), 2).unwrap();
    // coords (a, c, b-offdiag): matrix [[a, b], [b, c]]
    let (a, b, c) = (2.0, 0.7, 1.4);
    let x = Element::plus(nalgebra::DVector::from_vec(vec![a, c, b]));
    assert!(ctx.contains(&x).unwrap());
    let disc = ((a - c) / 2.0).powi(2) + b * b;
    let eig1 = (a + c) / 2.0 + disc.sqrt();
    let eig2 = (a + c) / 2.0 - disc.sqrt();
    let vals = ctx.spectral_values(&x).unwrap();
    assert!((vals[0] - eig1).abs() < 1e-10 && (vals[1] - eig2).abs() < 1e-10);
    assert!((ctx.det(&x).unwrap() - (a * c - b * b)).abs() < 1e-10);
    let inv = ctx.inverse(&x).unwrap();
    let det = a * c - b * b;
    let expect = Element::plus(nalgebra::DVector::from_vec(vec![c / det, a / det, -b / det]));
    assert!(inv.sub(&expect).norm() < 1e-9);
    // spectral consistency: det = prod, trace = sum
    assert!((ctx.trace(&x) - vals.iter().sum::<f64>()).abs() < 1e-10);

    // a matrix with a negative eigenvalue is outside the cone
    let y = Element::plus(nalgebra::DVector::from_vec(vec![1.0, 1.0, 2.0]));
    assert!(!ctx.contains(&y).unwrap());
}

#[test]
fn laplace_identity_rank_one() {
    // int_0^inf e^{-x y} x^{lambda - 1} dx = Gamma(lambda) y^{-lambda}
    let ctx = ConeContext::synthetic(1, 1).unwrap();
    let spec = QuadratureSpec::default();
    for (lam, y) in [(1.5, 1.0), (2.0, 2.5), (0.8, 0.6)] {
        let f = Invariant(move |pt: &jb_cone::ConePoint| {
            (-pt.trace * y).exp() * pt.det.powf(lam - 1.0)
        });
        let est = cone_integrate(&ctx, &f, &spec).unwrap();
        let expect = jb_cone::gamma_real(lam) * y.powf(-lam);
        assert!(
            (est.value - expect).abs() < 1e-9 * expect,
            "lambda={lam} y={y}: {} vs {expect}",
            est.value
        );
    }
}

#[test]
fn laplace_identity_matches_gindikin_across_ranks() {
    // int_Omega e^{-tr x} Det(x)^{lambda - n/r} dx = Gamma_{k,d}(lambda)
    for (k, d) in [(1usize, 1usize), (2, 1), (2, 2), (3, 1), (3, 2)] {
        let ctx = ConeContext::synthetic(k, d).unwrap();
        let mut spec = QuadratureSpec::default();
        if k == 3 {
            spec.nodes_per_axis = 72;
        }
        let nr = ctx.dim_over_rank();
        for lam in [nr - 0.4, nr + 0.5, nr + 1.5] {
            let f = Invariant(move |pt: &jb_cone::ConePoint| {
                (-pt.trace).exp() * pt.det.powf(lam - nr)
            });
            let est = cone_integrate(&ctx, &f, &spec).unwrap();
            let expect = jb_cone::gindikin_gamma_real(k, d as f64, lam).unwrap();
            let rel = (est.value - expect).abs() / expect;
            assert!(rel < 2e-6, "k={k} d={d} lambda={lam}: rel err {rel:.2e}");
        }
    }
}

#[test]
fn gindikin_value_at_rank_two_quadrature() {
    // Gamma_{2,1}(2) through the cone integral, to well within 0.5%
    let ctx = ConeContext::synthetic(2, 1).unwrap();
    let nr = ctx.dim_over_rank();
    let f = Invariant(move |pt: &jb_cone::ConePoint| (-pt.trace).exp() * pt.det.powf(2.0 - nr));
    let est = cone_integrate(&ctx, &f, &QuadratureSpec::default()).unwrap();
    let expect = (2.0 * std::f64::consts::PI).sqrt() * std::f64::consts::PI.sqrt() / 2.0;
    assert!((est.value - expect).abs() / expect < 5e-3);
    assert!((est.value - expect).abs() / expect < 1e-6);
}

#[test]
fn zero_integrand_integrates_to_zero() {
    let ctx = ConeContext::synthetic(2, 1).unwrap();
    let f = Invariant(|_: &jb_cone::ConePoint| 0.0);
    let est = cone_integrate(&ctx, &f, &QuadratureSpec::default()).unwrap();
    assert_eq!(est.value, 0.0);
}

#[test]
fn radial_and_monte_carlo_agree() {
    let ctx = ConeContext::synthetic(2, 1).unwrap();
    let nr = ctx.dim_over_rank();
    let radial_spec = QuadratureSpec::default();
    let mc_spec = QuadratureSpec {
        method: "montecarlo".into(),
        mc_samples: 60_000,
        ..QuadratureSpec::default()
    };
    let f = Invariant(move |pt: &jb_cone::ConePoint| {
        (-pt.trace).exp() * pt.det.powf(1.25 - nr) * (1.0 + (pt.w[0] - pt.w[1])).ln()
    });
    let r = cone_integrate(&ctx, &f, &radial_spec).unwrap();
    let m = cone_integrate(&ctx, &f, &mc_spec).unwrap();
    let band = 4.0 * (r.error + m.error);
    assert!(
        (r.value - m.value).abs() < band.max(1e-3 * r.value.abs()),
        "radial {} +- {} vs mc {} +- {}",
        r.value,
        r.error,
        m.value,
        m.error
    );
    // Monte Carlo with the same seed is bit-identical
    let m2 = cone_integrate(&ctx, &f, &mc_spec).unwrap();
    assert_eq!(m.value, m2.value);
}

#[test]
fn monte_carlo_handles_non_invariant_integrands() {
    // the radial rule refuses non-invariant integrands; MC handles them
    let jp = pair("sym:2");
    let ctx = ConeContext::from_pair(jp.clone(), 2).unwrap();
    let probe = Element::plus(nalgebra::DVector::from_vec(vec![1.0, 0.5, 0.2]));
    let jp2 = jp.clone();
    let probe_in = probe.clone();
    let f = General(move |pt: &jb_cone::ConePoint| {
        (-pt.trace).exp() * jp2.inner(&pt.element, &probe_in)
    });
    assert!(cone_integrate(&ctx, &f, &QuadratureSpec::default()).is_err());
    let mc_spec = QuadratureSpec {
        method: "montecarlo".into(),
        mc_samples: 40_000,
        ..QuadratureSpec::default()
    };
    let est = cone_integrate(&ctx, &f, &mc_spec).unwrap();
    // oracle: by invariance int e^{-tr x} x dx = c e, so the pairing equals
    // c tr(probe) with c = [int e^{-tr} tr dx] / tr(e)
    let g = Invariant(|pt: &jb_cone::ConePoint| (-pt.trace).exp() * pt.trace);
    let total = cone_integrate(&ctx, &g, &QuadratureSpec::default()).unwrap();
    let expect = total.value * ctx.trace(&probe) / ctx.trace(ctx.unit());
    let band = (4.0 * est.error).max(2e-2 * expect.abs());
    assert!(
        (est.value - expect).abs() < band,
        "mc {} +- {} vs oracle {expect}",
        est.value,
        est.error
    );
}
