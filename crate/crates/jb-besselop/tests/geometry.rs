//! Pullback of the operator along the chart, the tangency certification,
//! the Lebesgue adjoint identity, and symmetry on orbit measures.

use jb_besselop::field::*;
use jb_besselop::*;
use jb_core::{AlgebraSpec, Element, JordanPairStructure, Side};
use jb_orbits::OrbitContext;
use nalgebra::DVector;
use std::sync::Arc;

fn orbit(spec: &str, k: usize) -> OrbitContext {
    let jp = Arc::new(JordanPairStructure::build(&AlgebraSpec::parse(spec).unwrap()).unwrap());
    OrbitContext::new(jp, k).unwrap()
}

fn smooth_probe(jp: &Arc<JordanPairStructure>, seed: u64) -> impl ScalarField {
    let mut rng = jb_core::probe::rng(seed);
    let w = jb_core::probe::random_element(jp, Side::Minus, &mut rng);
    Product(
        Chain { outer: Smooth::GaussWindow, inner: Quadratic {
            m: Quadratic::norm_squared(jp).m * 0.25,
            a: DVector::zeros(jp.dim()),
            c: -0.8,
        }},
        Chain { outer: Smooth::Sin, inner: Linear::pairing(jp, &w) },
    )
}

fn chart_point(ctx: &OrbitContext, seed: u64) -> Element {
    let jp = ctx.pair();
    let pd = ctx.peirce();
    let mut rng = jb_core::probe::rng(seed);
    let noise = jb_core::probe::random_element_scaled(jp, Side::Plus, 0.3, &mut rng);
    ctx.idem()
        .e
        .add(&pd.project(2, &noise))
        .add(&pd.project(1, &jb_core::probe::random_element_scaled(jp, Side::Plus, 0.7, &mut rng)))
}

#[test]
fn pullback_formula_matches_chain_rule_oracle() {
    for (spec, k) in [("sym:2", 1), ("sym:3", 2), ("rect:2x3", 1), ("spin:4", 1)] {
        let ctx = orbit(spec, k);
        let jp = ctx.pair().clone();
        let f = smooth_probe(&jp, 41);
        for lambda in [0.3, 1.0] {
            for seed in [1u64, 2, 3] {
                let x = chart_point(&ctx, seed);
                let formula = pullback_bessel(&ctx, lambda, &f, &x).unwrap().value;
                let oracle = pullback_chain_oracle(&ctx, lambda, &f, &x).unwrap();
                let rel = formula.sub(&oracle).norm() / (1.0 + oracle.norm());
                assert!(rel < 1e-6, "{spec} k={k} lambda={lambda}: rel {rel:.2e}");
            }
        }
    }
}

#[test]
fn pullback_normal_term_vanishes_exactly_at_kd() {
    let ctx = orbit("sym:3", 1);
    let jp = ctx.pair().clone();
    let c = jp.constants();
    let f = smooth_probe(&jp, 17);
    let x = chart_point(&ctx, 9);
    let kd = 1.0 * c.d;
    let at_kd = pullback_bessel(&ctx, kd, &f, &x).unwrap();
    assert_eq!(at_kd.normal_term.norm(), 0.0);
    let off = pullback_bessel(&ctx, kd + 0.5 * c.d, &f, &x).unwrap();
    assert!(off.normal_term.norm() > 1e-6);
    // linear dependence of the normal term on (lambda - kd)
    let off2 = pullback_bessel(&ctx, kd + 0.25 * c.d, &f, &x).unwrap();
    assert!(
        (off.normal_term.norm() - 2.0 * off2.normal_term.norm()).abs()
            < 1e-9 * off.normal_term.norm()
    );
}

#[test]
fn tangency_zero_exactly_at_kd() {
    for (spec, ks) in [
        ("sym:2", vec![1usize]),
        ("sym:3", vec![1, 2]),
        ("herm_c:2", vec![1]),
        ("spin:4", vec![1]),
        ("spin:6", vec![1]),
        ("rect:2x3", vec![1]),
    ] {
        for &k in &ks {
            let ctx = orbit(spec, k);
            let d = ctx.pair().constants().d;
            let kd = k as f64 * d;
            let at = tangency_residual(&ctx, kd, 6, 7).unwrap();
            assert!(at <= 1e-8, "{spec} k={k}: residual at kd is {at:.2e}");
            for off in [kd - 0.5 * d, kd + 0.5 * d] {
                let r = tangency_residual(&ctx, off, 6, 7).unwrap();
                assert!(r >= 1e-2, "{spec} k={k}: off-order residual {r:.2e} too small");
            }
        }
    }
}

#[test]
fn tangency_scan_has_unique_zero() {
    // residual profile over a lambda grid has its minimum at kd within the
    // grid resolution d/20
    let ctx = orbit("sym:3", 1);
    let d = ctx.pair().constants().d;
    let grid: Vec<f64> = (0..=40).map(|i| i as f64 * d / 20.0).collect();
    let scan = tangency_scan(&ctx, &grid, 4, 3).unwrap();
    let (mut best_l, mut best_r) = (f64::NAN, f64::INFINITY);
    for p in &scan {
        if p.residual < best_r {
            best_r = p.residual;
            best_l = p.lambda;
        }
    }
    assert!((best_l - d).abs() < d / 20.0 + 1e-12, "minimum at {best_l}, d = {d}");
    // profile is strictly above the floor away from kd
    for p in &scan {
        if (p.lambda - d).abs() > 0.3 * d {
            assert!(p.residual > 1e-2 * best_r.max(1e-10));
        }
    }
}

#[test]
fn adjoint_identity_separable() {
    let mut rng = jb_core::probe::rng(77);
    use rand::Rng;
    for spec in ["sym:2", "rect:2x3"] {
        let jp = Arc::new(JordanPairStructure::build(&AlgebraSpec::parse(spec).unwrap()).unwrap());
        let p = jp.constants().p;
        for lambda in [0.0, 1.0, p] {
            for _ in 0..7 {
                let mk = |rng: &mut rand_chacha::ChaCha8Rng| SeparableField {
                    factors: (0..jp.dim())
                        .map(|_| {
                            let mut f = jb_besselop::Factor::gaussian(
                                rng.gen_range(-0.5..0.5),
                                rng.gen_range(0.5..0.9),
                            );
                            if rng.gen_bool(0.5) {
                                f.poly = vec![rng.gen_range(-0.5..0.5), 1.0];
                            }
                            f
                        })
                        .collect(),
                };
                let f = mk(&mut rng);
                let g = mk(&mut rng);
                let res = adjoint_residual_separable(&jp, lambda, &f, &g, 9.0, 220).unwrap();
                assert!(res < 1e-6, "{spec} lambda={lambda}: residual {res:.2e}");
            }
        }
    }
}

#[test]
fn adjoint_identity_direct_small_dimension() {
    // non-separable pair on the 3-dimensional sym:2
    let jp = Arc::new(JordanPairStructure::build(&AlgebraSpec::parse("sym:2").unwrap()).unwrap());
    let mut rng = jb_core::probe::rng(3);
    let w = jb_core::probe::random_element(&jp, Side::Minus, &mut rng);
    let window = || Chain {
        outer: Smooth::GaussWindow,
        inner: Quadratic {
            m: Quadratic::norm_squared(&jp).m * 1.3,
            a: DVector::zeros(jp.dim()),
            c: 0.0,
        },
    };
    let f = Product(window(), Chain { outer: Smooth::Sin, inner: Linear::pairing(&jp, &w) });
    let g = Product(window(), Chain { outer: Smooth::Cos, inner: Linear::pairing(&jp, &w) });
    let res = adjoint_residual_direct(&jp, 1.0, &f, &g, 4.5, 96).unwrap();
    assert!(res < 1e-6, "direct residual {res:.2e}");
}

#[test]
fn scalar_pair_adjoint_reduces_to_classical_identity() {
    // n = 1, p = 1: int (x f'' + lambda f') g = int f (x g'' + (2-lambda) g')
    let jp = Arc::new(JordanPairStructure::build(&AlgebraSpec::parse("rect:1x1").unwrap()).unwrap());
    let f = SeparableField { factors: vec![jb_besselop::Factor { poly: vec![0.2, 1.0], center: 0.3, width: 0.7 }] };
    let g = SeparableField { factors: vec![jb_besselop::Factor::gaussian(-0.2, 0.6)] };
    let res = adjoint_residual_separable(&jp, 0.7, &f, &g, 8.0, 220).unwrap();
    assert!(res < 1e-10, "scalar residual {res:.2e}");
    // independent classical evaluation of both sides
    let gl = jb_cone::quad::gauss_legendre_ab(200, -8.0, 8.0);
    let (mut lhs, mut rhs) = (0.0, 0.0);
    for &(s, w) in &gl {
        let fe = f.factors[0].eval(s);
        let ge = g.factors[0].eval(s);
        lhs += w * (s * fe.2 + 0.7 * fe.1) * ge.0;
        rhs += w * fe.0 * (s * ge.2 + (2.0 - 0.7) * ge.1);
    }
    assert!((lhs - rhs).abs() < 1e-10 * (lhs.abs() + rhs.abs()));
}

#[test]
fn orbit_symmetry_invariant_profiles() {
    let cases = [("sym:2", 1usize), ("sym:3", 1), ("sym:3", 2), ("herm_c:2", 1)];
    let quad = jb_cone::QuadratureSpec { nodes_per_axis: 240, ..Default::default() };
    for (spec, k) in cases {
        let ctx = orbit(spec, k);
        // wall damping: profiles must vanish on the chamber wall t_i -> 0,
        // where the measure density gives no suppression
        let damp = |t: &[f64]| -> f64 {
            t.iter().map(|&x| 1.0 - (-(x / 0.45).powi(2)).exp()).product()
        };
        for seed in 0..10u64 {
            let (a, b) = (2.8 + 0.1 * seed as f64, 0.25 + 0.01 * seed as f64);
            let f = move |t: &[f64]| {
                let q: f64 = t.iter().map(|x| x * x).sum();
                (-(q - a).powi(2) / (2.0 * b)).exp() * damp(t)
            };
            let g = move |t: &[f64]| {
                let s: f64 = t.iter().sum();
                (-(s - a).powi(2) / b).exp() * (1.0 + 0.3 * s) * damp(t)
            };
            let res = orbit_symmetry_residual_radial(&ctx, &f, &g, &quad).unwrap();
            assert!(res <= 1e-4, "{spec} k={k} seed={seed}: residual {res:.2e}");
        }
        // f = g vanishes identically up to roundoff
        let f = |t: &[f64]| (-(t.iter().map(|x| x * x).sum::<f64>() - 2.0).powi(2)).exp();
        let res = orbit_symmetry_residual_radial(&ctx, &f, &f, &quad).unwrap();
        assert!(res < 1e-12);
    }
}

#[test]
fn orbit_symmetry_refused_without_measure() {
    let ctx = orbit("rect:2x3", 1);
    let f = |t: &[f64]| (-t[0]).exp();
    match orbit_symmetry_residual_radial(&ctx, &f, &f, &jb_cone::QuadratureSpec::default()) {
        Err(jb_orbits::OrbitError::NoMeasure(reason)) => {
            assert!(reason.contains("rect-exception"))
        }
        other => panic!("expected refusal, got {other:?}"),
    }
}

#[test]
fn orbit_symmetry_spin_needs_componentwise_path() {
    // the torus of spin:4 averages the frame vectors to zero, so the scalar
    // reduction is refused and the componentwise torus path takes over
    let ctx = orbit("spin:4", 1);
    let f = |t: &[f64]| (-(t[0] - 2.0f64).powi(2)).exp() * (1.0 - (-(t[0] / 0.45).powi(2)).exp());
    match orbit_symmetry_residual_radial(&ctx, &f, &f, &jb_cone::QuadratureSpec::default()) {
        Err(jb_orbits::OrbitError::Unsupported(msg)) => {
            assert!(msg.contains("componentwise"))
        }
        other => panic!("expected refusal, got {other:?}"),
    }
    let jp = ctx.pair().clone();
    let mut rng = jb_core::probe::rng(4);
    // quadratic factors survive the torus average, so both sides of the
    // identity are nonzero; the window keeps the support off the vertex
    let mut quad_field = |seed: u64| {
        use rand::Rng;
        let mut r2 = jb_core::probe::rng(seed);
        let n = jp.dim();
        let m = nalgebra::DMatrix::from_fn(n, n, |_, _| r2.gen_range(-1.0..1.0));
        Product(
            Chain {
                outer: Smooth::GaussWindow,
                inner: Quadratic {
                    m: Quadratic::norm_squared(&jp).m * 0.5,
                    a: DVector::zeros(jp.dim()),
                    c: -1.5,
                },
            },
            Quadratic { m: &m + m.transpose(), a: DVector::zeros(n), c: 0.1 },
        )
    };
    let f = quad_field(101);
    let g = quad_field(202);
    let _ = &mut rng;
    let quad = jb_cone::QuadratureSpec { nodes_per_axis: 180, ..Default::default() };
    let res = orbit_symmetry_residual_ambient(&ctx, &f, &g, &quad, 24).unwrap();
    assert!(res < 1e-4, "spin ambient residual {res:.2e}");
}

#[test]
fn orbit_symmetry_ambient_componentwise_on_circle() {
    // sym:2 k=1: the compact Levi part is a circle; non-invariant fields
    // exercise the componentwise identity
    let ctx = orbit("sym:2", 1);
    let jp = ctx.pair().clone();
    let mut rng = jb_core::probe::rng(8);
    let w1 = jb_core::probe::random_element(&jp, Side::Minus, &mut rng);
    let w2 = jb_core::probe::random_element(&jp, Side::Minus, &mut rng);
    // the q1^2 factor makes the fields vanish to high order at the vertex
    // of the orbit cone, so no boundary terms arise there
    let window = || Product(
        Chain {
            outer: Smooth::GaussWindow,
            inner: Quadratic {
                m: Quadratic::norm_squared(&jp).m * 0.5,
                a: DVector::zeros(jp.dim()),
                c: -1.5,
            },
        },
        Chain { outer: Smooth::Power(2), inner: Quadratic::norm_squared(&jp) },
    );
    let f = Product(window(), Linear::pairing(&jp, &w1));
    let g = Product(window(), Linear::pairing(&jp, &w2));
    let quad = jb_cone::QuadratureSpec { nodes_per_axis: 180, ..Default::default() };
    let res = orbit_symmetry_residual_ambient(&ctx, &f, &g, &quad, 32).unwrap();
    assert!(res < 1e-4, "ambient residual {res:.2e}");
}
