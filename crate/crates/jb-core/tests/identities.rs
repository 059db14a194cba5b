//! Defining identities on random probes, per family, plus the pair
//! determinant oracles and worked scalar-pair examples.

use jb_core::checks::{bergman_det_suite, identity_suite};
use jb_core::{AlgebraSpec, Element, JordanPairStructure, Side};
use nalgebra::DVector;

const FAMILIES: [&str; 6] = ["sym:2", "sym:3", "herm_c:2", "spin:4", "spin:6", "rect:2x3"];

fn build(spec: &str) -> JordanPairStructure {
    JordanPairStructure::build(&AlgebraSpec::parse(spec).unwrap()).unwrap()
}

#[test]
fn identity_suite_all_families() {
    for spec in FAMILIES {
        let jp = build(spec);
        for r in identity_suite(&jp, 50, 7, 1e-10) {
            assert!(
                r.passed(),
                "{spec}: {} residual {:.3e} > {:.1e}",
                r.name,
                r.residual,
                r.tolerance
            );
        }
    }
}

#[test]
fn bergman_determinant_all_families() {
    for spec in FAMILIES {
        let jp = build(spec);
        for r in bergman_det_suite(&jp, 30, 11, 1e-8) {
            assert!(
                r.passed(),
                "{spec}: {} residual {:.3e}",
                r.name,
                r.residual
            );
        }
    }
}

#[test]
fn scalar_pair_worked_examples() {
    // rect:1x1 is the scalar pair: {x,y,z} = 2xyz, Q_x y = x^2 y, B = (1-xy)^2
    let jp = build("rect:1x1");
    let el = |v: f64, side: Side| Element::new(DVector::from_vec(vec![v]), side);
    let x = el(0.7, Side::Plus);
    let y = el(0.4, Side::Minus);
    let z = el(-1.3, Side::Plus);
    let t = jp.triple(&x, &y, &z).unwrap();
    assert!((t.coords[0] - 2.0 * 0.7 * 0.4 * (-1.3)).abs() < 1e-14);
    let q = jp.quad(&x, &y).unwrap();
    assert!((q.coords[0] - 0.7f64.powi(2) * 0.4).abs() < 1e-14);
    let b = jp.bergman_matrix(&x, &y);
    assert!((b[(0, 0)] - (1.0 - 0.28f64).powi(2)).abs() < 1e-14);
    // Delta(x,y) = 1 - xy, quasi-inverse x^y = x/(1-xy)
    let delta = jp.pair_det(&x, &y).unwrap();
    assert!((delta - (1.0 - 0.28)).abs() < 1e-12);
    let xq = jp.quasi_inverse(&x, &y).unwrap();
    assert!((xq.coords[0] - 0.7 / (1.0 - 0.28)).abs() < 1e-12);
}

#[test]
fn triple_parity_and_bilinearity() {
    let jp = build("rect:2x3");
    let mut rng = jb_core::probe::rng(3);
    let x = jb_core::probe::random_element(&jp, Side::Plus, &mut rng);
    let y = jb_core::probe::random_element(&jp, Side::Minus, &mut rng);
    let z = jb_core::probe::random_element(&jp, Side::Plus, &mut rng);
    // parity mismatch is refused
    assert!(jp.triple(&x, &z, &x).is_err());
    // symmetry in the outer arguments
    let a = jp.triple(&x, &y, &z).unwrap();
    let b = jp.triple(&z, &y, &x).unwrap();
    assert!(a.sub(&b).norm() < 1e-12);
    // {x, 0, z} = 0
    let zero = Element::zero(jp.dim(), Side::Minus);
    assert!(jp.triple(&x, &zero, &z).unwrap().norm() == 0.0);
    // tripotent: {e, e', e} = 2e
    let f = jp.make_frame();
    let t = jp.triple(&f.tripotents[0], &f.duals[0], &f.tripotents[0]).unwrap();
    assert!(t.sub(&f.tripotents[0].scale(2.0)).norm() < 1e-10);
}

#[test]
fn d_operator_spectrum_on_tripotent() {
    let jp = build("sym:3");
    let f = jp.make_frame();
    let d = jp.d_matrix(&f.tripotents[0], &f.duals[0]);
    for ev in d.complex_eigenvalues().iter() {
        assert!(ev.im.abs() < 1e-9);
        let re = ev.re;
        let dist = [0.0, 1.0, 2.0]
            .iter()
            .map(|c| (re - c).abs())
            .fold(f64::INFINITY, f64::min);
        assert!(dist < 1e-9, "eigenvalue {re} not in {{0,1,2}}");
    }
}

#[test]
fn pair_det_derivative_anchor() {
    // d_b Delta(x, y)|_{x=0} = -tau(b, y)
    for spec in ["sym:2", "spin:4", "rect:2x3"] {
        let jp = build(spec);
        let mut rng = jb_core::probe::rng(5);
        let y = jb_core::probe::random_element(&jp, Side::Minus, &mut rng);
        let b = jb_core::probe::random_element(&jp, Side::Plus, &mut rng);
        let h = 1e-5;
        let dplus = jp.pair_det(&b.scale(h), &y).unwrap();
        let dminus = jp.pair_det(&b.scale(-h), &y).unwrap();
        let fd = (dplus - dminus) / (2.0 * h);
        assert!(
            (fd + jp.tau(&b, &y)).abs() < 1e-8,
            "{spec}: derivative anchor fd={fd}, tau={}",
            jp.tau(&b, &y)
        );
    }
}

#[test]
fn pair_det_odd_power_sign_tracking() {
    // rect:2x3 has 2p = 5 (odd): Delta can go negative and the root follows it
    let jp = build("rect:2x3");
    // x = 2 E_11, y = E_11': Delta = det(I - xy) = 1 - 2 = -1
    let mut xv = DVector::zeros(6);
    xv[0] = 2.0;
    let x = Element::plus(xv);
    let mut yv = DVector::zeros(6);
    yv[0] = 1.0;
    let y = Element::minus(yv);
    let delta = jp.pair_det(&x, &y).unwrap();
    let oracle = jp.pair_norm_oracle(&x, &y);
    assert!((oracle + 1.0).abs() < 1e-12);
    assert!((delta - oracle).abs() < 1e-9, "delta = {delta}");
}

#[test]
fn pair_det_trivial_values() {
    let jp = build("spin:4");
    let mut rng = jb_core::probe::rng(9);
    let x = jb_core::probe::random_element(&jp, Side::Plus, &mut rng);
    let zero = Element::zero(jp.dim(), Side::Minus);
    assert!((jp.pair_det(&x, &zero).unwrap() - 1.0).abs() < 1e-12);
    assert!(
        (jp.pair_det(&Element::zero(jp.dim(), Side::Plus), &zero).unwrap() - 1.0).abs() < 1e-14
    );
}
