//! Structure construction across all families: computed constants, frames,
//! rank, and the spec-grammar examples.

use jb_core::{AlgebraSpec, Element, JordanPairStructure, Side};

fn build(spec: &str) -> JordanPairStructure {
    JordanPairStructure::build(&AlgebraSpec::parse(spec).unwrap()).unwrap()
}

#[track_caller]
fn assert_constants(
    spec: &str,
    r: usize,
    d_plus: f64,
    d_minus: f64,
    e: f64,
    b: f64,
    p: f64,
) {
    let jp = build(spec);
    let c = jp.constants();
    assert_eq!(c.rank, r, "{spec}: rank");
    assert_eq!(c.d_plus, d_plus, "{spec}: d+");
    assert_eq!(c.d_minus, d_minus, "{spec}: d-");
    assert_eq!(c.e, e, "{spec}: e");
    assert_eq!(c.b, b, "{spec}: b");
    assert!((c.p - p).abs() < 1e-9, "{spec}: p = {} expected {p}", c.p);
    // p = (e+1) + (r-1) d + b/2 must tie out with the measured pieces
    let p_formula = (c.e + 1.0) + (c.rank as f64 - 1.0) * c.d + c.b / 2.0;
    assert!((c.p - p_formula).abs() < 1e-9);
}

#[test]
fn sym_constants() {
    assert_constants("sym:1", 1, 0.0, 0.0, 0.0, 0.0, 1.0);
    assert_constants("sym:2", 2, 1.0, 0.0, 0.0, 0.0, 1.5);
    assert_constants("sym:3", 3, 1.0, 0.0, 0.0, 0.0, 2.0);
}

#[test]
fn herm_constants() {
    assert_constants("herm_c:2", 2, 2.0, 0.0, 0.0, 0.0, 2.0);
    assert_constants("herm_c:3", 3, 2.0, 0.0, 0.0, 0.0, 3.0);
}

#[test]
fn spin_constants() {
    // split spin factor: rank 2, unital (b = 0), d+ = d- for even n
    assert_constants("spin:4", 2, 1.0, 1.0, 0.0, 0.0, 2.0);
    assert_constants("spin:6", 2, 2.0, 2.0, 0.0, 0.0, 3.0);
    assert_constants("spin:5", 2, 1.0, 2.0, 0.0, 0.0, 2.5);
}

#[test]
fn rect_constants() {
    // rect with p != q is the canonical non-unital example (b > 0)
    assert_constants("rect:2x3", 2, 1.0, 1.0, 0.0, 1.0, 2.5);
    assert_constants("rect:2x2", 2, 1.0, 1.0, 0.0, 0.0, 2.0);
    assert_constants("rect:1x1", 1, 0.0, 0.0, 0.0, 0.0, 1.0);
    assert_constants("rect:3x2", 2, 1.0, 1.0, 0.0, 1.0, 2.5);
}

#[test]
fn frame_is_orthogonal_and_primitive() {
    for spec in ["sym:3", "herm_c:2", "spin:4", "spin:5", "rect:2x3"] {
        let jp = build(spec);
        let f = jp.make_frame();
        assert_eq!(f.len(), jp.rank(), "{spec}");
        for i in 0..f.len() {
            let e = &f.tripotents[i];
            let eb = &f.duals[i];
            // tripotent: Q_e theta(e) = e
            let q = jp.quad(e, eb).unwrap();
            assert!(q.sub(e).norm() < 1e-9, "{spec}: member {i} not tripotent");
            assert!((jp.tau(e, eb) - 1.0).abs() < 1e-9, "{spec}: tau(e_i, e_i') != 1");
            for j in 0..f.len() {
                if i != j {
                    // orthogonality: e_j in V_0(e_i)
                    let d = jp.triple(e, eb, &f.tripotents[j]).unwrap();
                    assert!(d.norm() < 1e-9, "{spec}: members {i},{j} not orthogonal");
                    assert!(jp.tau(&f.tripotents[i], &f.duals[j]).abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn rank_function_examples() {
    let jp = build("sym:3");
    let n = jp.dim();
    assert_eq!(jp.rank_of(&Element::zero(n, Side::Plus)).unwrap(), 0);
    // orthogonal idempotent additivity
    assert_eq!(jp.rank_of(&jp.frame_sum(2)).unwrap(), 2);
    assert_eq!(jp.rank_of(&jp.frame_sum(3)).unwrap(), 3);
    // a random rank-2 symmetric matrix via b_t
    assert_eq!(jp.rank_of(&jp.b_t(&[1.7, 0.3])).unwrap(), 2);

    let jp = build("rect:2x3");
    assert_eq!(jp.rank_of(&jp.b_t(&[2.0, 1.0])).unwrap(), 2);
    assert_eq!(jp.rank_of(&jp.b_t(&[1.0])).unwrap(), 1);
}

#[test]
fn complete_idempotent_roundtrip() {
    for spec in ["sym:2", "spin:4", "rect:2x3"] {
        let jp = build(spec);
        let x = jp.b_t(&[2.0, 0.5]);
        let idem = jp.complete_idempotent(&x).unwrap();
        assert_eq!(idem.rank, 2, "{spec}");
        let q1 = jp.quad(&idem.e, &idem.e_prime).unwrap();
        assert!(q1.sub(&idem.e).norm() < 1e-9, "{spec}");
        let q2 = jp.quad(&idem.e_prime, &idem.e).unwrap();
        assert!(q2.sub(&idem.e_prime).norm() < 1e-9, "{spec}");
    }
}

#[test]
fn spectral_values_recover_polar_radius() {
    let jp = build("sym:3");
    let t = [2.5, 1.0, 0.25];
    let x = jp.b_t(&t);
    let sv = jp.spectral_values(&x).unwrap();
    assert_eq!(sv.len(), 3);
    for (a, b) in sv.iter().zip(t.iter()) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn dimension_overflow_is_reported() {
    let err = JordanPairStructure::build(&AlgebraSpec::parse("rect:9x9").unwrap());
    assert!(err.is_err());
}
