//! Peirce decomposition rules, joint/refined dimensions, and property tests.

use jb_core::{AlgebraSpec, Element, JordanPairStructure, Side};
use proptest::prelude::*;

fn build(spec: &str) -> JordanPairStructure {
    JordanPairStructure::build(&AlgebraSpec::parse(spec).unwrap()).unwrap()
}

#[test]
fn projectors_resolve_identity_and_are_orthogonal() {
    for spec in ["sym:3", "herm_c:2", "spin:5", "rect:2x3"] {
        let jp = build(spec);
        let idem = jp.complete_idempotent(&jp.frame_sum(1)).unwrap();
        let pd = jp.peirce(&idem).unwrap();
        let n = jp.dim();
        let mut sum = nalgebra::DMatrix::<f64>::zeros(n, n);
        for p in &pd.proj_plus {
            sum += p;
            assert!((p * p - p).norm() < 1e-9, "{spec}: projector not idempotent");
        }
        assert!((sum - nalgebra::DMatrix::<f64>::identity(n, n)).norm() < 1e-9);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let prod = &pd.proj_plus[i] * &pd.proj_plus[j];
                    assert!(prod.norm() < 1e-9, "{spec}: P_i P_j != 0");
                }
            }
        }
        assert_eq!(pd.dims.iter().sum::<usize>(), n);
    }
}

#[test]
fn peirce_multiplication_rules() {
    // {V_k, V_l, V_m} lies in V_{k-l+m}, and {V, V_2, V_0} = 0
    let mut rng = jb_core::probe::rng(21);
    for spec in ["sym:3", "spin:4", "rect:2x3"] {
        let jp = build(spec);
        let idem = jp.complete_idempotent(&jp.frame_sum(1)).unwrap();
        let pd = jp.peirce(&idem).unwrap();
        for _ in 0..40 {
            let x = jb_core::probe::random_element(&jp, Side::Plus, &mut rng);
            let y = jb_core::probe::random_element(&jp, Side::Minus, &mut rng);
            let z = jb_core::probe::random_element(&jp, Side::Plus, &mut rng);
            for k in 0..=2usize {
                for l in 0..=2usize {
                    for m in 0..=2usize {
                        let t = jp
                            .triple(&pd.project(k, &x), &pd.project(l, &y), &pd.project(m, &z))
                            .unwrap();
                        let expect = k as i64 - l as i64 + m as i64;
                        for mp in 0..=2usize {
                            if mp as i64 != expect {
                                let leak = pd.project(mp, &t).norm();
                                assert!(
                                    leak < 1e-9,
                                    "{spec}: {{V{k},V{l},V{m}}} leaks {leak:.2e} into V{mp}"
                                );
                            }
                        }
                    }
                }
            }
            // {V, V_2^-, V_0^+} = 0
            let t = jp
                .triple(&x, &pd.project(2, &y), &pd.project(0, &z))
                .unwrap();
            assert!(t.norm() < 1e-9, "{spec}: {{V, V2, V0}} != 0");
        }
    }
}

#[test]
fn joint_dims_examples() {
    // rect 2x3, k=1: dim V_1^+ = 1*(3-1) + (2-1)*1 = 3
    let jp = build("rect:2x3");
    let idem = jp.complete_idempotent(&jp.frame_sum(1)).unwrap();
    let pd = jp.peirce(&idem).unwrap();
    assert_eq!(pd.dim(1), 3);
    assert_eq!(pd.dim(2), 1);
    assert_eq!(pd.dim(0), 2);

    // dim A_ii = 1 for every frame member
    for spec in ["sym:3", "herm_c:2", "spin:4", "rect:2x3"] {
        let jp = build(spec);
        let joint = jp.joint_peirce();
        for i in 1..=jp.rank() {
            assert_eq!(joint.dim_a((i, i)), 1, "{spec}");
        }
    }

    // full frame sum has V_0 = 0 for unital families
    for spec in ["sym:3", "herm_c:2", "spin:4"] {
        let jp = build(spec);
        let idem = jp.complete_idempotent(&jp.frame_sum(jp.rank())).unwrap();
        let pd = jp.peirce(&idem).unwrap();
        assert_eq!(pd.dim(0), 0, "{spec}");
        assert_eq!(pd.dim(1), 0, "{spec}: unital => V_1(full) = 0");
    }
    // non-unital rect keeps its tails in V_1
    let jp = build("rect:2x3");
    let idem = jp.complete_idempotent(&jp.frame_sum(2)).unwrap();
    let pd = jp.peirce(&idem).unwrap();
    assert_eq!(pd.dim(0), 0);
    assert_eq!(pd.dim(1), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn triple_is_symmetric_and_bilinear(seed in 0u64..1000) {
        let jp = build("spin:5");
        let mut rng = jb_core::probe::rng(seed);
        let x = jb_core::probe::random_element(&jp, Side::Plus, &mut rng);
        let y = jb_core::probe::random_element(&jp, Side::Minus, &mut rng);
        let z = jb_core::probe::random_element(&jp, Side::Plus, &mut rng);
        let w = jb_core::probe::random_element(&jp, Side::Plus, &mut rng);
        let a = 0.7;
        // symmetry
        let s1 = jp.triple(&x, &y, &z).unwrap();
        let s2 = jp.triple(&z, &y, &x).unwrap();
        prop_assert!(s1.sub(&s2).norm() < 1e-10);
        // linearity in the first slot
        let lhs = jp.triple(&x.scale(a).add(&w), &y, &z).unwrap();
        let rhs = jp.triple(&x, &y, &z).unwrap().scale(a).add(&jp.triple(&w, &y, &z).unwrap());
        prop_assert!(lhs.sub(&rhs).norm() < 1e-10);
    }

    #[test]
    fn tau_duality_and_positivity(seed in 0u64..1000) {
        let jp = build("rect:2x3");
        let mut rng = jb_core::probe::rng(seed);
        let x = jb_core::probe::random_element(&jp, Side::Plus, &mut rng);
        // positivity of the K-inner product
        prop_assert!(jp.inner(&x, &x) > 0.0);
        // dual basis property
        let duals = jp.dual_basis();
        for (a, d) in duals.iter().enumerate() {
            let mut ca = nalgebra::DVector::zeros(jp.dim());
            ca[a] = 1.0;
            let e = Element::plus(ca);
            prop_assert!((jp.tau(&e, d) - 1.0).abs() < 1e-10);
        }
        // trace normalization: Tr D_{x,y} = 2 p tau(x,y)
        let y = jb_core::probe::random_element(&jp, Side::Minus, &mut rng);
        let tr = jp.d_matrix(&x, &y).trace();
        prop_assert!((tr - 2.0 * jp.constants().p * jp.tau(&x, &y)).abs() < 1e-9);
    }
}
