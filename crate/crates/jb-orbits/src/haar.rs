//! Automorphisms from the compact part of the Levi group, sampled by
//! exponentiating the skew part of the structure algebra.

use jb_core::{Element, JordanPairStructure, Side};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

/// A Jordan pair automorphism given by its two matrix actions.
#[derive(Debug, Clone)]
pub struct Automorphism {
    pub plus: DMatrix<f64>,
    pub minus: DMatrix<f64>,
}

impl Automorphism {
    pub fn apply_plus(&self, x: &Element) -> Element {
        debug_assert_eq!(x.side, Side::Plus);
        Element::plus(&self.plus * &x.coords)
    }

    pub fn apply_minus(&self, y: &Element) -> Element {
        debug_assert_eq!(y.side, Side::Minus);
        Element::minus(&self.minus * &y.coords)
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            plus: self.plus.clone().try_inverse().expect("automorphisms are invertible"),
            minus: self.minus.clone().try_inverse().expect("automorphisms are invertible"),
        }
    }
}

/// Matrix exponential by scaling and squaring with a Taylor core.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = a.norm();
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let b = a / 2f64.powi(s);
    let mut term = DMatrix::<f64>::identity(n, n);
    let mut acc = DMatrix::<f64>::identity(n, n);
    for k in 1..=18 {
        term = &term * &b / k as f64;
        acc += &term;
    }
    for _ in 0..s {
        acc = &acc * &acc;
    }
    acc
}

/// Orthonormal basis (vectorized) of the skew part of the structure algebra
/// acting on V^+: directions in span{ D_{c, chat} } that are skew-adjoint
/// for the K-inner product. Exponentials lie in the compact part of L.
pub fn compact_levi_basis(jp: &JordanPairStructure) -> Vec<DMatrix<f64>> {
    let n = jp.dim();
    let duals = jp.dual_basis();
    let mut gens: Vec<DMatrix<f64>> = Vec::with_capacity(n * n);
    for a in 0..n {
        let mut ca = DVector::zeros(n);
        ca[a] = 1.0;
        let ea = Element::plus(ca);
        for dual in &duals {
            gens.push(jp.d_matrix(&ea, dual));
        }
    }
    // gram of (.|.) on V^+: S = G Theta
    let theta = jb_core::linalg::matrix_of(n, |v| jp.theta(&Element::plus(v.clone())).coords);
    let s = jp.gram() * &theta;
    let s_inv = s.clone().try_inverse().expect("K-inner product is definite");
    // skew projection within the span: T -> (T - S^{-1} T^T S)/2, then take
    // the column space of all projected generators
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for g in &gens {
        let skew = 0.5 * (g - &s_inv * g.transpose() * &s);
        cols.push(DVector::from_fn(n * n, |i, _| skew[(i / n, i % n)]));
    }
    let mat = DMatrix::from_columns(&cols);
    jb_core::linalg::column_space(&mat, 1e-9)
        .into_iter()
        .map(|v| DMatrix::from_fn(n, n, |r, c| v[r * n + c]))
        .collect()
}

/// Random element of the identity component of M cap K.
pub fn random_mk(
    jp: &JordanPairStructure,
    basis: &[DMatrix<f64>],
    scale: f64,
    rng: &mut impl Rng,
) -> Automorphism {
    let n = jp.dim();
    let mut t = DMatrix::<f64>::zeros(n, n);
    for b in basis {
        t += b * rng.gen_range(-scale..scale);
    }
    let plus = expm(&t);
    // the V^- action of T in l is minus the tau-adjoint
    let g = jp.gram();
    let g_inv = g.clone().try_inverse().expect("trace form is invertible");
    let t_minus = -(&g_inv * t.transpose() * g);
    let minus = expm(&t_minus);
    Automorphism { plus, minus }
}
