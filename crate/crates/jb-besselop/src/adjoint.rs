//! Adjoint identity on Lebesgue measure:
//!   int B_lambda f . g dx = int f . B_{2p - lambda} g dx  (componentwise in V^-)
//! for test fields supported in the quadrature box. Separable product fields
//! factorize every term into one-dimensional integrals, which makes the
//! check essentially exact; a direct tensor-grid path covers non-separable
//! pairs at small dimension.

use crate::field::ScalarField;
use crate::op::BesselOperator;
use jb_core::{Element, JordanPairStructure};
use jb_cone::quad::gauss_legendre_ab;
use nalgebra::{DMatrix, DVector};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AdjointError {
    #[error("test field leaks through the integration box (boundary/interior = {0:.3e})")]
    SupportLeak(f64),
}

/// One separable factor: P(s) exp(-((s-c)/w)^2).
#[derive(Debug, Clone)]
pub struct Factor {
    pub poly: Vec<f64>,
    pub center: f64,
    pub width: f64,
}

impl Factor {
    pub fn gaussian(center: f64, width: f64) -> Factor {
        Factor { poly: vec![1.0], center, width }
    }

    fn poly_eval(&self, s: f64) -> (f64, f64, f64) {
        let (mut p, mut dp, mut ddp) = (0.0, 0.0, 0.0);
        for &c in self.poly.iter().rev() {
            ddp = ddp * s + 2.0 * dp;
            dp = dp * s + p;
            p = p * s + c;
        }
        (p, dp, ddp)
    }

    /// (value, first, second derivative)
    pub fn eval(&self, s: f64) -> (f64, f64, f64) {
        let u = (s - self.center) / self.width;
        let g = (-u * u).exp();
        let dg = -2.0 * u / self.width * g;
        let ddg = (4.0 * u * u - 2.0) / (self.width * self.width) * g;
        let (p, dp, ddp) = self.poly_eval(s);
        (p * g, dp * g + p * dg, ddp * g + 2.0 * dp * dg + p * ddg)
    }
}

/// Separable field prod_a phi_a(x_a).
pub struct SeparableField {
    pub factors: Vec<Factor>,
}

impl ScalarField for SeparableField {
    fn value(&self, x: &DVector<f64>) -> f64 {
        self.factors.iter().zip(x.iter()).map(|(f, &s)| f.eval(s).0).product()
    }
    fn gradient(&self, x: &DVector<f64>) -> Option<DVector<f64>> {
        let n = x.len();
        let evals: Vec<(f64, f64, f64)> =
            self.factors.iter().zip(x.iter()).map(|(f, &s)| f.eval(s)).collect();
        let mut g = DVector::zeros(n);
        for i in 0..n {
            let mut v = 1.0;
            for (j, e) in evals.iter().enumerate() {
                v *= if i == j { e.1 } else { e.0 };
            }
            g[i] = v;
        }
        Some(g)
    }
    fn hessian(&self, x: &DVector<f64>) -> Option<DMatrix<f64>> {
        let n = x.len();
        let evals: Vec<(f64, f64, f64)> =
            self.factors.iter().zip(x.iter()).map(|(f, &s)| f.eval(s)).collect();
        let mut h = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut v = 1.0;
                for (l, e) in evals.iter().enumerate() {
                    v *= if l == i && l == j {
                        e.2
                    } else if l == i || l == j {
                        e.1
                    } else {
                        e.0
                    };
                }
                h[(i, j)] = v;
                h[(j, i)] = v;
            }
        }
        Some(h)
    }
}

/// Both sides of the adjoint identity for separable fields, by factorized
/// one-dimensional Gauss quadrature. Returns the relative residual of the
/// V^- -valued difference.
pub fn adjoint_residual_separable(
    jp: &Arc<JordanPairStructure>,
    lambda: f64,
    f: &SeparableField,
    g: &SeparableField,
    box_half_width: f64,
    nodes: usize,
) -> Result<f64, AdjointError> {
    let n = jp.dim();
    assert_eq!(f.factors.len(), n);
    assert_eq!(g.factors.len(), n);
    let gl = gauss_legendre_ab(nodes, -box_half_width, box_half_width);
    // leak check per axis
    let mut leak: f64 = 0.0;
    for (ff, gg) in f.factors.iter().zip(g.factors.iter()) {
        for s in [-box_half_width, box_half_width] {
            leak = leak.max(ff.eval(s).0.abs().max(gg.eval(s).0.abs()));
        }
    }
    if leak > 1e-12 {
        return Err(AdjointError::SupportLeak(leak));
    }
    // per-axis moment tables: m[a][b][p] = int phi^{(a)} psi^{(b)} s^p ds
    let mut table = Vec::with_capacity(n);
    for axis in 0..n {
        let mut m = [[[0.0f64; 2]; 3]; 3];
        for &(s, w) in &gl {
            let fe = f.factors[axis].eval(s);
            let ge = g.factors[axis].eval(s);
            let fv = [fe.0, fe.1, fe.2];
            let gv = [ge.0, ge.1, ge.2];
            for (a, fa) in fv.iter().enumerate() {
                for (b, gb) in gv.iter().enumerate() {
                    m[a][b][0] += w * fa * gb;
                    m[a][b][1] += w * fa * gb * s;
                }
            }
        }
        table.push(m);
    }
    let duals = jp.dual_basis();
    // contraction tensor t[a][b][g] = {chat_a, c_g, chat_b}
    let mut e_g = DVector::zeros(n);
    let mut side = |deriv_on_f: bool, lam: f64| -> DVector<f64> {
        // int B_lam u . v dx with u the field carrying derivatives
        let mut acc = DVector::zeros(n);
        let pick = |axis: usize, a: usize, b: usize, p: usize| -> f64 {
            let m = &table[axis];
            if deriv_on_f {
                m[a][b][p]
            } else {
                m[b][a][p]
            }
        };
        let product_over = |da: usize, db: usize, pg: Option<usize>| -> f64 {
            let mut v = 1.0;
            for axis in 0..n {
                let mut a = 0;
                if axis == da {
                    a += 1;
                }
                if axis == db {
                    a += 1;
                }
                let p = usize::from(Some(axis) == pg);
                v *= pick(axis, a, 0, p);
            }
            v
        };
        for a in 0..n {
            for b in 0..n {
                for gidx in 0..n {
                    e_g[gidx] = 1.0;
                    let t = jp
                        .triple(&duals[a], &Element::plus(e_g.clone()), &duals[b])
                        .expect("parity fixed");
                    e_g[gidx] = 0.0;
                    let integral = product_over(a, b, Some(gidx));
                    acc += &t.coords * (0.5 * integral);
                }
            }
            acc += &duals[a].coords * (lam * product_over(a, usize::MAX, None));
        }
        acc
    };
    let two_p = 2.0 * jp.constants().p;
    let lhs = side(true, lambda);
    let rhs = side(false, two_p - lambda);
    Ok((&lhs - &rhs).norm() / (lhs.norm() + rhs.norm() + 1e-300))
}

/// Direct tensor-grid check for arbitrary (small-dimension) fields.
pub fn adjoint_residual_direct(
    jp: &Arc<JordanPairStructure>,
    lambda: f64,
    f: &dyn ScalarField,
    g: &dyn ScalarField,
    box_half_width: f64,
    nodes: usize,
) -> Result<f64, AdjointError> {
    let n = jp.dim();
    let op = BesselOperator::new(jp.clone());
    let gl = gauss_legendre_ab(nodes, -box_half_width, box_half_width);
    let mut idx = vec![0usize; n];
    let mut lhs = DVector::zeros(n);
    let mut rhs = DVector::zeros(n);
    let two_p = 2.0 * jp.constants().p;
    let mut boundary: f64 = 0.0;
    let mut interior: f64 = 0.0;
    loop {
        let mut w = 1.0;
        let mut x = DVector::zeros(n);
        let mut on_boundary = false;
        for (axis, &i) in idx.iter().enumerate() {
            let (s, ws) = gl[i];
            x[axis] = s;
            w *= ws;
            on_boundary |= i == 0 || i == nodes - 1;
        }
        let xe = Element::plus(x.clone());
        let fv = f.value(&x);
        let gv = g.value(&x);
        if on_boundary {
            boundary = boundary.max(fv.abs().max(gv.abs()));
        } else {
            interior = interior.max(fv.abs().max(gv.abs()));
        }
        lhs += &op.apply(lambda, f, &xe).value.coords * (w * gv);
        rhs += &op.apply(two_p - lambda, g, &xe).value.coords * (w * fv);
        let mut pos = 0;
        loop {
            idx[pos] += 1;
            if idx[pos] < nodes {
                break;
            }
            idx[pos] = 0;
            pos += 1;
            if pos == n {
                let leak = boundary / interior.max(1e-300);
                if leak > 1e-10 {
                    return Err(AdjointError::SupportLeak(leak));
                }
                return Ok((&lhs - &rhs).norm() / (lhs.norm() + rhs.norm() + 1e-300));
            }
        }
    }
}
