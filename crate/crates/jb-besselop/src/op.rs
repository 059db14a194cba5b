//! Pointwise application of the Bessel operator
//!   B_lambda f(x) = (1/2) sum_{a,b} d^2f/dx_a dx_b {chat_a, x, chat_b}
//!                   + lambda sum_a df/dx_a chat_a,
//! a V^- -valued second-order operator, independent of the dual basis pair.

use crate::field::{Differentiable, FdPolicy, ScalarField};
use jb_core::{Element, JordanPairStructure, Side};
use nalgebra::{DMatrix, DVector};
use std::sync::Arc;

/// The operator bound to a structure, with the contraction tensor cached
/// for moderate dimensions.
pub struct BesselOperator {
    jp: Arc<JordanPairStructure>,
    dual: Vec<Element>,
    /// cache[g] = matrix whose (a,b) block row holds {chat_a, c_g, chat_b}
    /// as column vectors: cache[g][(i, a*n+b)] = {chat_a, c_g, chat_b}_i
    cache: Option<Vec<DMatrix<f64>>>,
}

/// Value together with the term split, for diagnostics.
pub struct BesselApplication {
    pub lambda: f64,
    pub value: Element,
    pub second_order: Element,
    pub gradient_part: Element,
}

impl BesselOperator {
    pub fn new(jp: Arc<JordanPairStructure>) -> Self {
        let dual = jp.dual_basis();
        let n = jp.dim();
        let cache = if n <= 32 {
            let mut per_gamma = Vec::with_capacity(n);
            let mut cg = DVector::zeros(n);
            for g in 0..n {
                cg[g] = 1.0;
                let eg = Element::plus(cg.clone());
                let mut m = DMatrix::zeros(n, n * n);
                for (a, da) in dual.iter().enumerate() {
                    for (b, db) in dual.iter().enumerate() {
                        let t = jp.triple(da, &eg, db).expect("parity fixed");
                        m.set_column(a * n + b, &t.coords);
                    }
                }
                per_gamma.push(m);
                cg[g] = 0.0;
            }
            Some(per_gamma)
        } else {
            None
        };
        BesselOperator { jp, dual, cache }
    }

    pub fn pair(&self) -> &Arc<JordanPairStructure> {
        &self.jp
    }

    /// Apply with the default dual bases and term diagnostics.
    pub fn apply(&self, lambda: f64, f: &dyn ScalarField, x: &Element) -> BesselApplication {
        self.apply_with_fd(lambda, f, x, FdPolicy::default())
    }

    pub fn apply_with_fd(
        &self,
        lambda: f64,
        f: &dyn ScalarField,
        x: &Element,
        fd: FdPolicy,
    ) -> BesselApplication {
        debug_assert_eq!(x.side, Side::Plus);
        let dfr = Differentiable { field: f, fd };
        let grad = dfr.gradient(&x.coords);
        let hess = dfr.hessian(&x.coords);
        self.apply_derivatives(lambda, &grad, &hess, x)
    }

    /// Core contraction from precomputed coordinate derivatives.
    pub fn apply_derivatives(
        &self,
        lambda: f64,
        grad: &DVector<f64>,
        hess: &DMatrix<f64>,
        x: &Element,
    ) -> BesselApplication {
        let n = self.jp.dim();
        let mut second = DVector::zeros(n);
        match &self.cache {
            Some(per_gamma) => {
                let hvec = DVector::from_fn(n * n, |i, _| hess[(i / n, i % n)]);
                for g in 0..n {
                    if x.coords[g] != 0.0 {
                        second += (&per_gamma[g] * &hvec) * x.coords[g];
                    }
                }
            }
            None => {
                for (a, da) in self.dual.iter().enumerate() {
                    for (b, db) in self.dual.iter().enumerate() {
                        let h = hess[(a, b)];
                        if h != 0.0 {
                            let t = self.jp.triple(da, x, db).expect("parity fixed");
                            second += &t.coords * h;
                        }
                    }
                }
            }
        }
        let mut grad_part = DVector::zeros(n);
        for (a, da) in self.dual.iter().enumerate() {
            grad_part += &da.coords * grad[a];
        }
        let second_order = Element::minus(second * 0.5);
        let gradient_part = Element::minus(grad_part * lambda);
        BesselApplication {
            lambda,
            value: second_order.add(&gradient_part),
            second_order,
            gradient_part,
        }
    }

    /// Apply through an arbitrary tau-dual basis pair (basis independence).
    pub fn apply_with_bases(
        &self,
        lambda: f64,
        f: &dyn ScalarField,
        x: &Element,
        basis: &[Element],
        dual: &[Element],
    ) -> Element {
        let dfr = Differentiable::new(f);
        let grad = dfr.gradient(&x.coords);
        let hess = dfr.hessian(&x.coords);
        let n = self.jp.dim();
        // directional derivatives along the supplied basis
        let mut out = DVector::zeros(n);
        for (a, (ca, da)) in basis.iter().zip(dual.iter()).enumerate() {
            let _ = a;
            let df_a = grad.dot(&ca.coords);
            out += &da.coords * (lambda * df_a);
        }
        for (ca, da) in basis.iter().zip(dual.iter()) {
            for (cb, db) in basis.iter().zip(dual.iter()) {
                let h = (ca.coords.transpose() * &hess * &cb.coords)[(0, 0)];
                let t = self.jp.triple(da, x, db).expect("parity fixed");
                out += &t.coords * (0.5 * h);
            }
        }
        Element::minus(out)
    }

    /// Residual of the equivariance law B_lambda (f o h^{-1})(x) =
    /// h_- (B_lambda f)(h^{-1} x) for an automorphism pair (h_+, h_-).
    pub fn equivariance_residual(
        &self,
        lambda: f64,
        f: &dyn ScalarField,
        x: &Element,
        h_plus: &DMatrix<f64>,
        h_minus: &DMatrix<f64>,
    ) -> f64 {
        let h_plus_inv = h_plus.clone().try_inverse().expect("automorphism invertible");
        let composed = crate::field::LinearCompose {
            inner: Passthrough(f),
            a: h_plus_inv.clone(),
            b: DVector::zeros(self.jp.dim()),
        };
        let lhs = self.apply(lambda, &composed, x).value;
        let x_back = Element::plus(&h_plus_inv * &x.coords);
        let rhs = Element::minus(h_minus * &self.apply(lambda, f, &x_back).value.coords);
        lhs.sub(&rhs).norm() / (1.0 + lhs.norm() + rhs.norm())
    }
}

/// Borrowing adapter so combinators can wrap unsized fields.
pub struct Passthrough<'a>(pub &'a dyn ScalarField);

impl<'a> ScalarField for Passthrough<'a> {
    fn value(&self, x: &DVector<f64>) -> f64 {
        self.0.value(x)
    }
    fn gradient(&self, x: &DVector<f64>) -> Option<DVector<f64>> {
        self.0.gradient(x)
    }
    fn hessian(&self, x: &DVector<f64>) -> Option<DMatrix<f64>> {
        self.0.hessian(x)
    }
}

/// tau-gradient of f at x as a V^- element: tau(v, grad) = d_v f.
pub fn tau_gradient(jp: &JordanPairStructure, f: &dyn ScalarField, x: &Element) -> Element {
    let dfr = Differentiable::new(f);
    let grad = dfr.gradient(&x.coords);
    // tau(v, w) = v^T G w, so w = G^{-1} grad
    Element::minus(jp.gram_inv() * grad)
}
