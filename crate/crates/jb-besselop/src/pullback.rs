//! Pullback of the Bessel operator along the rank-variety chart, evaluated
//! through the closed formula: at x = x_2 + x_1 with x_2 invertible,
//!
//!   (phi* B_lambda f)(x) = (1/2) sum_{a,b in I2 u I1} f_ab {chat_a, x, chat_b}
//!     + (1/2) sum_{a,b in I1} f_ab {chat_a, Q_{x_1} x_2^{-1}, chat_b}
//!     + lambda grad_2 f + lambda grad_1 f
//!     + (lambda - kd) B_{x_2^{-1}, x_1} grad_0 f.
//!
//! The trailing coefficient vanishes exactly at lambda = kd, which is the
//! tangency statement certified in `tangency`.

use crate::field::{Differentiable, ScalarField};
use crate::op::tau_gradient;
use jb_core::checks::peirce_adapted_dual_bases;
use jb_core::Element;
use jb_orbits::{chart_forward, chart_inverse, v2_inverse, OrbitContext};
use nalgebra::DVector;

pub struct PullbackApplication {
    pub value: Element,
    /// coefficient operator applied to the V_0 gradient (the tangency term)
    pub normal_term: Element,
}

/// Right-hand side of the pullback formula at x = x_2 + x_1.
pub fn pullback_bessel(
    ctx: &OrbitContext,
    lambda: f64,
    f: &dyn ScalarField,
    x: &Element,
) -> jb_orbits::Result<PullbackApplication> {
    let jp = ctx.pair();
    let pd = ctx.peirce();
    let k = ctx.k();
    let c = jp.constants();
    let x2 = pd.project(2, x);
    let x1 = pd.project(1, x);
    let x2_inv = v2_inverse(ctx, &x2)?;
    let q_x1 = jp.quad(&x1, &x2_inv).expect("parity fixed");
    let (basis, dual, labels) = peirce_adapted_dual_bases(jp, k);
    let dfr = Differentiable::new(f);
    let hess = dfr.hessian(&x.coords);
    let n = jp.dim();
    let mut acc = DVector::zeros(n);
    for (a, (ca, da)) in basis.iter().zip(dual.iter()).enumerate() {
        if labels[a] == 0 {
            continue;
        }
        for (b, (cb, db)) in basis.iter().zip(dual.iter()).enumerate() {
            if labels[b] == 0 {
                continue;
            }
            let h = (ca.coords.transpose() * &hess * &cb.coords)[(0, 0)];
            if h == 0.0 {
                continue;
            }
            let mut t = jp.triple(da, x, db).expect("parity fixed");
            if labels[a] == 1 && labels[b] == 1 {
                t = t.add(&jp.triple(da, &q_x1, db).expect("parity fixed"));
            }
            acc += &t.coords * (0.5 * h);
        }
    }
    // gradient terms: lambda on V_2^- and V_1^-, (lambda - kd) B_{x2^{-1}, x1} on V_0^-
    let tgrad = tau_gradient(jp, f, x);
    let g2 = pd.project(2, &tgrad);
    let g1 = pd.project(1, &tgrad);
    let g0 = pd.project(0, &tgrad);
    let bmat = jp.bergman_matrix(&x2_inv, &x1);
    let normal = Element::minus(&bmat * &g0.coords).scale(lambda - k as f64 * c.d);
    let value = Element::minus(acc)
        .add(&g2.scale(lambda))
        .add(&g1.scale(lambda))
        .add(&normal);
    Ok(PullbackApplication { value, normal_term: normal })
}

/// Chain-rule oracle: apply the ambient operator to f o phi^{-1} at phi(x).
/// The composed gradient is exact (d phi^{-1} in closed form); the Hessian
/// falls back to differences of that gradient.
pub fn pullback_chain_oracle(
    ctx: &OrbitContext,
    lambda: f64,
    f: &dyn ScalarField,
    x: &Element,
) -> jb_orbits::Result<Element> {
    let y = chart_forward(ctx, x)?;
    struct Composed<'a> {
        ctx: &'a OrbitContext,
        f: &'a dyn ScalarField,
    }
    impl<'a> Composed<'a> {
        /// d phi^{-1}(y)[v] = v - {v_1, y_2^{-1}, y_1} + Q_{y_1} Q_{y_2^{-1}} v_2
        fn dinv(&self, y: &Element, v: &Element) -> Option<Element> {
            let jp = self.ctx.pair();
            let pd = self.ctx.peirce();
            let y2 = pd.project(2, y);
            let y1 = pd.project(1, y);
            let inv = v2_inverse(self.ctx, &y2).ok()?;
            let v1 = pd.project(1, v);
            let v2 = pd.project(2, v);
            let mut out = v.clone();
            if v1.norm() > 0.0 {
                out = out.sub(&jp.triple(&v1, &inv, &y1).expect("parity fixed"));
            }
            if v2.norm() > 0.0 {
                let qv = jp.quad(&inv, &v2).expect("parity fixed");
                out = out.add(&jp.quad(&y1, &qv).expect("parity fixed"));
            }
            Some(out)
        }
    }
    impl<'a> ScalarField for Composed<'a> {
        fn value(&self, ycoords: &DVector<f64>) -> f64 {
            let yel = Element::plus(ycoords.clone());
            match chart_inverse(self.ctx, &yel) {
                Ok(x) => self.f.value(&x.coords),
                Err(_) => f64::NAN,
            }
        }
        fn gradient(&self, ycoords: &DVector<f64>) -> Option<DVector<f64>> {
            let yel = Element::plus(ycoords.clone());
            let x = chart_inverse(self.ctx, &yel).ok()?;
            let gf = crate::field::Differentiable::new(self.f).gradient(&x.coords);
            // (d phi^{-1})^T gf, column by column
            let n = ycoords.len();
            let mut out = DVector::zeros(n);
            let mut e = DVector::zeros(n);
            for a in 0..n {
                e[a] = 1.0;
                let img = self.dinv(&yel, &Element::plus(e.clone()))?;
                out[a] = img.coords.dot(&gf);
                e[a] = 0.0;
            }
            Some(out)
        }
    }
    let composed = Composed { ctx, f };
    let op = crate::op::BesselOperator::new(ctx.pair().clone());
    Ok(op.apply(lambda, &composed, &y).value)
}
