//! Tangency certification: fields vanishing on the rank-k variety are
//! annihilated by B_lambda along it exactly when lambda = kd.

use crate::field::ScalarField;
use crate::op::BesselOperator;
use jb_core::{Element, Side};
use jb_orbits::{chart_forward, v2_inverse, OrbitContext};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

/// f_u(y) = tau((phi^{-1} y)_0, u) = tau(y, u) - tau(Q_{y_1} y_2^{-1}, u),
/// u in V_0^-: a chart coordinate function vanishing on the variety, with an
/// exact gradient (the Hessian falls back to differences of the gradient).
pub struct VanishingField<'a> {
    ctx: &'a OrbitContext,
    u: Element,
}

impl<'a> VanishingField<'a> {
    pub fn new(ctx: &'a OrbitContext, u: Element) -> Self {
        debug_assert_eq!(u.side, Side::Minus);
        // u must lie in the V_0^- Peirce space
        let u0 = ctx.peirce().project(0, &u);
        VanishingField { ctx, u: u0 }
    }
}

impl<'a> ScalarField for VanishingField<'a> {
    fn value(&self, ycoords: &DVector<f64>) -> f64 {
        let jp = self.ctx.pair();
        let y = Element::plus(ycoords.clone());
        let pd = self.ctx.peirce();
        let y2 = pd.project(2, &y);
        let y1 = pd.project(1, &y);
        let Ok(inv) = v2_inverse(self.ctx, &y2) else { return f64::NAN };
        let q = jp.quad(&y1, &inv).expect("parity fixed");
        jp.tau(&y, &self.u) - jp.tau(&q, &self.u)
    }

    fn gradient(&self, ycoords: &DVector<f64>) -> Option<DVector<f64>> {
        let jp = self.ctx.pair();
        let y = Element::plus(ycoords.clone());
        let pd = self.ctx.peirce();
        let y2 = pd.project(2, &y);
        let y1 = pd.project(1, &y);
        let inv = v2_inverse(self.ctx, &y2).ok()?;
        // d_v [tau(y, u)] = tau(v, u)
        let mut grad = jp.gram() * &self.u.coords;
        // d_v [tau(Q_{y_1} y_2^{-1}, u)]
        //   = tau({v_1, y_2^{-1}, y_1}, u) - tau(Q_{y_1} Q_{y_2^{-1}} v_2, u)
        let n = jp.dim();
        let mut e = DVector::zeros(n);
        for a in 0..n {
            e[a] = 1.0;
            let v = Element::plus(e.clone());
            let v1 = pd.project(1, &v);
            let v2 = pd.project(2, &v);
            let mut d = 0.0;
            if v1.norm() > 0.0 {
                let t = jp.triple(&v1, &inv, &y1).expect("parity fixed");
                d += jp.tau(&t, &self.u);
            }
            if v2.norm() > 0.0 {
                let qv = jp.quad(&inv, &v2).expect("parity fixed");
                let t = jp.quad(&y1, &qv).expect("parity fixed");
                d -= jp.tau(&t, &self.u);
            }
            grad[a] -= d;
            e[a] = 0.0;
        }
        Some(grad)
    }
}

/// One scan row: residual scale at a given order.
#[derive(Debug, Clone)]
pub struct TangencyPoint {
    pub lambda: f64,
    pub residual: f64,
}

/// Max normalized residual |B_lambda f (y)| over trials of chart points y on
/// the orbit and coordinate fields f vanishing on the variety.
pub fn tangency_residual(
    ctx: &OrbitContext,
    lambda: f64,
    trials: usize,
    seed: u64,
) -> jb_orbits::Result<f64> {
    let jp = ctx.pair();
    let op = BesselOperator::new(jp.clone());
    let pd = ctx.peirce();
    let mut rng = jb_core::probe::rng(seed);
    let v0_basis = jb_core::linalg::column_space(&pd.proj_minus[2], 1e-7);
    debug_assert!(!v0_basis.is_empty(), "tangency needs a nontrivial V_0");
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        // chart point on the orbit: x_2 near e plus a V_1 component
        let noise = jb_core::probe::random_element_scaled(jp, Side::Plus, 0.25, &mut rng);
        let x = ctx
            .idem()
            .e
            .add(&pd.project(2, &noise))
            .add(&pd.project(1, &jb_core::probe::random_element_scaled(jp, Side::Plus, 0.8, &mut rng)));
        let y = chart_forward(ctx, &x)?;
        // random direction in V_0^-
        let mut u = DVector::zeros(jp.dim());
        for b in &v0_basis {
            u += b * rng.gen_range(-1.0f64..1.0);
        }
        let field = VanishingField::new(ctx, Element::minus(u));
        let app = op.apply(lambda, &field, &y);
        let dfr = crate::field::Differentiable::new(&field);
        let grad = dfr.gradient(&y.coords);
        let hess = dfr.hessian(&y.coords);
        let scale = hess.norm() * (1.0 + y.norm()) + grad.norm() + 1e-30;
        worst = worst.max(app.value.norm() / scale);
    }
    Ok(worst)
}

/// Residual profile over an order grid (emitted as CSV by the CLI).
pub fn tangency_scan(
    ctx: &OrbitContext,
    lambdas: &[f64],
    trials: usize,
    seed: u64,
) -> jb_orbits::Result<Vec<TangencyPoint>> {
    lambdas
        .iter()
        .map(|&lambda| {
            Ok(TangencyPoint { lambda, residual: tangency_residual(ctx, lambda, trials, seed)? })
        })
        .collect()
}

/// Helper for tests: a dense matrix of the V_0 projector on the minus side.
pub fn v0_minus_projector(ctx: &OrbitContext) -> DMatrix<f64> {
    ctx.peirce().proj_minus[2].clone()
}
