//! The local chart phi_e(x) = x + Q_{x_1} x_2^{-1} of the rank variety and
//! the pullback of the parabolic action along it.

use crate::{OrbitContext, OrbitError, Result};
use jb_core::{Element, Side};
use nalgebra::DMatrix;

/// Inverse of the Peirce-2 component inside the subpair: the unique w in
/// V_2^- with Q_{x_2} w = x_2.
pub fn v2_inverse(ctx: &OrbitContext, x2: &Element) -> Result<Element> {
    let jp = ctx.pair();
    let q = jp.q_matrix(x2);
    // restrict Q_{x_2}: V_2^- -> V_2^+ to the Peirce-2 blocks
    let pd = ctx.peirce();
    let basis_p = jb_core::linalg::column_space(&pd.proj_plus[0], 1e-7);
    let basis_m = jb_core::linalg::column_space(&pd.proj_minus[0], 1e-7);
    let dim2 = basis_p.len();
    let mut small = DMatrix::zeros(dim2, dim2);
    for (j, bm) in basis_m.iter().enumerate() {
        let img = &q * bm;
        for (i, bp) in basis_p.iter().enumerate() {
            small[(i, j)] = bp.dot(&img);
        }
    }
    let rhs = nalgebra::DVector::from_fn(dim2, |i, _| basis_p[i].dot(&x2.coords));
    let svd = small.clone().svd(false, false);
    let smin = svd.singular_values.min();
    let smax = svd.singular_values.max();
    if smax <= 0.0 || smin / smax < 1e-12 {
        return Err(OrbitError::SingularX2(if smax > 0.0 { smin / smax } else { 0.0 }));
    }
    let sol = small.lu().solve(&rhs).ok_or(OrbitError::SingularX2(0.0))?;
    let mut w = nalgebra::DVector::zeros(jp.dim());
    for (c, bm) in sol.iter().zip(basis_m.iter()) {
        w += bm * *c;
    }
    Ok(Element::minus(w))
}

/// phi_e(x) = x + Q_{x_1} x_2^{-1}; maps (V_2 + V_1)-points onto the rank-k
/// variety.
pub fn chart_forward(ctx: &OrbitContext, x: &Element) -> Result<Element> {
    let pd = ctx.peirce();
    let x2 = pd.project(2, x);
    let x1 = pd.project(1, x);
    let inv = v2_inverse(ctx, &x2)?;
    let q = ctx.pair().quad(&x1, &inv)?;
    Ok(x.add(&q))
}

/// phi_e^{-1}(y) = y - Q_{y_1} y_2^{-1}.
pub fn chart_inverse(ctx: &OrbitContext, y: &Element) -> Result<Element> {
    let pd = ctx.peirce();
    let y2 = pd.project(2, y);
    let y1 = pd.project(1, y);
    let inv = v2_inverse(ctx, &y2)?;
    let q = ctx.pair().quad(&y1, &inv)?;
    Ok(y.sub(&q))
}

/// Pullback of the opposite-parabolic action along the chart:
/// the unipotent part acts by xi(B_{v, theta e})(x_2 + x_1) =
/// x_2 + (x_1 - {v, theta e, x_2}) for v in V_1^+.
pub fn pullback_action(ctx: &OrbitContext, v: &Element, x: &Element) -> Result<Element> {
    debug_assert_eq!(v.side, Side::Plus);
    let pd = ctx.peirce();
    let x2 = pd.project(2, x);
    let x1 = pd.project(1, x);
    let ebar = &ctx.idem().e_prime;
    let shift = ctx.pair().triple(v, ebar, &x2)?;
    Ok(x2.add(&x1.sub(&shift)))
}
