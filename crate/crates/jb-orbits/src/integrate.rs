//! Measure Jacobians and radial orbit integration.

use crate::{OrbitContext, OrbitError, Result};
use jb_cone::quad::{half_line_nodes, Estimate, QuadratureSpec, U_MAX};
use jb_core::Element;

/// Polar-coordinate density of the equivariant measure with character
/// exponent lambda:
///   J(t) = prod_j t_j^{lambda + (r - 2k + 1) d + b/2 - 1}
///          prod_{i<j} (t_i - t_j)^{d+} (t_i + t_j)^{d-}.
pub fn jacobian_j(ctx: &OrbitContext, t: &[f64], lambda_char: f64) -> f64 {
    let c = ctx.pair().constants();
    let k = ctx.k();
    let r = c.rank as f64;
    let expo = lambda_char + (r - 2.0 * k as f64 + 1.0) * c.d + c.b / 2.0 - 1.0;
    let mut j = 1.0;
    for &ti in t {
        j *= ti.powf(expo);
    }
    for i in 0..t.len() {
        for l in (i + 1)..t.len() {
            j *= (t[i] - t[l]).powf(c.d_plus) * (t[i] + t[l]).powf(c.d_minus);
        }
    }
    j
}

/// Homogeneity degree of J(t) dt: k (lambda + (r-2k+1)d + b/2 - 1) + k(k-1)d + k.
pub fn jacobian_degree(ctx: &OrbitContext, lambda_char: f64) -> f64 {
    let c = ctx.pair().constants();
    let k = ctx.k() as f64;
    let r = c.rank as f64;
    k * (lambda_char + (r - 2.0 * k + 1.0) * c.d + c.b / 2.0 - 1.0) + k * (k - 1.0) * c.d + k
}

/// Fiber Jacobian in exponential coordinates t_j = e^{tau_j}:
///   prod_{i<j} sinh^{d+}((tau_i - tau_j)/2) cosh^{d-}((tau_i - tau_j)/2).
pub fn fiber_jacobian(ctx: &OrbitContext, tau: &[f64]) -> f64 {
    let c = ctx.pair().constants();
    let mut j = 1.0;
    for i in 0..tau.len() {
        for l in (i + 1)..tau.len() {
            let h = 0.5 * (tau[i] - tau[l]);
            j *= h.sinh().powf(c.d_plus) * h.cosh().powf(c.d_minus);
        }
    }
    j
}

/// Chart density |Delta(x_2)|^{kd - p} of the pullback of the measure along
/// the chart, where Delta is the determinant of the Peirce-2 Jordan algebra.
/// Computed through |Det Q_{x_2}|_{V_2}| = |Delta(x_2)|^{2 p_2}.
pub fn pullback_density(ctx: &OrbitContext, x2: &Element) -> Result<f64> {
    let jp = ctx.pair();
    let c = jp.constants();
    let k = ctx.k();
    let exponent = (k as f64) * c.d - c.p;
    if exponent == 0.0 {
        return Ok(1.0);
    }
    let pd = ctx.peirce();
    let q = jp.q_matrix(x2);
    let basis_p = jb_core::linalg::column_space(&pd.proj_plus[0], 1e-7);
    let basis_m = jb_core::linalg::column_space(&pd.proj_minus[0], 1e-7);
    let dim2 = basis_p.len();
    let mut small = nalgebra::DMatrix::zeros(dim2, dim2);
    for (j, bm) in basis_m.iter().enumerate() {
        let img = &q * bm;
        for (i, bp) in basis_p.iter().enumerate() {
            small[(i, j)] = bp.dot(&img);
        }
    }
    let det = small.determinant().abs();
    if det <= 0.0 {
        return Err(OrbitError::SingularX2(0.0));
    }
    let p2 = c.p_sub2(k);
    Ok(det.powf(exponent / (2.0 * p2)))
}

/// Integral of an invariant profile F(t) against the equivariant measure in
/// polar coordinates, with the compact-group factor normalized to mass one:
/// int_{C_k^+} F(t) J(t) dt over the ordered chamber.
pub fn orbit_integrate_radial(
    ctx: &OrbitContext,
    f: &dyn Fn(&[f64]) -> f64,
    quad: &QuadratureSpec,
) -> Result<Estimate> {
    let verdict = ctx.verdict();
    if !verdict.exists {
        return Err(OrbitError::NoMeasure(format!(
            "case {}",
            verdict.case.label()
        )));
    }
    let lambda = verdict.lambda_char;
    let k = ctx.k();
    let nodes = half_line_nodes(quad.nodes_per_axis.max(16), U_MAX);
    let pass = |stride: usize| -> f64 {
        let picked: Vec<(f64, f64)> = nodes
            .iter()
            .enumerate()
            .filter(|(j, _)| j % stride == 0)
            .map(|(_, &(g, w))| (g, w * stride as f64))
            .collect();
        let m = picked.len();
        let mut idx = vec![0usize; k];
        let mut t = vec![0.0f64; k];
        let mut acc = 0.0;
        'outer: loop {
            let mut weight = 1.0;
            let mut cum = 0.0;
            for j in (0..k).rev() {
                let (g, wt) = picked[idx[j]];
                cum += g;
                t[j] = cum;
                weight *= wt;
            }
            let contrib = weight * jacobian_j(ctx, &t, lambda) * f(&t);
            if contrib.is_finite() {
                acc += contrib;
            }
            let mut pos = 0;
            loop {
                idx[pos] += 1;
                if idx[pos] < m {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
                if pos == k {
                    break 'outer;
                }
            }
        }
        acc
    };
    let full = pass(1);
    let coarse = pass(2);
    Ok(Estimate { value: full, error: (full - coarse).abs().max(f64::EPSILON * full.abs()) })
}
