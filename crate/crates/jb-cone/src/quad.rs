//! One-dimensional quadrature building blocks: double-exponential rules for
//! half-infinite axes, Gauss-Legendre for compact smooth integrands, and the
//! quadrature spec shared by every integration entry point.

use serde::{Deserialize, Serialize};

/// Method + resolution + seed for cone integrals; deterministic output for a
/// fixed spec.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuadratureSpec {
    /// "radial" (reduce to the spectral chamber) or "montecarlo".
    pub method: String,
    /// nodes per half-infinite axis for the radial rule
    pub nodes_per_axis: usize,
    /// sample count for the Monte Carlo rule
    pub mc_samples: usize,
    pub seed: u64,
    pub tol_abs: f64,
    pub tol_rel: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            method: "radial".into(),
            nodes_per_axis: 96,
            mc_samples: 200_000,
            seed: 0xC0FFEE,
            tol_abs: 1e-9,
            tol_rel: 1e-7,
        }
    }
}

/// Value with an error estimate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Nodes (s_j, weight_j) for integrating over (0, inf) with the
/// double-exponential substitution s = exp(c sinh u), trapezoid in u.
///
/// Algebraic behavior s^a (a > -1) at the origin and exponential decay at
/// infinity both turn into double-exponential decay in u, so a fixed,
/// integrand-independent u-range suffices; integrands are expected to
/// underflow to exact zero well inside it.
pub fn half_line_nodes(n: usize, u_max: f64) -> Vec<(f64, f64)> {
    assert!(n >= 8 && u_max > 0.0);
    let c = std::f64::consts::FRAC_PI_2;
    let h = 2.0 * u_max / (n as f64 - 1.0);
    (0..n)
        .map(|j| {
            let u = -u_max + h * j as f64;
            let s = (c * u.sinh()).exp();
            (s, s * c * u.cosh() * h)
        })
        .collect()
}

/// Default half-width of the u-range (s spans roughly e^{+-70}).
pub const U_MAX: f64 = 4.5;

/// Integrate f over (0, inf) with n nodes; error from node-halving.
pub fn integrate_half_line(f: impl Fn(f64) -> f64, n: usize) -> Estimate {
    let nodes = half_line_nodes(n, U_MAX);
    let full: f64 = nodes.iter().map(|&(s, w)| w * f(s)).sum();
    // coarse rule: every other node, double weight
    let coarse: f64 = nodes
        .iter()
        .enumerate()
        .filter(|(j, _)| j % 2 == 0)
        .map(|(_, &(s, w))| 2.0 * w * f(s))
        .sum();
    Estimate { value: full, error: (full - coarse).abs().max(f64::EPSILON * full.abs()) }
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre polynomial.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess for the i-th positive root
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' by recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            pp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        if x.abs() < 1e-12 {
            out.push((0.0, w));
        } else {
            out.push((x, w));
            out.push((-x, w));
        }
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    debug_assert_eq!(out.len(), n);
    out
}

/// Gauss-Legendre on [a, b].
pub fn gauss_legendre_ab(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    gauss_legendre(n)
        .into_iter()
        .map(|(x, w)| (mid + half * x, half * w))
        .collect()
}

/// Composite Gauss-Legendre rule: `panels` equal panels of `per` nodes on
/// [a, b], robust for narrow interior features.
pub fn composite_gl(panels: usize, per: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(panels * per);
    let h = (b - a) / panels as f64;
    for i in 0..panels {
        out.extend(gauss_legendre_ab(per, a + i as f64 * h, a + (i + 1) as f64 * h));
    }
    out
}

/// Uniform nodes for a smooth periodic integrand on [0, period).
pub fn trapezoid_periodic(n: usize, period: f64) -> Vec<(f64, f64)> {
    let h = period / n as f64;
    (0..n).map(|j| (h * j as f64, h)).collect()
}
