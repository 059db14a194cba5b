//! Integration over the symmetric cone: a radial rule on the ordered
//! spectral chamber (gap coordinates, double-exponential per axis) and a
//! Monte Carlo rule with random frames, both behind one strategy trait.

use crate::context::ConeContext;
use crate::error::{ConeError, Result};
use crate::gamma::gindikin_gamma_real;
use crate::quad::{half_line_nodes, Estimate, QuadratureSpec, U_MAX};
use jb_core::Element;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

/// A point of the open cone with its spectral data.
pub struct ConePoint {
    /// spectral values, descending
    pub w: Vec<f64>,
    pub element: Element,
    pub inverse: Element,
    pub det: f64,
    pub trace: f64,
}

/// Scalar integrand on the cone. `k_invariant` asserts invariance under the
/// automorphism group, which the radial rule requires.
pub trait ConeIntegrand: Sync {
    fn eval(&self, pt: &ConePoint) -> f64;
    fn k_invariant(&self) -> bool;
}

/// Closure adapter asserting K-invariance.
pub struct Invariant<F: Fn(&ConePoint) -> f64 + Sync>(pub F);

impl<F: Fn(&ConePoint) -> f64 + Sync> ConeIntegrand for Invariant<F> {
    fn eval(&self, pt: &ConePoint) -> f64 {
        (self.0)(pt)
    }
    fn k_invariant(&self) -> bool {
        true
    }
}

/// Closure adapter for a general integrand (Monte Carlo only).
pub struct General<F: Fn(&ConePoint) -> f64 + Sync>(pub F);

impl<F: Fn(&ConePoint) -> f64 + Sync> ConeIntegrand for General<F> {
    fn eval(&self, pt: &ConePoint) -> f64 {
        (self.0)(pt)
    }
    fn k_invariant(&self) -> bool {
        false
    }
}

/// Interchangeable integration strategy, selected by name at runtime.
pub trait ConeRule: Send + Sync {
    fn name(&self) -> &'static str;
    fn integrate(
        &self,
        ctx: &ConeContext,
        f: &dyn ConeIntegrand,
        spec: &QuadratureSpec,
    ) -> Result<Estimate>;
}

pub fn rule_for(method: &str) -> Result<Box<dyn ConeRule>> {
    match method.to_ascii_lowercase().as_str() {
        "radial" => Ok(Box::new(RadialRule)),
        "montecarlo" | "mc" => Ok(Box::new(MonteCarloRule)),
        other => Err(ConeError::Unsupported(format!("quadrature method `{other}`"))),
    }
}

pub fn known_rules() -> Vec<&'static str> {
    vec!["radial", "montecarlo"]
}

/// Integrate over the cone with the method named in the spec.
pub fn cone_integrate(
    ctx: &ConeContext,
    f: &dyn ConeIntegrand,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    rule_for(&spec.method)?.integrate(ctx, f, spec)
}

/// Iterate the ordered chamber w_1 > .. > w_k > 0 in gap coordinates
/// g_j = w_j - w_{j+1} (g_k = w_k), each on (0, inf) with a DE rule. All
/// singular factors of the radial density sit at the chamber boundary, which
/// the endpoint-clustered nodes absorb.
fn chamber_sum(
    k: usize,
    nodes: &[(f64, f64)],
    stride: usize,
    mut body: impl FnMut(&[f64], f64),
) {
    let picked: Vec<(f64, f64)> = nodes
        .iter()
        .enumerate()
        .filter(|(j, _)| j % stride == 0)
        .map(|(_, &p)| if stride == 1 { p } else { (p.0, p.1 * stride as f64) })
        .collect();
    let m = picked.len();
    let mut idx = vec![0usize; k];
    let mut w = vec![0.0f64; k];
    loop {
        let mut weight = 1.0;
        let mut acc = 0.0;
        for j in (0..k).rev() {
            let (g, wt) = picked[idx[j]];
            acc += g;
            w[j] = acc;
            weight *= wt;
        }
        body(&w, weight);
        // odometer increment
        let mut pos = 0;
        loop {
            idx[pos] += 1;
            if idx[pos] < m {
                break;
            }
            idx[pos] = 0;
            pos += 1;
            if pos == k {
                return;
            }
        }
    }
}

fn vandermonde(w: &[f64], d: f64) -> f64 {
    let mut v = 1.0;
    for i in 0..w.len() {
        for j in (i + 1)..w.len() {
            v *= (w[i] - w[j]).powf(d);
        }
    }
    v
}

fn cone_point_radial(ctx: &ConeContext, w: &[f64]) -> ConePoint {
    let element = ctx.point_from_radial(w);
    let winv: Vec<f64> = w.iter().map(|x| 1.0 / x).collect();
    let inverse = ctx.point_from_radial(&winv);
    ConePoint {
        w: w.to_vec(),
        element,
        inverse,
        det: w.iter().product(),
        trace: w.iter().sum(),
    }
}

/// Normalization constant relating the chamber measure Pi (w_i - w_j)^d dw
/// to Lebesgue measure on the cone, calibrated against the Gamma identity
/// int_Omega e^{-tr x} dx = Gamma_{k,d}(n_k/k) at the given resolution.
pub fn radial_constant(ctx: &ConeContext, nodes_per_axis: usize) -> Result<f64> {
    let k = ctx.rank();
    let d = ctx.mult_d();
    let gamma_ref = gindikin_gamma_real(k, d, ctx.dim_over_rank())
        .map_err(|_| ConeError::Unsupported("calibration Gamma pole".into()))?;
    let nodes = half_line_nodes(nodes_per_axis.max(16), U_MAX);
    let mut raw_ref = 0.0;
    chamber_sum(k, &nodes, 1, |w, wt| {
        raw_ref += vandermonde(w, d) * wt * (-w.iter().sum::<f64>()).exp();
    });
    Ok(gamma_ref / raw_ref)
}

pub struct RadialRule;

impl RadialRule {
    /// One pass at the given node stride: returns (integral of f against the
    /// calibrated cone measure, raw reference integral used for calibration).
    fn pass(
        ctx: &ConeContext,
        f: &dyn ConeIntegrand,
        nodes: &[(f64, f64)],
        stride: usize,
    ) -> (f64, f64) {
        let k = ctx.rank();
        let d = ctx.mult_d();
        let mut acc_f = 0.0;
        let mut acc_ref = 0.0;
        chamber_sum(k, nodes, stride, |w, wt| {
            let v = vandermonde(w, d) * wt;
            let pt = cone_point_radial(ctx, w);
            acc_f += v * f.eval(&pt);
            acc_ref += v * (-pt.trace).exp();
        });
        (acc_f, acc_ref)
    }
}

impl ConeRule for RadialRule {
    fn name(&self) -> &'static str {
        "radial"
    }

    fn integrate(
        &self,
        ctx: &ConeContext,
        f: &dyn ConeIntegrand,
        spec: &QuadratureSpec,
    ) -> Result<Estimate> {
        if !f.k_invariant() {
            return Err(ConeError::NotInvariant);
        }
        let k = ctx.rank();
        let d = ctx.mult_d();
        // calibration target: int_Omega e^{-tr x} dx = Gamma_{k,d}(n_k/k)
        let gamma_ref = gindikin_gamma_real(k, d, ctx.dim_over_rank())
            .map_err(|_| ConeError::Unsupported("calibration Gamma pole".into()))?;
        let nodes = half_line_nodes(spec.nodes_per_axis.max(16), U_MAX);
        let (full_f, full_ref) = RadialRule::pass(ctx, f, &nodes, 1);
        let (half_f, half_ref) = RadialRule::pass(ctx, f, &nodes, 2);
        let value = gamma_ref * full_f / full_ref;
        let coarse = gamma_ref * half_f / half_ref;
        let error = (value - coarse).abs().max(f64::EPSILON * value.abs());
        Ok(Estimate { value, error })
    }
}

pub struct MonteCarloRule;

impl ConeRule for MonteCarloRule {
    fn name(&self) -> &'static str {
        "montecarlo"
    }

    fn integrate(
        &self,
        ctx: &ConeContext,
        f: &dyn ConeIntegrand,
        spec: &QuadratureSpec,
    ) -> Result<Estimate> {
        let k = ctx.rank();
        let d = ctx.mult_d();
        // radial normalization constant from the same calibration identity
        let gamma_ref = gindikin_gamma_real(k, d, ctx.dim_over_rank())
            .map_err(|_| ConeError::Unsupported("calibration Gamma pole".into()))?;
        let nodes = half_line_nodes(96, U_MAX);
        let mut raw_ref = 0.0;
        chamber_sum(k, &nodes, 1, |w, wt| {
            raw_ref += vandermonde(w, d) * wt * (-w.iter().sum::<f64>()).exp();
        });
        let c_rad = gamma_ref / raw_ref;

        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let shape = 1.0 + d * (k as f64 - 1.0) / 2.0;
        let gamma_dist = Gamma::new(shape, 1.0).expect("valid Gamma shape");
        let ln_gamma_shape = crate::gamma::lgamma_complex(num_complex::Complex64::new(shape, 0.0)).re;
        let k_fact: f64 = (1..=k).map(|i| i as f64).product();
        let n = spec.mc_samples.max(100);
        let jp = ctx.pair();
        let dim_full = jp.dim();
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        let mut taken = 0usize;
        while taken < n {
            // random frame: spectral idempotents of a Gaussian element of A^(k)
            let g = {
                let mut coords = nalgebra::DVector::zeros(dim_full);
                let z: Vec<f64> =
                    (0..ctx.dim()).map(|_| StandardNormal.sample(&mut rng)).collect();
                for (zi, b) in z.iter().zip(ctx.basis_vectors()) {
                    coords += b * *zi;
                }
                Element::plus(coords)
            };
            let Ok(parts) = ctx.spectral(&g) else { continue };
            if parts.len() != k {
                continue;
            }
            let mut w: Vec<f64> = (0..k).map(|_| gamma_dist.sample(&mut rng)).collect();
            w.sort_by(|a, b| b.partial_cmp(a).unwrap());
            // importance weight: c_rad V(w) / (k! prod pdf(w_i))
            let mut log_pdf = 0.0;
            for &wi in &w {
                log_pdf += (shape - 1.0) * wi.ln() - wi - ln_gamma_shape;
            }
            let weight = c_rad * vandermonde(&w, d) / (k_fact * log_pdf.exp());
            let mut element = Element::zero(dim_full, jb_core::Side::Plus);
            let mut inverse = Element::zero(dim_full, jb_core::Side::Plus);
            for (i, (_, c)) in parts.iter().enumerate() {
                element = element.add(&c.scale(w[i]));
                inverse = inverse.add(&c.scale(1.0 / w[i]));
            }
            let pt = ConePoint {
                w: w.clone(),
                element,
                inverse,
                det: w.iter().product(),
                trace: w.iter().sum(),
            };
            let contrib = weight * f.eval(&pt);
            sum += contrib;
            sum_sq += contrib * contrib;
            taken += 1;
        }
        let mean = sum / n as f64;
        let var = (sum_sq / n as f64 - mean * mean).max(0.0);
        Ok(Estimate { value: mean, error: (var / n as f64).sqrt() })
    }
}
