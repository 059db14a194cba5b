//! Radial form of the Bessel operator on invariant functions:
//! on the open orbit,
//!   B^i = t_i d_i^2 + (lambda - e - (r-1)d) d_i
//!         + (1/2) sum_{j != i} (d+/(t_i - t_j) + d-/(t_i + t_j)) (t_i d_i - t_j d_j),
//! and on the rank-k orbit at lambda = kd the first k components keep this
//! shape with coefficient (d - e) while the trailing components collapse to
//! ((d+ - d-)/2) sum_j d_j.

use jb_core::JordanPairStructure;

/// F(t) with one and two-fold partial derivatives per axis (no mixed terms
/// are needed). The default implementation differentiates the value.
pub trait RadialField: Sync {
    fn value(&self, t: &[f64]) -> f64;
    /// Five-point first derivative.
    fn partial(&self, t: &[f64], i: usize) -> f64 {
        let h = (1e-3 * (1.0 + t[i].abs())).max(1e-5);
        let mut tt = t.to_vec();
        let mut f = [0.0; 4];
        for (slot, off) in [(-2.0f64, 0), (-1.0, 1), (1.0, 2), (2.0, 3)] {
            tt[i] = t[i] + slot * h;
            f[off] = self.value(&tt);
        }
        (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * h)
    }
    /// Five-point second derivative.
    fn partial2(&self, t: &[f64], i: usize) -> f64 {
        let h = (1e-3 * (1.0 + t[i].abs())).max(1e-5);
        let mut tt = t.to_vec();
        let mut f = [0.0; 5];
        for (slot, off) in [(-2.0f64, 0), (-1.0, 1), (0.0, 2), (1.0, 3), (2.0, 4)] {
            tt[i] = t[i] + slot * h;
            f[off] = self.value(&tt);
        }
        (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h)
    }
}

impl<F: Fn(&[f64]) -> f64 + Sync> RadialField for F {
    fn value(&self, t: &[f64]) -> f64 {
        self(t)
    }
}

/// Components of the radial operator on the open orbit (all r axes).
pub fn radial_components_full(
    jp: &JordanPairStructure,
    lambda: f64,
    f: &dyn RadialField,
    t: &[f64],
) -> Vec<f64> {
    let c = jp.constants();
    let r = c.rank;
    assert_eq!(t.len(), r);
    let d1: Vec<f64> = (0..r).map(|i| f.partial(t, i)).collect();
    let d2: Vec<f64> = (0..r).map(|i| f.partial2(t, i)).collect();
    (0..r)
        .map(|i| {
            let mut v = t[i] * d2[i] + (lambda - c.e - (r as f64 - 1.0) * c.d) * d1[i];
            for j in 0..r {
                if j != i {
                    v += 0.5
                        * (c.d_plus / (t[i] - t[j]) + c.d_minus / (t[i] + t[j]))
                        * (t[i] * d1[i] - t[j] * d1[j]);
                }
            }
            v
        })
        .collect()
}

/// Components of the radial operator on the rank-k orbit at lambda = kd.
/// Returns r values: the first k are the tangential components, the last
/// r - k all equal the trailing expression.
pub fn radial_components_orbit(
    jp: &JordanPairStructure,
    k: usize,
    f: &dyn RadialField,
    t: &[f64],
) -> Vec<f64> {
    let c = jp.constants();
    let r = c.rank;
    assert_eq!(t.len(), k);
    let d1: Vec<f64> = (0..k).map(|i| f.partial(t, i)).collect();
    let d2: Vec<f64> = (0..k).map(|i| f.partial2(t, i)).collect();
    let mut out = Vec::with_capacity(r);
    for i in 0..k {
        let mut v = t[i] * d2[i] + (c.d - c.e) * d1[i];
        for j in 0..k {
            if j != i {
                v += 0.5
                    * (c.d_plus / (t[i] - t[j]) + c.d_minus / (t[i] + t[j]))
                    * (t[i] * d1[i] - t[j] * d1[j]);
            }
        }
        out.push(v);
    }
    let trailing = 0.5 * (c.d_plus - c.d_minus) * d1.iter().sum::<f64>();
    for _ in k..r {
        out.push(trailing);
    }
    out
}
