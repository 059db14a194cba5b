//! Euclidean subalgebra A^(k) inside a Jordan pair and its symmetric cone.

use crate::error::{ConeError, Result};
use jb_core::{AlgebraSpec, Element, JordanPairStructure, Side};
use nalgebra::{DMatrix, DVector};
use std::sync::Arc;

/// The Euclidean Jordan algebra A^(k) = Fix(x -> Q_e theta(x)) inside the
/// principal inner ideal of e = e_1 + .. + e_k, with its cone, determinant,
/// trace, and spectral calculus.
pub struct ConeContext {
    jp: Arc<JordanPairStructure>,
    k: usize,
    /// basis of A^(k), orthonormal for the K-inner product
    basis: Vec<DVector<f64>>,
    dim: usize,
    /// peirce multiplicity of A^(k) measured as dim A_{12}
    d_cone: f64,
    unit: Element,
    unit_bar: Element,
}

impl ConeContext {
    pub fn from_pair(jp: Arc<JordanPairStructure>, k: usize) -> Result<Self> {
        if k < 1 || k > jp.rank() {
            return Err(ConeError::Unsupported(format!(
                "cone rank {k} outside 1..={}",
                jp.rank()
            )));
        }
        let joint = jp.joint_peirce();
        let mut basis: Vec<DVector<f64>> = Vec::new();
        for i in 1..=k {
            for j in i..=k {
                for (idx, b) in joint.a_plus.iter() {
                    if *idx == (i, j) {
                        basis.extend(b.iter().cloned());
                    }
                }
            }
        }
        // orthonormalize w.r.t. the K-inner product
        let mut on: Vec<DVector<f64>> = Vec::new();
        for v in &basis {
            let mut w = v.clone();
            for _ in 0..2 {
                for b in &on {
                    let c = ip(&jp, b, &w);
                    w -= b * c;
                }
            }
            let nw = ip(&jp, &w, &w).sqrt();
            if nw > 1e-10 {
                on.push(w / nw);
            }
        }
        let dim = on.len();
        let expected = k + joint.dim_a((1, 2)) * k * (k - 1) / 2;
        if k >= 2 && dim != expected {
            return Err(ConeError::Unsupported(format!(
                "A^({k}) dimension {dim} != expected {expected}"
            )));
        }
        let d_cone = if k >= 2 { joint.dim_a((1, 2)) as f64 } else { 0.0 };
        let unit = jp.frame_sum(k);
        let unit_bar = jp.theta(&unit);
        Ok(ConeContext { jp, k, basis: on, dim, d_cone, unit, unit_bar })
    }

    /// Standalone rank-k cone of multiplicity d, realized through the pair
    /// whose Euclidean part has that Peirce multiplicity (d=1: symmetric
    /// matrices, d=2: complex Hermitian matrices).
    pub fn synthetic(k: usize, d: usize) -> Result<Self> {
        let spec = match (k, d) {
            (1, _) => AlgebraSpec::Sym { r: 1 },
            (_, 1) => AlgebraSpec::Sym { r: k },
            (_, 2) => AlgebraSpec::HermC { r: k },
            _ => {
                return Err(ConeError::Unsupported(format!(
                    "no synthetic cone for rank {k}, multiplicity {d}"
                )))
            }
        };
        let jp = Arc::new(JordanPairStructure::build(&spec).map_err(ConeError::Jp)?);
        Self::from_pair(jp, k)
    }

    pub fn pair(&self) -> &Arc<JordanPairStructure> {
        &self.jp
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// dim A^(k) / k, the n/r of the cone.
    pub fn dim_over_rank(&self) -> f64 {
        self.dim as f64 / self.k as f64
    }

    /// Peirce multiplicity of the Euclidean algebra.
    pub fn mult_d(&self) -> f64 {
        self.d_cone
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    /// Orthonormal basis vectors of A^(k) (K-inner product).
    pub fn basis_vectors(&self) -> impl Iterator<Item = &DVector<f64>> {
        self.basis.iter()
    }

    /// Jordan product x o y = (1/2){x, theta(e), y}.
    pub fn product(&self, x: &Element, y: &Element) -> Element {
        self.jp
            .triple(x, &self.unit_bar, y)
            .expect("cone elements live in V^+")
            .scale(0.5)
    }

    /// Trace form tr(x) = tau(x, theta(e)).
    pub fn trace(&self, x: &Element) -> f64 {
        self.jp.tau(x, &self.unit_bar)
    }

    /// Inner product (x|y) = tau(x, theta y) (agrees with tr(x o y)).
    pub fn inner(&self, x: &Element, y: &Element) -> f64 {
        self.jp.inner(x, y)
    }

    /// Membership of x in A^(k) itself (not the cone): projection residual.
    pub fn subalgebra_residual(&self, x: &Element) -> f64 {
        let mut rem = x.coords.clone();
        for b in &self.basis {
            let c = ip(&self.jp, b, &rem);
            rem -= b * c;
        }
        rem.norm()
    }

    /// Spectral decomposition x = sum lambda_i c_i with orthogonal idempotents;
    /// descending eigenvalues, multiplicities folded into the idempotents.
    pub fn spectral(&self, x: &Element) -> Result<Vec<(f64, Element)>> {
        let scale = x.norm().max(1e-300);
        // Krylov space of powers within A^(k), seeded by the unit
        let mut basis: Vec<Element> = Vec::new();
        let mut cur = self.unit.clone();
        loop {
            let mut w = cur.coords.clone();
            for _ in 0..2 {
                for b in &basis {
                    let c = ip(&self.jp, &b.coords, &w);
                    w -= &b.coords * c;
                }
            }
            let nw = ip(&self.jp, &w, &w).max(0.0).sqrt();
            if nw < 1e-11 * scale.max(1.0) || basis.len() > self.dim {
                break;
            }
            let bn = Element::plus(w / nw);
            cur = self.product(x, &bn);
            basis.push(bn);
        }
        let m = basis.len();
        // multiplication operator restricted to the power subalgebra
        let mut small = DMatrix::zeros(m, m);
        for (j, bj) in basis.iter().enumerate() {
            let xb = self.product(x, bj);
            for (i, bi) in basis.iter().enumerate() {
                small[(i, j)] = ip(&self.jp, &bi.coords, &xb.coords);
            }
        }
        let small = 0.5 * (&small + small.transpose());
        let eig = nalgebra::SymmetricEigen::new(small);
        let mut parts: Vec<(f64, Element)> = Vec::new();
        for i in 0..m {
            let mut v = DVector::zeros(self.jp.dim());
            for (j, bj) in basis.iter().enumerate() {
                v += &bj.coords * eig.eigenvectors[(j, i)];
            }
            // idempotent component: coefficient of the unit along this
            // eigenvector gives c_i = <v, e> v (v orthonormal)
            let ce = ip(&self.jp, &v, &self.unit.coords);
            let c_i = Element::plus(v * ce);
            if c_i.norm() < 1e-10 {
                continue;
            }
            parts.push((eig.eigenvalues[i], c_i));
        }
        parts.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        Ok(parts)
    }

    /// Spectral values with multiplicity, descending.
    pub fn spectral_values(&self, x: &Element) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        for (lam, c) in self.spectral(x)? {
            let mult = self.trace(&c).round() as usize;
            for _ in 0..mult.max(1) {
                out.push(lam);
            }
        }
        out.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(out)
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        if self.subalgebra_residual(x) > 1e-8 * (1.0 + x.norm()) {
            return Ok(false);
        }
        let vals = self.spectral_values(x)?;
        Ok(vals.len() == self.k && vals.iter().all(|&v| v > 0.0))
    }

    pub fn det(&self, x: &Element) -> Result<f64> {
        let mut det = 1.0;
        for (lam, c) in self.spectral(x)? {
            let mult = self.trace(&c).round() as i32;
            det *= lam.powi(mult.max(1));
        }
        Ok(det)
    }

    /// Jordan algebra inverse within A^(k) (an element of V^+).
    pub fn inverse(&self, x: &Element) -> Result<Element> {
        let parts = self.spectral(x)?;
        let scale = parts.iter().map(|(l, _)| l.abs()).fold(0.0f64, f64::max);
        let mut inv = Element::zero(self.jp.dim(), Side::Plus);
        for (lam, c) in &parts {
            if lam.abs() < 1e-12 * scale.max(1.0) {
                return Err(ConeError::NotInvertibleInCone(*lam));
            }
            inv = inv.add(&c.scale(1.0 / lam));
        }
        Ok(inv)
    }

    /// b_w = sum w_i e_i on the canonical frame prefix.
    pub fn point_from_radial(&self, w: &[f64]) -> Element {
        assert!(w.len() == self.k);
        self.jp.b_t(w)
    }
}

fn ip(jp: &JordanPairStructure, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    jp.inner(&Element::plus(a.clone()), &Element::plus(b.clone()))
}
