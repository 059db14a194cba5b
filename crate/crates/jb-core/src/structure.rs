//! Construction of concrete simple real Jordan pairs and the algebraic
//! operations on them.
//!
//! The family supplies closed-form products; everything quantitative (trace
//! form, genus, multiplicities, frames, Peirce dimensions) is computed here
//! and cross-checked, never copied from a table.

use crate::config::JpConfig;
use crate::element::{Element, Side};
use crate::error::{JpError, Result};
use crate::family::{AlgebraSpec, Family};
use crate::idem::{self, Frame, Idempotent};
use crate::linalg;
use crate::peirce::{JointPeirce, PeirceDecomposition};
use nalgebra::{DMatrix, DVector};

/// Structure constants measured from the refined joint Peirce decomposition.
#[derive(Debug, Clone, Copy)]
pub struct StructureConstants {
    pub rank: usize,
    pub p: f64,
    pub d_plus: f64,
    pub d_minus: f64,
    pub d: f64,
    pub e: f64,
    pub b: f64,
}

impl StructureConstants {
    /// Genus of the rank-k sub-pair V_2(e_1+..+e_k); its "b" vanishes.
    pub fn p_sub2(&self, k: usize) -> f64 {
        (self.e + 1.0) + (k.saturating_sub(1) as f64) * self.d
    }

    /// Genus of the complementary sub-pair V_0(e_1+..+e_k).
    pub fn p_sub0(&self, k: usize) -> f64 {
        (self.e + 1.0) + ((self.rank - k).saturating_sub(1) as f64) * self.d + self.b / 2.0
    }
}

pub(crate) struct Kernel {
    pub family: Box<dyn Family>,
    pub n: usize,
    pub theta_p: DMatrix<f64>,
    pub theta_m: DMatrix<f64>,
    /// Unnormalized trace form: tau0(x,y) = Tr_{V+} D_{x,y} = x^T M y.
    pub m_raw: DMatrix<f64>,
    /// Unnormalized K-inner products on V^+ and V^- coordinates.
    pub s_raw_p: DMatrix<f64>,
    pub s_raw_m: DMatrix<f64>,
    pub config: JpConfig,
}

impl Kernel {
    pub fn theta_el(&self, x: &Element) -> Element {
        let m = match x.side {
            Side::Plus => &self.theta_p,
            Side::Minus => &self.theta_m,
        };
        Element::new(m * &x.coords, x.side.flip())
    }

    pub fn triple_el(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        if x.side != z.side {
            return Err(JpError::ParityMismatch { expected: x.side, got: z.side });
        }
        if y.side != x.side.flip() {
            return Err(JpError::ParityMismatch { expected: x.side.flip(), got: y.side });
        }
        Ok(Element::new(
            self.family.triple(x.side, &x.coords, &y.coords, &z.coords),
            x.side,
        ))
    }

    pub fn quad_el(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(self.triple_el(x, y, x)?.scale(0.5))
    }

    /// Matrix of D_{x,y} acting on V^{x.side}.
    pub fn d_matrix(&self, x: &Element, y: &Element) -> DMatrix<f64> {
        debug_assert_eq!(y.side, x.side.flip());
        let side = x.side;
        linalg::matrix_of(self.n, |z| self.family.triple(side, &x.coords, &y.coords, z))
    }

    /// Matrix of Q_x: V^{-side} -> V^{side}.
    pub fn q_matrix(&self, x: &Element) -> DMatrix<f64> {
        let side = x.side;
        linalg::matrix_of(self.n, |y| {
            0.5 * self.family.triple(side, &x.coords, y, &x.coords)
        })
    }

    /// Bergman operator B_{x,y} = id - D_{x,y} + Q_x Q_y on V^{x.side}.
    pub fn bergman_matrix(&self, x: &Element, y: &Element) -> DMatrix<f64> {
        let id = DMatrix::identity(self.n, self.n);
        id - self.d_matrix(x, y) + self.q_matrix(x) * self.q_matrix(y)
    }

    fn s_raw(&self, side: Side) -> &DMatrix<f64> {
        match side {
            Side::Plus => &self.s_raw_p,
            Side::Minus => &self.s_raw_m,
        }
    }

    /// Triple-product "singular value" decomposition x = sum_i t_i u_i with
    /// t_i > 0 descending and (u_i, theta u_i) pairwise orthogonal idempotents.
    pub fn support_decomposition(&self, x: &Element) -> Result<Vec<(f64, Element)>> {
        let scale = x.norm();
        if scale < 1e-300 {
            return Ok(Vec::new());
        }
        let s = self.s_raw(x.side);
        let sv = |u: &DVector<f64>, v: &DVector<f64>| (u.transpose() * s * v)[(0, 0)];
        // Krylov space of M = Q_x o theta, orthonormal w.r.t. the raw K-inner
        // product; x = sum t_i u_i makes M diagonal with eigenvalues t_i^2.
        let apply_m = |v: &Element| -> Element {
            let tv = self.theta_el(v);
            self.quad_el(x, &tv).expect("parity is consistent by construction")
        };
        let mut basis: Vec<DVector<f64>> = Vec::new();
        let mut w = x.coords.clone() / scale;
        loop {
            // Gram-Schmidt against current basis (twice, for stability)
            for _ in 0..2 {
                for b in &basis {
                    let c = sv(b, &w);
                    w -= b * c;
                }
            }
            let nw = sv(&w, &w).max(0.0).sqrt();
            if nw < 1e-10 {
                break;
            }
            w /= nw;
            basis.push(w.clone());
            if basis.len() > self.n {
                break;
            }
            w = apply_m(&Element::new(w.clone(), x.side)).coords;
        }
        let k = basis.len();
        let mut small = DMatrix::zeros(k, k);
        for (j, bj) in basis.iter().enumerate() {
            let mb = apply_m(&Element::new(bj.clone(), x.side)).coords;
            for (i, bi) in basis.iter().enumerate() {
                small[(i, j)] = sv(bi, &mb);
            }
        }
        let asym = (&small - small.transpose()).norm() / (1.0 + small.norm());
        if asym > 1e-6 {
            return Err(JpError::Invalid(format!(
                "support operator not self-adjoint (asymmetry {asym:.2e})"
            )));
        }
        let small = 0.5 * (&small + small.transpose());
        let eig = nalgebra::SymmetricEigen::new(small);
        let mut parts: Vec<(f64, Element)> = Vec::new();
        for i in 0..k {
            let mu = eig.eigenvalues[i];
            let v: DVector<f64> = {
                let mut acc = DVector::zeros(self.n);
                for (j, bj) in basis.iter().enumerate() {
                    acc += bj * eig.eigenvectors[(j, i)];
                }
                acc
            };
            let c = sv(&v, &x.coords); // coefficient of x along v (s-orthonormal)
            if mu <= 1e-14 * eig.eigenvalues.amax().max(1.0) || c.abs() < 1e-12 * scale {
                continue;
            }
            if mu < 0.0 {
                return Err(JpError::Invalid(format!(
                    "negative squared spectral value {mu:.2e} in support decomposition"
                )));
            }
            let t = mu.sqrt();
            let u = Element::new(v * (c / t), x.side);
            // tripotent residual check
            let tu = self.theta_el(&u);
            let res = self.quad_el(&u, &tu)?.sub(&u).norm();
            if res > self.config.idem_tol * (1.0 + u.norm()) {
                return Err(JpError::Invalid(format!(
                    "support component is not tripotent (residual {res:.2e})"
                )));
            }
            parts.push((t, u));
        }
        parts.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        Ok(parts)
    }
}

/// A concrete simple real Jordan pair with derived structure data.
pub struct JordanPairStructure {
    pub(crate) kernel: Kernel,
    spec: AlgebraSpec,
    constants: StructureConstants,
    /// Normalized trace form: tau(x,y) = x^T G y, tau(e_1, theta e_1) = 1.
    gram: DMatrix<f64>,
    gram_inv: DMatrix<f64>,
    frame: Frame,
    joint: JointPeirce,
}

impl JordanPairStructure {
    pub fn build(spec: &AlgebraSpec) -> Result<Self> {
        Self::build_with_config(spec, JpConfig::default())
    }

    pub fn build_with_config(spec: &AlgebraSpec, config: JpConfig) -> Result<Self> {
        let family = spec.to_family();
        let n = family.dim();
        if n > config.max_dim {
            return Err(JpError::DimensionOverflow { dim: n, max: config.max_dim });
        }
        let theta_p = linalg::matrix_of(n, |x| family.theta(Side::Plus, x));
        let theta_m = linalg::matrix_of(n, |x| family.theta(Side::Minus, x));
        // theta^2 = id
        if (&theta_m * &theta_p - DMatrix::identity(n, n)).norm() > 1e-10 {
            return Err(JpError::Invalid("involution does not square to identity".into()));
        }
        // unnormalized trace form tau0(x,y) = Tr_{V+} D_{x,y}
        let mut m_raw = DMatrix::zeros(n, n);
        let mut ea = DVector::zeros(n);
        let mut eb = DVector::zeros(n);
        let mut eg = DVector::zeros(n);
        for a in 0..n {
            ea[a] = 1.0;
            for b in 0..n {
                eb[b] = 1.0;
                let mut tr = 0.0;
                for g in 0..n {
                    eg[g] = 1.0;
                    tr += family.triple(Side::Plus, &ea, &eb, &eg)[g];
                    eg[g] = 0.0;
                }
                m_raw[(a, b)] = tr;
                eb[b] = 0.0;
            }
            ea[a] = 0.0;
        }
        let s_raw_p = {
            let s = &m_raw * &theta_p;
            0.5 * (&s + s.transpose())
        };
        let s_raw_m = {
            let s = theta_m.transpose() * &m_raw;
            0.5 * (&s + s.transpose())
        };
        if s_raw_p.clone().cholesky().is_none() {
            return Err(JpError::Invalid(
                "K-inner product tau(x, theta x) is not positive definite".into(),
            ));
        }
        let kernel = Kernel { family, n, theta_p, theta_m, m_raw, s_raw_p, s_raw_m, config };

        // canonical frame from the family seed element
        let seed = Element::plus(kernel.family.frame_seed());
        let parts = kernel.support_decomposition(&seed)?;
        if parts.is_empty() {
            return Err(JpError::Invalid("frame seed decomposed to nothing".into()));
        }
        let tripotents: Vec<Element> = parts.iter().map(|(_, u)| u.clone()).collect();
        let duals: Vec<Element> = tripotents.iter().map(|u| kernel.theta_el(u)).collect();

        // normalization: tau(e_1, theta e_1) = 1 fixes 2p
        let two_p_raw =
            (tripotents[0].coords.transpose() * &kernel.m_raw * &duals[0].coords)[(0, 0)];
        if two_p_raw <= 0.0 {
            return Err(JpError::Invalid("trace form not positive on the frame".into()));
        }
        // all frame members must be primitive: tau0(e_i, theta e_i) = 2p each
        for (i, (e, eb)) in tripotents.iter().zip(duals.iter()).enumerate() {
            let v = (e.coords.transpose() * &kernel.m_raw * &eb.coords)[(0, 0)];
            if (v / two_p_raw - 1.0).abs() > 1e-8 {
                return Err(JpError::Invalid(format!(
                    "frame member {i} is not primitive (tau ratio {})",
                    v / two_p_raw
                )));
            }
        }
        let gram = &kernel.m_raw / two_p_raw;
        let gram_inv = gram.clone().try_inverse().ok_or_else(|| {
            JpError::Invalid("trace form is degenerate".into())
        })?;
        let p_tau = two_p_raw / 2.0;
        let frame = Frame { tripotents, duals };

        let joint = JointPeirce::compute(&kernel, &frame)?;
        let constants = joint.measure_constants(p_tau)?;

        Ok(JordanPairStructure {
            kernel,
            spec: spec.clone(),
            constants,
            gram,
            gram_inv,
            frame,
            joint,
        })
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn spec_string(&self) -> String {
        self.spec.spec_string()
    }

    pub fn dim(&self) -> usize {
        self.kernel.n
    }

    pub fn rank(&self) -> usize {
        self.constants.rank
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn config(&self) -> &JpConfig {
        &self.kernel.config
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn joint_peirce(&self) -> &JointPeirce {
        &self.joint
    }

    /// Shorthand for the product of the leading k frame members.
    pub fn frame_sum(&self, k: usize) -> Element {
        let mut acc = Element::zero(self.kernel.n, Side::Plus);
        for e in self.frame.tripotents.iter().take(k) {
            acc = acc.add(e);
        }
        acc
    }

    // ---- bilinear structure ----

    /// Trace form tau(x, y), x in V^+, y in V^-.
    pub fn tau(&self, x: &Element, y: &Element) -> f64 {
        debug_assert_eq!(x.side, Side::Plus);
        debug_assert_eq!(y.side, Side::Minus);
        (x.coords.transpose() * &self.gram * &y.coords)[(0, 0)]
    }

    /// tau for either order: pairs a plus and a minus element.
    pub fn pairing(&self, a: &Element, b: &Element) -> f64 {
        match (a.side, b.side) {
            (Side::Plus, Side::Minus) => self.tau(a, b),
            (Side::Minus, Side::Plus) => self.tau(b, a),
            _ => panic!("pairing requires opposite sides"),
        }
    }

    /// K-inner product (x|y) = tau(x, theta y) for same-side elements.
    pub fn inner(&self, x: &Element, y: &Element) -> f64 {
        debug_assert_eq!(x.side, y.side);
        let ty = self.theta(y);
        self.pairing(x, &ty)
    }

    pub fn theta(&self, x: &Element) -> Element {
        self.kernel.theta_el(x)
    }

    /// Dual basis of V^- relative to the standard basis of V^+ under tau.
    pub fn dual_basis(&self) -> Vec<Element> {
        (0..self.kernel.n)
            .map(|a| Element::minus(DVector::from_column_slice(self.gram_inv.column(a).as_slice())))
            .collect()
    }

    /// Gram matrix of tau in standard coordinates.
    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    /// Inverse of the tau Gram matrix.
    pub fn gram_inv(&self) -> &DMatrix<f64> {
        &self.gram_inv
    }

    // ---- products and operators ----

    pub fn triple(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        self.kernel.triple_el(x, y, z)
    }

    /// Q_x y = (1/2){x,y,x}.
    pub fn quad(&self, x: &Element, y: &Element) -> Result<Element> {
        self.kernel.quad_el(x, y)
    }

    pub fn d_matrix(&self, x: &Element, y: &Element) -> DMatrix<f64> {
        self.kernel.d_matrix(x, y)
    }

    pub fn q_matrix(&self, x: &Element) -> DMatrix<f64> {
        self.kernel.q_matrix(x)
    }

    pub fn bergman_matrix(&self, x: &Element, y: &Element) -> DMatrix<f64> {
        self.kernel.bergman_matrix(x, y)
    }

    pub fn det_bergman(&self, x: &Element, y: &Element) -> f64 {
        self.kernel.bergman_matrix(x, y).determinant()
    }

    /// Closed-form pair determinant provided by the family (test oracle).
    pub fn pair_norm_oracle(&self, x: &Element, y: &Element) -> f64 {
        self.kernel.family.pair_norm(&x.coords, &y.coords)
    }

    /// Pair determinant Delta(x,y), the sign-resolved 2p-th root of
    /// Det B_{x,y}, continued along s -> (sx, sy) from Delta(0,0) = 1.
    pub fn pair_det(&self, x: &Element, y: &Element) -> Result<f64> {
        let two_p = (2.0 * self.constants.p).round() as i64;
        debug_assert!((2.0 * self.constants.p - two_p as f64).abs() < 1e-9);
        let steps = self.kernel.config.det_steps;
        let q_at = |s: f64| {
            let xs = x.scale(s);
            let ys = y.scale(s);
            self.det_bergman(&xs, &ys)
        };
        if two_p % 2 == 1 {
            // odd root is globally defined; no branch tracking needed
            let q = q_at(1.0);
            return Ok(q.signum() * q.abs().powf(1.0 / two_p as f64));
        }
        let root = |q: f64| q.abs().powf(1.0 / two_p as f64);
        let mut vals: Vec<f64> = vec![1.0]; // Delta(0) = 1
        let mut sign = 1.0f64;
        for j in 1..=steps {
            let s = j as f64 / steps as f64;
            let q = q_at(s);
            let mag = root(q);
            // predict Delta(s) from the last values to carry the branch
            let pred = match vals.len() {
                1 => vals[0],
                2 => 2.0 * vals[1] - vals[0],
                l => 3.0 * vals[l - 1] - 3.0 * vals[l - 2] + vals[l - 3],
            };
            let step_scale = if vals.len() >= 2 {
                (vals[vals.len() - 1] - vals[vals.len() - 2]).abs().max(1e-14)
            } else {
                1e-14
            };
            let chosen = if pred.abs() > 3.0 * step_scale {
                mag * pred.signum()
            } else if mag < 10.0 * step_scale {
                // genuinely near zero and flat: cannot distinguish touch from crossing
                return Err(JpError::BranchAmbiguity { s });
            } else {
                mag * sign
            };
            sign = chosen.signum();
            vals.push(chosen);
        }
        Ok(vals[steps])
    }

    /// Quasi-inverse x^y = B_{x,y}^{-1}(x - Q_x y).
    pub fn quasi_inverse(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(self.bergman_decompose(x, y)?.x_qy)
    }

    pub fn bergman_decompose(&self, x: &Element, y: &Element) -> Result<BergmanDecomposition> {
        debug_assert_eq!(x.side, y.side.flip());
        let b_xy = self.kernel.bergman_matrix(x, y);
        let b_yx = self.kernel.bergman_matrix(y, x);
        let svd = b_xy.clone().svd(false, false);
        let smin = svd.singular_values.min();
        let smax = svd.singular_values.max();
        if smin <= 0.0 || smax / smin > self.kernel.config.bergman_cond_cap {
            return Err(JpError::SingularBergman {
                det: b_xy.determinant(),
                cap: self.kernel.config.bergman_cond_cap,
            });
        }
        let b_xy_lu = b_xy.clone().lu();
        let b_yx_lu = b_yx.clone().lu();
        let qx_y = self.quad(x, y)?;
        let qy_x = self.quad(y, x)?;
        let x_qy = Element::new(
            b_xy_lu.solve(&(&x.coords - &qx_y.coords)).ok_or(JpError::NotInvertible)?,
            x.side,
        );
        let y_qx = Element::new(
            b_yx_lu.solve(&(&y.coords - &qy_x.coords)).ok_or(JpError::NotInvertible)?,
            y.side,
        );
        let b_yx_inv = b_yx.clone().try_inverse().ok_or(JpError::NotInvertible)?;
        Ok(BergmanDecomposition { x_qy, y_qx, b_xy, b_yx_inv })
    }

    // ---- idempotents, frames, rank ----

    pub fn support_decomposition(&self, x: &Element) -> Result<Vec<(f64, Element)>> {
        self.kernel.support_decomposition(x)
    }

    /// Complete an element to an idempotent via its support decomposition.
    pub fn complete_idempotent(&self, e: &Element) -> Result<Idempotent> {
        idem::complete_idempotent(self, e)
    }

    /// Jordan rank via the dimension of the principal inner ideal [x] = Q_x V^-.
    pub fn rank_of(&self, x: &Element) -> Result<usize> {
        idem::rank_of(self, x)
    }

    /// Canonical frame (already computed at build time).
    pub fn make_frame(&self) -> &Frame {
        &self.frame
    }

    /// Peirce decomposition for an idempotent; the canonical frame also has
    /// cached joint data via [`Self::joint_peirce`].
    pub fn peirce(&self, idem: &Idempotent) -> Result<PeirceDecomposition> {
        PeirceDecomposition::compute(self, idem)
    }

    /// Rank-k spectral point b_t = sum t_i e_i on the canonical frame.
    pub fn b_t(&self, t: &[f64]) -> Element {
        let mut acc = Element::zero(self.kernel.n, Side::Plus);
        for (ti, e) in t.iter().zip(self.frame.tripotents.iter()) {
            acc = acc.add(&e.scale(*ti));
        }
        acc
    }

    /// Spectral values of y with multiplicity, descending (the polar radius).
    pub fn spectral_values(&self, y: &Element) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        for (t, u) in self.support_decomposition(y)? {
            let ub = self.theta(&u);
            let m = self.tau(&u, &ub).round() as usize;
            for _ in 0..m.max(1) {
                out.push(t);
            }
        }
        Ok(out)
    }
}

/// Output of the Bergman decomposition: quasi-inverses plus the two
/// operator factors.
pub struct BergmanDecomposition {
    /// x^y
    pub x_qy: Element,
    /// y^x
    pub y_qx: Element,
    pub b_xy: DMatrix<f64>,
    pub b_yx_inv: DMatrix<f64>,
}
