//! Peirce decompositions: single-idempotent, joint (frame), and refined.

use crate::element::{Element, Side};
use crate::error::{JpError, Result};
use crate::idem::{Frame, Idempotent};
use crate::structure::{JordanPairStructure, Kernel, StructureConstants};
use nalgebra::{DMatrix, DVector};

/// Eigenspace projectors of D_{e,e'} for eigenvalues 2, 1, 0 on both sides.
pub struct PeirceDecomposition {
    pub idem: Idempotent,
    /// P2, P1, P0 on V^+ coordinates.
    pub proj_plus: [DMatrix<f64>; 3],
    /// P2, P1, P0 on V^- coordinates (eigenspaces of D_{e',e}).
    pub proj_minus: [DMatrix<f64>; 3],
    pub dims: [usize; 3],
}

impl PeirceDecomposition {
    pub(crate) fn compute(jp: &JordanPairStructure, idem: &Idempotent) -> Result<Self> {
        crate::idem::validate_idempotent(jp, idem)?;
        let d_p = jp.d_matrix(&idem.e, &idem.e_prime);
        let d_m = jp.d_matrix(&idem.e_prime, &idem.e);
        let proj_plus = spectral_projectors(&d_p, jp.config().cluster_tol)?;
        let proj_minus = spectral_projectors(&d_m, jp.config().cluster_tol)?;
        let dims = [
            proj_plus[0].trace().round() as usize,
            proj_plus[1].trace().round() as usize,
            proj_plus[2].trace().round() as usize,
        ];
        Ok(PeirceDecomposition { idem: idem.clone(), proj_plus, proj_minus, dims })
    }

    /// Project onto the eigenvalue-c space (c in {0,1,2}) on the element's side.
    pub fn project(&self, c: usize, x: &Element) -> Element {
        let p = match x.side {
            Side::Plus => &self.proj_plus[2 - c],
            Side::Minus => &self.proj_minus[2 - c],
        };
        Element::new(p * &x.coords, x.side)
    }

    pub fn dim(&self, c: usize) -> usize {
        self.dims[2 - c]
    }
}

/// Spectral projectors for an operator with spectrum {0,1,2}, via Lagrange
/// polynomials (exact when the spectrum is clean). Returned as [P2, P1, P0].
fn spectral_projectors(d: &DMatrix<f64>, tol: f64) -> Result<[DMatrix<f64>; 3]> {
    let n = d.nrows();
    let id = DMatrix::identity(n, n);
    let p2 = (d * (d - &id)) * 0.5;
    let p1 = d * (&id * 2.0 - d);
    let p0 = ((d - &id) * (d - &id * 2.0)) * 0.5;
    // spectrum check: the Lagrange projectors must be idempotent and resolve id
    let sum_res = (&p2 + &p1 + &p0 - &id).norm();
    let idem_res = (&p2 * &p2 - &p2).norm() + (&p1 * &p1 - &p1).norm() + (&p0 * &p0 - &p0).norm();
    let scale = 1.0 + d.norm();
    if sum_res / scale > tol * 100.0 || idem_res / scale > tol * 100.0 {
        // locate an offending eigenvalue for the error report
        let offender = d
            .complex_eigenvalues()
            .iter()
            .map(|z| z.re)
            .find(|v| [0.0, 1.0, 2.0].iter().all(|c| (v - c).abs() > tol * 100.0))
            .unwrap_or(f64::NAN);
        return Err(JpError::SpectrumClustering { value: offender, tol });
    }
    Ok([p2, p1, p0])
}

/// Key for a joint Peirce space: (i, j) with 1 <= i <= j <= r, or (0, i) for
/// the non-unital tails V_{0i}.
pub type PeirceIndex = (usize, usize);

/// Joint and refined Peirce data for a frame of tripotents.
pub struct JointPeirce {
    pub r: usize,
    /// Orthonormal (standard dot) bases of V_{ij}^+.
    pub v_plus: Vec<(PeirceIndex, Vec<DVector<f64>>)>,
    pub v_minus: Vec<(PeirceIndex, Vec<DVector<f64>>)>,
    /// Refined splits on V_{ij}^+ for 1 <= i <= j: +1 eigenspace (A) and -1 (B)
    /// of x -> Q_e theta(x), e the full frame sum.
    pub a_plus: Vec<(PeirceIndex, Vec<DVector<f64>>)>,
    pub b_plus: Vec<(PeirceIndex, Vec<DVector<f64>>)>,
}

impl JointPeirce {
    pub(crate) fn compute(kernel: &Kernel, frame: &Frame) -> Result<Self> {
        let r = frame.len();
        let n = kernel.n;
        let tol = kernel.config.cluster_tol;
        // individual projector triples for each frame member, both sides
        let mut trip_p = Vec::with_capacity(r);
        let mut trip_m = Vec::with_capacity(r);
        for i in 0..r {
            let dp = kernel.d_matrix(&frame.tripotents[i], &frame.duals[i]);
            let dm = kernel.d_matrix(&frame.duals[i], &frame.tripotents[i]);
            trip_p.push(spectral_projectors(&dp, tol)?);
            trip_m.push(spectral_projectors(&dm, tol)?);
        }
        let pick = |trips: &Vec<[DMatrix<f64>; 3]>, i: usize, c: usize| -> DMatrix<f64> {
            trips[i][2 - c].clone()
        };
        let joint_basis = |trips: &Vec<[DMatrix<f64>; 3]>, idx: PeirceIndex| -> Vec<DVector<f64>> {
            let (i, j) = idx;
            let mut p = DMatrix::identity(n, n);
            if i == 0 {
                // V_{0j}: eigenvalue 1 for e_j, 0 for the rest
                for k in 0..r {
                    let c = if k + 1 == j { 1 } else { 0 };
                    p = p * pick(trips, k, c);
                }
            } else if i == j {
                p = pick(trips, i - 1, 2);
            } else {
                p = pick(trips, i - 1, 1) * pick(trips, j - 1, 1);
            }
            crate::linalg::column_space(&p, 1e-7)
        };
        let mut v_plus = Vec::new();
        let mut v_minus = Vec::new();
        for i in 1..=r {
            for j in i..=r {
                v_plus.push(((i, j), joint_basis(&trip_p, (i, j))));
                v_minus.push(((i, j), joint_basis(&trip_m, (i, j))));
            }
        }
        for j in 1..=r {
            v_plus.push(((0, j), joint_basis(&trip_p, (0, j))));
            v_minus.push(((0, j), joint_basis(&trip_m, (0, j))));
        }
        // V_00 must vanish for a full frame of a simple pair
        {
            let mut p = DMatrix::identity(n, n);
            for k in 0..r {
                p = p * pick(&trip_p, k, 0);
            }
            let dim00 = crate::linalg::column_space(&p, 1e-7).len();
            if dim00 != 0 {
                return Err(JpError::Invalid(format!(
                    "joint Peirce space V_00 has dimension {dim00}, frame is not maximal"
                )));
            }
        }
        // refined split by the involution x -> Q_e theta(x)
        let e_full = {
            let mut acc = Element::zero(n, Side::Plus);
            for e in &frame.tripotents {
                acc = acc.add(e);
            }
            acc
        };
        let q_e = kernel.q_matrix(&e_full);
        let invol = &q_e * &kernel.theta_p;
        let mut a_plus = Vec::new();
        let mut b_plus = Vec::new();
        for (idx, basis) in &v_plus {
            if idx.0 == 0 {
                continue;
            }
            let (mut asp, mut bsp) = (Vec::new(), Vec::new());
            if !basis.is_empty() {
                let k = basis.len();
                // matrix of the involution restricted to span(basis)
                let mut small = DMatrix::zeros(k, k);
                for (cj, bj) in basis.iter().enumerate() {
                    let ib = &invol * bj;
                    for (ci, bi) in basis.iter().enumerate() {
                        small[(ci, cj)] = bi.dot(&ib);
                    }
                }
                let small = 0.5 * (&small + small.transpose());
                let eig = nalgebra::SymmetricEigen::new(small);
                for c in 0..k {
                    let lam = eig.eigenvalues[c];
                    if (lam.abs() - 1.0).abs() > 1e-6 {
                        return Err(JpError::Invalid(format!(
                            "refined involution eigenvalue {lam} not in {{-1, +1}}"
                        )));
                    }
                    let mut v = DVector::zeros(n);
                    for (cj, bj) in basis.iter().enumerate() {
                        v += bj * eig.eigenvectors[(cj, c)];
                    }
                    if lam > 0.0 {
                        asp.push(v);
                    } else {
                        bsp.push(v);
                    }
                }
            }
            a_plus.push((*idx, asp));
            b_plus.push((*idx, bsp));
        }
        Ok(JointPeirce { r, v_plus, v_minus, a_plus, b_plus })
    }

    pub fn dim_v(&self, idx: PeirceIndex) -> usize {
        self.v_plus
            .iter()
            .find(|(i, _)| *i == idx)
            .map(|(_, b)| b.len())
            .unwrap_or(0)
    }

    pub fn basis_v(&self, idx: PeirceIndex, side: Side) -> &[DVector<f64>] {
        let list = match side {
            Side::Plus => &self.v_plus,
            Side::Minus => &self.v_minus,
        };
        list.iter()
            .find(|(i, _)| *i == idx)
            .map(|(_, b)| b.as_slice())
            .unwrap_or(&[])
    }

    pub fn dim_a(&self, idx: PeirceIndex) -> usize {
        self.a_plus.iter().find(|(i, _)| *i == idx).map(|(_, b)| b.len()).unwrap_or(0)
    }

    pub fn dim_b(&self, idx: PeirceIndex) -> usize {
        self.b_plus.iter().find(|(i, _)| *i == idx).map(|(_, b)| b.len()).unwrap_or(0)
    }

    /// Measure structure constants from refined dimensions and validate
    /// internal consistency, including the trace-form genus cross-check.
    pub(crate) fn measure_constants(&self, p_tau: f64) -> Result<StructureConstants> {
        let r = self.r;
        // dim A_ii = 1 (the line R e_i), B_ii = e
        let mut e_const: Option<usize> = None;
        for i in 1..=r {
            if self.dim_a((i, i)) != 1 {
                return Err(JpError::Invalid(format!(
                    "dim A_{{{i}{i}}} = {} (expected 1)",
                    self.dim_a((i, i))
                )));
            }
            let bi = self.dim_b((i, i));
            match e_const {
                None => e_const = Some(bi),
                Some(v) if v != bi => {
                    return Err(JpError::Invalid("inconsistent e across diagonal".into()))
                }
                _ => {}
            }
        }
        let e_const = e_const.unwrap_or(0) as f64;
        let mut d_plus: Option<usize> = None;
        let mut d_minus: Option<usize> = None;
        for i in 1..=r {
            for j in (i + 1)..=r {
                let a = self.dim_a((i, j));
                let b = self.dim_b((i, j));
                match d_plus {
                    None => d_plus = Some(a),
                    Some(v) if v != a => {
                        return Err(JpError::Invalid("inconsistent d+ across pairs".into()))
                    }
                    _ => {}
                }
                match d_minus {
                    None => d_minus = Some(b),
                    Some(v) if v != b => {
                        return Err(JpError::Invalid("inconsistent d- across pairs".into()))
                    }
                    _ => {}
                }
            }
        }
        let d_plus = d_plus.unwrap_or(0) as f64;
        let d_minus = d_minus.unwrap_or(0) as f64;
        let d = 0.5 * (d_plus + d_minus);
        let mut b_const: Option<usize> = None;
        for j in 1..=r {
            let bj = self.dim_v((0, j));
            match b_const {
                None => b_const = Some(bj),
                Some(v) if v != bj => {
                    return Err(JpError::Invalid("inconsistent b across tails".into()))
                }
                _ => {}
            }
        }
        let b_const = b_const.unwrap_or(0) as f64;
        let p_peirce = (e_const + 1.0) + (r as f64 - 1.0) * d + b_const / 2.0;
        if (p_peirce - p_tau).abs() > 1e-6 * (1.0 + p_tau.abs()) {
            return Err(JpError::Invalid(format!(
                "genus cross-check failed: Peirce dims give p = {p_peirce}, trace form gives p = {p_tau}"
            )));
        }
        Ok(StructureConstants {
            rank: r,
            p: p_peirce,
            d_plus,
            d_minus,
            d,
            e: e_const,
            b: b_const,
        })
    }
}
