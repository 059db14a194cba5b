//! Existence classification of L-equivariant measures on the orbits, with a
//! numerical trace certificate cross-checking the case table.

use crate::{MeasureCase, MeasureVerdict, OrbitError, Result};
use jb_core::{AlgebraSpec, Element, JordanPairStructure};
use nalgebra::{DMatrix, DVector};

/// Case table: (1) k=0 always, (2) 1<=k<=r-1 exactly outside the rectangular
/// p != q family with character exponent kd, (3) open orbit of a unital pair
/// for any exponent, (4) open orbit of a non-unital pair with exponent p.
///
/// For interior k the verdict additionally computes the trace certificate:
/// Tr_{V^+}(T) over stabilizer directions T vanishing on V_2 + V_0 and
/// preserving V_1; a mismatch with the table is a hard error.
pub fn measure_existence(jp: &JordanPairStructure, k: usize) -> Result<MeasureVerdict> {
    let c = *jp.constants();
    let r = c.rank;
    let is_rect_uneven = matches!(jp.spec(), AlgebraSpec::Rect { p, q } if p != q);
    let unital = c.b == 0.0;
    if k == 0 {
        return Ok(MeasureVerdict {
            exists: true,
            lambda_char: 0.0,
            case: MeasureCase::ZeroOrbit,
            certificate_residual: None,
            certificate_dim: None,
        });
    }
    if k == r {
        return Ok(if unital {
            MeasureVerdict {
                exists: true,
                lambda_char: (k as f64) * c.d,
                case: MeasureCase::OpenUnital,
                certificate_residual: None,
                certificate_dim: None,
            }
        } else {
            MeasureVerdict {
                exists: true,
                lambda_char: c.p,
                case: MeasureCase::OpenNonUnital,
                certificate_residual: None,
                certificate_dim: None,
            }
        });
    }
    // interior case: table verdict and numerical certificate
    let table_exists = !is_rect_uneven;
    let (residual, dim) = trace_certificate(jp, k)?;
    let cert_exists = residual < 1e-8;
    if cert_exists != table_exists {
        return Err(OrbitError::CertificateMismatch {
            k,
            table: table_exists,
            certificate: cert_exists,
        });
    }
    Ok(MeasureVerdict {
        exists: table_exists,
        lambda_char: (k as f64) * c.d,
        case: if table_exists { MeasureCase::Interior } else { MeasureCase::RectException },
        certificate_residual: Some(residual),
        certificate_dim: Some(dim),
    })
}

/// Max normalized |Tr_{V^+}(T)| over an orthonormal basis of the stabilizer
/// directions {T in l : T|_{V_2 + V_0} = 0, T V_1 <= V_1}, plus the
/// dimension of that space.
fn trace_certificate(jp: &JordanPairStructure, k: usize) -> Result<(f64, usize)> {
    let n = jp.dim();
    let idem = jp.complete_idempotent(&jp.frame_sum(k))?;
    let pd = jp.peirce(&idem)?;
    // span of the Levi algebra acting on V^+: all D_{c_a, chat_b}
    let duals = jp.dual_basis();
    let mut gens: Vec<DMatrix<f64>> = Vec::with_capacity(n * n);
    for a in 0..n {
        let mut ca = DVector::zeros(n);
        ca[a] = 1.0;
        let ea = Element::plus(ca);
        for dual in &duals {
            gens.push(jp.d_matrix(&ea, dual));
        }
    }
    // orthonormal basis of the span (vectorized)
    let mat = DMatrix::from_fn(n * n, gens.len(), |i, j| gens[j][(i / n, i % n)]);
    let lie_basis = jb_core::linalg::column_space(&mat, 1e-9);
    let dim_l = lie_basis.len();
    // constraints: T annihilates V_2 and V_0, and maps V_1 into V_1
    let basis20: Vec<DVector<f64>> = {
        let mut b = jb_core::linalg::column_space(&pd.proj_plus[0], 1e-7);
        b.extend(jb_core::linalg::column_space(&pd.proj_plus[2], 1e-7));
        b
    };
    let basis1 = jb_core::linalg::column_space(&pd.proj_plus[1], 1e-7);
    let p20 = &pd.proj_plus[0] + &pd.proj_plus[2];
    let n_rows = (basis20.len() + basis1.len()) * n;
    let mut cons = DMatrix::zeros(n_rows, dim_l);
    for (j, lb) in lie_basis.iter().enumerate() {
        let t = DMatrix::from_fn(n, n, |r_, c_| lb[r_ * n + c_]);
        let mut row = 0;
        for b in &basis20 {
            let img = &t * b;
            for i in 0..n {
                cons[(row, j)] = img[i];
                row += 1;
            }
        }
        for b in &basis1 {
            let img = &p20 * (&t * b);
            for i in 0..n {
                cons[(row, j)] = img[i];
                row += 1;
            }
        }
    }
    let null = jb_core::linalg::null_space(&cons, 1e-9);
    let mut worst: f64 = 0.0;
    for coeffs in &null {
        let mut t = DMatrix::zeros(n, n);
        for (j, lb) in lie_basis.iter().enumerate() {
            let m = DMatrix::from_fn(n, n, |r_, c_| lb[r_ * n + c_]);
            t += m * coeffs[j];
        }
        let tn = t.norm();
        if tn > 1e-9 {
            worst = worst.max(t.trace().abs() / tn);
        }
    }
    Ok((worst, null.len()))
}
