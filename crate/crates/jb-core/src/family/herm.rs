use super::Family;
use crate::element::Side;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Herm(r, C) as a real Jordan pair: {x,y,z} = xyz + zyx over C, trivial
/// involution. Real dimension r^2.
///
/// Coordinates: r real diagonal entries, then per upper-triangle slot (i<j)
/// the pair (re, im) of the (i,j) entry; the (j,i) entry is its conjugate.
pub struct HermC {
    r: usize,
    n: usize,
}

impl HermC {
    pub fn new(r: usize) -> Self {
        HermC { r, n: r * r }
    }

    fn to_matrix(&self, v: &DVector<f64>) -> DMatrix<Complex64> {
        let r = self.r;
        let mut m = DMatrix::from_element(r, r, Complex64::new(0.0, 0.0));
        for i in 0..r {
            m[(i, i)] = Complex64::new(v[i], 0.0);
        }
        let mut k = r;
        for i in 0..r {
            for j in (i + 1)..r {
                let c = Complex64::new(v[k], v[k + 1]);
                m[(i, j)] = c;
                m[(j, i)] = c.conj();
                k += 2;
            }
        }
        m
    }

    fn from_matrix(&self, m: &DMatrix<Complex64>) -> DVector<f64> {
        let r = self.r;
        let mut v = DVector::zeros(self.n);
        for i in 0..r {
            v[i] = m[(i, i)].re;
        }
        let mut k = r;
        for i in 0..r {
            for j in (i + 1)..r {
                let c = 0.5 * (m[(i, j)] + m[(j, i)].conj());
                v[k] = c.re;
                v[k + 1] = c.im;
                k += 2;
            }
        }
        v
    }
}

impl Family for HermC {
    fn name(&self) -> &'static str {
        "herm_c"
    }

    fn spec_string(&self) -> String {
        format!("herm_c:{}", self.r)
    }

    fn dim(&self) -> usize {
        self.n
    }

    fn triple(
        &self,
        _side: Side,
        x: &DVector<f64>,
        y: &DVector<f64>,
        z: &DVector<f64>,
    ) -> DVector<f64> {
        let (mx, my, mz) = (self.to_matrix(x), self.to_matrix(y), self.to_matrix(z));
        let res = &mx * &my * &mz + &mz * &my * &mx;
        self.from_matrix(&res)
    }

    fn theta(&self, _side: Side, x: &DVector<f64>) -> DVector<f64> {
        x.clone()
    }

    fn max_tripotent(&self) -> DVector<f64> {
        let mut v = DVector::zeros(self.n);
        for i in 0..self.r {
            v[i] = 1.0;
        }
        v
    }

    fn frame_seed(&self) -> DVector<f64> {
        let mut v = DVector::zeros(self.n);
        for i in 0..self.r {
            v[i] = (self.r - i) as f64;
        }
        v
    }

    fn pair_norm(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        let prod = self.to_matrix(x) * self.to_matrix(y);
        let det = (DMatrix::from_fn(self.r, self.r, |i, j| {
            let id = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            id - prod[(i, j)]
        }))
        .determinant();
        // det(1 - xy) is real for Hermitian x, y: xy and yx = (xy)^* share a
        // characteristic polynomial.
        det.re
    }
}
