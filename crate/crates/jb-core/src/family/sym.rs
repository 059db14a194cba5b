use super::Family;
use crate::element::Side;
use nalgebra::{DMatrix, DVector};

/// Sym(r, R) with triple product {x,y,z} = xyz + zyx and trivial involution.
///
/// Coordinates: r diagonal entries first, then the strictly upper triangle
/// row by row; the off-diagonal coordinate c_ij represents c_ij (E_ij + E_ji).
pub struct SymR {
    r: usize,
    n: usize,
}

impl SymR {
    pub fn new(r: usize) -> Self {
        SymR { r, n: r * (r + 1) / 2 }
    }

    fn to_matrix(&self, v: &DVector<f64>) -> DMatrix<f64> {
        let r = self.r;
        let mut m = DMatrix::zeros(r, r);
        for i in 0..r {
            m[(i, i)] = v[i];
        }
        let mut k = r;
        for i in 0..r {
            for j in (i + 1)..r {
                m[(i, j)] = v[k];
                m[(j, i)] = v[k];
                k += 1;
            }
        }
        m
    }

    fn from_matrix(&self, m: &DMatrix<f64>) -> DVector<f64> {
        let r = self.r;
        let mut v = DVector::zeros(self.n);
        for i in 0..r {
            v[i] = m[(i, i)];
        }
        let mut k = r;
        for i in 0..r {
            for j in (i + 1)..r {
                v[k] = 0.5 * (m[(i, j)] + m[(j, i)]);
                k += 1;
            }
        }
        v
    }
}

impl Family for SymR {
    fn name(&self) -> &'static str {
        "sym"
    }

    fn spec_string(&self) -> String {
        format!("sym:{}", self.r)
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
        let xy = &mx * &my;
        let res = &xy * &mz + &mz * &my.transpose() * &mx.transpose();
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
        (DMatrix::identity(self.r, self.r) - prod).determinant()
    }
}
