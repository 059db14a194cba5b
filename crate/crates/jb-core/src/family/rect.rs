use super::Family;
use crate::element::Side;
use nalgebra::{DMatrix, DVector};

/// Rectangular pair (M(p x q, R), M(q x p, R)) with {x,y,z} = xyz + zyx and
/// involution the transpose. Non-unital when p != q; rank min(p,q).
///
/// Coordinates: row-major entries, p x q on the plus side and q x p on the
/// minus side (both of length pq).
pub struct Rect {
    p: usize,
    q: usize,
}

impl Rect {
    pub fn new(p: usize, q: usize) -> Self {
        Rect { p, q }
    }

    fn shape(&self, side: Side) -> (usize, usize) {
        match side {
            Side::Plus => (self.p, self.q),
            Side::Minus => (self.q, self.p),
        }
    }

    fn to_matrix(&self, side: Side, v: &DVector<f64>) -> DMatrix<f64> {
        let (rows, cols) = self.shape(side);
        DMatrix::from_fn(rows, cols, |i, j| v[i * cols + j])
    }

    fn from_matrix(&self, m: &DMatrix<f64>) -> DVector<f64> {
        let (rows, cols) = (m.nrows(), m.ncols());
        DVector::from_fn(rows * cols, |k, _| m[(k / cols, k % cols)])
    }
}

impl Family for Rect {
    fn name(&self) -> &'static str {
        "rect"
    }

    fn spec_string(&self) -> String {
        format!("rect:{}x{}", self.p, self.q)
    }

    fn dim(&self) -> usize {
        self.p * self.q
    }

    fn triple(
        &self,
        side: Side,
        x: &DVector<f64>,
        y: &DVector<f64>,
        z: &DVector<f64>,
    ) -> DVector<f64> {
        let mx = self.to_matrix(side, x);
        let my = self.to_matrix(side.flip(), y);
        let mz = self.to_matrix(side, z);
        let res = &mx * &my * &mz + &mz * &my * &mx;
        self.from_matrix(&res)
    }

    fn theta(&self, side: Side, x: &DVector<f64>) -> DVector<f64> {
        self.from_matrix(&self.to_matrix(side, x).transpose())
    }

    fn max_tripotent(&self) -> DVector<f64> {
        let r = self.p.min(self.q);
        let mut v = DVector::zeros(self.dim());
        for i in 0..r {
            v[i * self.q + i] = 1.0;
        }
        v
    }

    fn frame_seed(&self) -> DVector<f64> {
        let r = self.p.min(self.q);
        let mut v = DVector::zeros(self.dim());
        for i in 0..r {
            v[i * self.q + i] = (r - i) as f64;
        }
        v
    }

    fn pair_norm(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        let prod = self.to_matrix(Side::Plus, x) * self.to_matrix(Side::Minus, y);
        (DMatrix::identity(self.p, self.p) - prod).determinant()
    }
}
