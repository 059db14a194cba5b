use super::Family;
use crate::element::Side;
use nalgebra::DVector;

/// Split spin factor on R^n: rank 2, unital, with the neutral-leaning
/// signature sigma = diag(+1 x ceil(n/2), -1 x floor(n/2)).
///
/// Triple product
///   {x,y,z} = 2( <x,y> z + <z,y> x - <x,sigma z> sigma y ),
/// Cartan involution the identity in coordinates. For even n this gives
/// d+ = d- = n/2 - 1; primitive tripotents are the normalized sigma-null
/// vectors such as (u1 +- w1)/2.
pub struct Spin {
    n: usize,
    a: usize,
}

impl Spin {
    pub fn new(n: usize) -> Self {
        Spin { n, a: n.div_ceil(2) }
    }

    fn sigma(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut s = x.clone();
        for i in self.a..self.n {
            s[i] = -s[i];
        }
        s
    }

    fn q_form(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        // <x, sigma y>
        let mut acc = 0.0;
        for i in 0..self.n {
            acc += x[i] * y[i] * if i < self.a { 1.0 } else { -1.0 };
        }
        acc
    }
}

impl Family for Spin {
    fn name(&self) -> &'static str {
        "spin"
    }

    fn spec_string(&self) -> String {
        format!("spin:{}", self.n)
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
        let xy = x.dot(y);
        let zy = z.dot(y);
        let xsz = self.q_form(x, z);
        let mut res = z * (2.0 * xy);
        res += x * (2.0 * zy);
        res -= self.sigma(y) * (2.0 * xsz);
        res
    }

    fn theta(&self, _side: Side, x: &DVector<f64>) -> DVector<f64> {
        x.clone()
    }

    fn max_tripotent(&self) -> DVector<f64> {
        let mut v = DVector::zeros(self.n);
        v[0] = 1.0;
        v
    }

    fn frame_seed(&self) -> DVector<f64> {
        // 2*e1 + 1*e2 with e_{1,2} = (u1 +- w1)/2.
        let mut v = DVector::zeros(self.n);
        v[0] = 1.5;
        v[self.a] = 0.5;
        v
    }

    fn pair_norm(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        1.0 - 2.0 * x.dot(y) + self.q_form(x, x) * self.q_form(y, y)
    }
}
