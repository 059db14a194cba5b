//! Infinitesimal actions of the graded algebra in the two pictures.
//!
//! Non-compact picture (functions on V^-):
//!   dpi(a) f = -d_a f                                   a in V^-
//!   dpi(T) f = -d_{Ty} f + (nu/p + 1/2) Tr(T) f         T in the Levi part
//!   dpi(b) f = -d_{Q_y b} f - (2 nu + p) tau(b, y) f    b in V^+
//!
//! Fourier picture (functions on V^+), lambda = p - 2 nu:
//!   dpi(a) f = i tau(x, a) f
//!   dpi(T) f = -d_{Tx} f + (nu/p - 1/2) Tr(T) f
//!   dpi(b) f = (1/i) tau(b, B_lambda f(x))

use crate::RepParams;
use jb_besselop::field::{Differentiable, ScalarField};
use jb_besselop::op::BesselOperator;
use jb_core::{Element, Side};
use nalgebra::{DMatrix, DVector};

/// Generator species for the action.
pub enum Generator {
    /// a in V^-
    NBar(Element),
    /// Levi element given by its matrix actions (T on V^+, T on V^-)
    Levi(DMatrix<f64>, DMatrix<f64>),
    /// b in V^+
    N(Element),
}

/// Non-compact picture action at a point, from the field's derivatives.
pub fn dpi_noncompact(
    params: &RepParams,
    gen: &Generator,
    f: &dyn ScalarField,
    y: &Element,
) -> f64 {
    let jp = &params.jp;
    let dfr = Differentiable::new(f);
    match gen {
        Generator::NBar(a) => -dfr.gradient(&y.coords).dot(&a.coords),
        Generator::Levi(t_plus, t_minus) => {
            let ty = t_minus * &y.coords;
            -dfr.gradient(&y.coords).dot(&ty)
                + (params.nu / jp.constants().p + 0.5) * t_plus.trace() * f.value(&y.coords)
        }
        Generator::N(b) => {
            let qyb = jp.quad(y, b).expect("parity fixed");
            -dfr.gradient(&y.coords).dot(&qyb.coords)
                - (2.0 * params.nu + jp.constants().p) * jp.tau(b, y) * f.value(&y.coords)
        }
    }
}

/// Commutator residual in the non-compact picture:
/// [dpi(a), dpi(b)] f (y) versus dpi(T') f (y) where T' is the Levi element
/// with actions (-D_{b,a}, +D_{a,b}) coming from the graded bracket.
/// The first composition is differentiated numerically in the a-direction,
/// keeping the two sides independent.
pub fn commutator_residual_noncompact(
    params: &RepParams,
    a: &Element,
    b: &Element,
    f: &dyn ScalarField,
    y: &Element,
) -> f64 {
    debug_assert_eq!(a.side, Side::Minus);
    debug_assert_eq!(b.side, Side::Plus);
    let jp = &params.jp;
    let nb = Generator::N(b.clone());
    // dpi(a) dpi(b) f at y: derivative of y -> dpi(b) f (y) along -a
    let h = 1e-5 * (1.0 + y.norm());
    let yp = y.add(&a.scale(h));
    let ym = y.sub(&a.scale(h));
    let d_ab = -(dpi_noncompact(params, &nb, f, &yp) - dpi_noncompact(params, &nb, f, &ym))
        / (2.0 * h);
    // dpi(b) dpi(a) f at y: apply the b-formula to the field g = -d_a f
    struct DirDeriv<'a> {
        f: &'a dyn ScalarField,
        a: DVector<f64>,
    }
    impl<'a> ScalarField for DirDeriv<'a> {
        fn value(&self, x: &DVector<f64>) -> f64 {
            -Differentiable::new(self.f).gradient(x).dot(&self.a)
        }
        fn gradient(&self, x: &DVector<f64>) -> Option<DVector<f64>> {
            Some(-(Differentiable::new(self.f).hessian(x) * &self.a))
        }
    }
    let g = DirDeriv { f, a: a.coords.clone() };
    let d_ba = dpi_noncompact(params, &nb, &g, y);
    let commutator = d_ab - d_ba;
    // expected: T' acts on V^+ by -D_{b,a} and on V^- by +D_{a,b}
    let t_plus = -jp.d_matrix(b, a);
    let t_minus = jp.d_matrix(a, b);
    let expect = dpi_noncompact(params, &Generator::Levi(t_plus, t_minus), f, y);
    (commutator - expect).abs() / (1.0 + commutator.abs() + expect.abs())
}

/// Fourier picture action at a point for real fields. The a-action
/// multiplies by i tau(x,a); products of two such actions stay real, and the
/// mixed commutator below is arranged to be real throughout.
pub fn dpi_fourier_levi(
    params: &RepParams,
    t_plus: &DMatrix<f64>,
    f: &dyn ScalarField,
    x: &Element,
) -> f64 {
    let dfr = Differentiable::new(f);
    let tx = t_plus * &x.coords;
    -dfr.gradient(&x.coords).dot(&tx)
        + (params.nu / params.jp.constants().p - 0.5) * t_plus.trace() * f.value(&x.coords)
}

/// Commutator residual in the Fourier picture: for real f,
///   [dpi(a), dpi(b)] f = tau(x,a) tau(b, B_lambda f(x))
///                        - tau(b, B_lambda[tau(.,a) f](x))
/// versus the Levi action of the same bracket element.
pub fn commutator_residual_fourier(
    params: &RepParams,
    a: &Element,
    b: &Element,
    f: &dyn ScalarField,
    x: &Element,
) -> f64 {
    debug_assert_eq!(a.side, Side::Minus);
    debug_assert_eq!(b.side, Side::Plus);
    let jp = &params.jp;
    let op = BesselOperator::new(jp.clone());
    let lambda = params.lambda();
    let bf = op.apply(lambda, f, x).value;
    let term1 = jp.tau(x, a) * jp.tau(b, &bf);
    // product field tau(., a) f with exact derivatives
    let pf = jb_besselop::field::Product(
        jb_besselop::field::Linear {
            a: {
                // tau(x, a) = x^T G a
                jp.gram() * &a.coords
            },
            c: 0.0,
        },
        jb_besselop::op::Passthrough(f),
    );
    let b_pf = op.apply(lambda, &pf, x).value;
    let term2 = jp.tau(b, &b_pf);
    let commutator = term1 - term2;
    let t_plus = -jp.d_matrix(b, a);
    let expect = dpi_fourier_levi(params, &t_plus, f, x);
    (commutator - expect).abs() / (1.0 + commutator.abs() + expect.abs())
}
