//! Seeded random probe elements for identity testing.

use crate::element::{Element, Side};
use crate::structure::JordanPairStructure;
use nalgebra::DVector;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform coordinates in [-1, 1] scaled to unit norm expectation.
pub fn random_element(jp: &JordanPairStructure, side: Side, rng: &mut impl Rng) -> Element {
    let n = jp.dim();
    let coords = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0)) / (n as f64).sqrt();
    Element::new(coords, side)
}

/// Random element of norm exactly `scale`.
pub fn random_element_scaled(
    jp: &JordanPairStructure,
    side: Side,
    scale: f64,
    rng: &mut impl Rng,
) -> Element {
    let e = random_element(jp, side, rng);
    let n = e.norm();
    if n == 0.0 {
        e
    } else {
        e.scale(scale / n)
    }
}
