//! Concrete simple real Jordan pair families behind a single trait.
//!
//! Each family supplies the closed-form triple product, the Cartan
//! involution and a couple of seed elements; everything else (trace form,
//! structure constants, frames, Peirce data) is derived numerically by
//! [`crate::structure::JordanPairStructure`].

mod herm;
mod rect;
mod spin;
mod sym;

use crate::element::Side;
use crate::error::{JpError, Result};
use nalgebra::DVector;

pub use herm::HermC;
pub use rect::Rect;
pub use spin::Spin;
pub use sym::SymR;

/// Parsed algebra spec, e.g. `sym:3`, `herm_c:2`, `spin:4`, `rect:2x3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraSpec {
    Sym { r: usize },
    HermC { r: usize },
    Spin { n: usize },
    Rect { p: usize, q: usize },
}

impl AlgebraSpec {
    /// Parse the ASCII spec grammar (case-insensitive).
    pub fn parse(s: &str) -> Result<AlgebraSpec> {
        let lower = s.trim().to_ascii_lowercase();
        let (name, arg) = lower
            .split_once(':')
            .ok_or_else(|| JpError::MalformedSpec(s.to_string()))?;
        let parse_num = |t: &str| -> Result<usize> {
            t.parse::<usize>()
                .map_err(|_| JpError::MalformedSpec(s.to_string()))
        };
        match name {
            "sym" => {
                let r = parse_num(arg)?;
                if r < 1 {
                    return Err(JpError::MalformedSpec(s.to_string()));
                }
                Ok(AlgebraSpec::Sym { r })
            }
            "herm_c" => {
                let r = parse_num(arg)?;
                if r < 1 {
                    return Err(JpError::MalformedSpec(s.to_string()));
                }
                Ok(AlgebraSpec::HermC { r })
            }
            "spin" => {
                let n = parse_num(arg)?;
                if n < 3 {
                    return Err(JpError::Invalid(format!(
                        "spin factor requires n >= 3, got {n}"
                    )));
                }
                Ok(AlgebraSpec::Spin { n })
            }
            "rect" => {
                let (ps, qs) = arg
                    .split_once('x')
                    .ok_or_else(|| JpError::MalformedSpec(s.to_string()))?;
                let p = parse_num(ps)?;
                let q = parse_num(qs)?;
                if p < 1 || q < 1 {
                    return Err(JpError::MalformedSpec(s.to_string()));
                }
                Ok(AlgebraSpec::Rect { p, q })
            }
            "quat" | "herm_h" | "oct" | "exc" => Err(JpError::UnsupportedFamily(name.to_string())),
            other => Err(JpError::UnsupportedFamily(other.to_string())),
        }
    }

    pub fn to_family(&self) -> Box<dyn Family> {
        match *self {
            AlgebraSpec::Sym { r } => Box::new(SymR::new(r)),
            AlgebraSpec::HermC { r } => Box::new(HermC::new(r)),
            AlgebraSpec::Spin { n } => Box::new(Spin::new(n)),
            AlgebraSpec::Rect { p, q } => Box::new(Rect::new(p, q)),
        }
    }

    pub fn spec_string(&self) -> String {
        match *self {
            AlgebraSpec::Sym { r } => format!("sym:{r}"),
            AlgebraSpec::HermC { r } => format!("herm_c:{r}"),
            AlgebraSpec::Spin { n } => format!("spin:{n}"),
            AlgebraSpec::Rect { p, q } => format!("rect:{p}x{q}"),
        }
    }
}

/// Closed-form data a concrete family must provide.
///
/// Convention: coordinates of V^+ and V^- both have length `dim()` and the
/// triple product `{x,y,z}` takes x,z on `side` and y on the opposite side.
pub trait Family: Send + Sync {
    fn name(&self) -> &'static str;
    fn spec_string(&self) -> String;
    fn dim(&self) -> usize;

    /// {x, y, z} with x,z in V^side and y in V^{-side}; result in V^side.
    fn triple(&self, side: Side, x: &DVector<f64>, y: &DVector<f64>, z: &DVector<f64>)
        -> DVector<f64>;

    /// Cartan involution V^side -> V^{-side} in coordinates.
    fn theta(&self, side: Side, x: &DVector<f64>) -> DVector<f64>;

    /// A maximal tripotent in V^+ (used to carve out the Euclidean part).
    fn max_tripotent(&self) -> DVector<f64>;

    /// A regular element of the Euclidean part whose spectral decomposition
    /// yields the canonical frame (spectral values r, r-1, ..., 1).
    fn frame_seed(&self) -> DVector<f64>;

    /// Closed-form pair determinant, used as an oracle for the homotopy root.
    fn pair_norm(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64;
}

/// Names understood by the registry, with a one-line description each.
pub fn known_families() -> Vec<(&'static str, &'static str)> {
    vec![
        ("sym", "Sym(r,R) symmetric matrices, unital, rank r"),
        ("herm_c", "Herm(r,C) complex Hermitian matrices as a real pair, rank r"),
        ("spin", "R^n split spin factor, unital, rank 2"),
        ("rect", "M(p x q, R) rectangular pair, non-unital for p != q"),
    ]
}

/// Build a family directly from a spec string.
pub fn family_from_spec(s: &str) -> Result<Box<dyn Family>> {
    Ok(AlgebraSpec::parse(s)?.to_family())
}
