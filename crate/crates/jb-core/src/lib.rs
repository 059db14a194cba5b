//! Simple real Jordan pairs over concrete families (symmetric, complex
//! Hermitian, split spin, rectangular), with triple products, Bergman
//! operators, the pair determinant, frames, and Peirce decompositions.
//!
//! Families are registered behind the [`family::Family`] trait and selected
//! by spec strings such as `sym:3` or `rect:2x3`; all structure constants
//! are measured numerically from a constructed frame.

pub mod checks;
pub mod config;
pub mod element;
pub mod error;
pub mod family;
pub mod idem;
pub mod linalg;
pub mod peirce;
pub mod probe;
pub mod structure;

pub use config::JpConfig;
pub use element::{Element, Side};
pub use error::{JpError, Result};
pub use family::{AlgebraSpec, Family};
pub use idem::{Frame, Idempotent};
pub use peirce::{JointPeirce, PeirceDecomposition};
pub use structure::{BergmanDecomposition, JordanPairStructure, StructureConstants};
