//! Symmetric cones of Euclidean subalgebras inside a Jordan pair: spectral
//! calculus, the Gindikin Gamma function, and deterministic cone quadrature
//! (radial chamber rule and Monte Carlo with random frames).

pub mod context;
pub mod error;
pub mod gamma;
pub mod integrate;
pub mod quad;

pub use context::ConeContext;
pub use error::{ConeError, Result};
pub use gamma::{gamma_real, gindikin_gamma, gindikin_gamma_real, lgamma_complex};
pub use integrate::{cone_integrate, rule_for, ConeIntegrand, ConePoint, ConeRule, General, Invariant};
pub use quad::{Estimate, QuadratureSpec};
