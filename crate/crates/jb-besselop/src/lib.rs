//! The Bessel operator of a Jordan pair: pointwise application on scalar
//! fields, radial reduction on invariant functions, pullback along the
//! rank-variety chart with the tangency certification, the Lebesgue adjoint
//! identity, and symmetry with respect to equivariant orbit measures.

pub mod adjoint;
pub mod field;
pub mod op;
pub mod pullback;
pub mod radial;
pub mod symmetry;
pub mod tangency;

pub use adjoint::{adjoint_residual_direct, adjoint_residual_separable, Factor, SeparableField};
pub use field::{Differentiable, FdPolicy, ScalarField};
pub use op::{tau_gradient, BesselApplication, BesselOperator};
pub use pullback::{pullback_bessel, pullback_chain_oracle, PullbackApplication};
pub use radial::{radial_components_full, radial_components_orbit, RadialField};
pub use symmetry::{
    circle_haar_grid, orbit_symmetry_residual_ambient, orbit_symmetry_residual_radial,
    polar_vector_integral,
};
pub use tangency::{tangency_residual, tangency_scan, TangencyPoint, VanishingField};
