//! Polar cones, iterated cones, polar points and cone-type arithmetic.
//!
//! Cones are always carried as generator systems. Membership of a point means
//! every generator vanishes there, exactly over the rationals and up to a
//! scale-aware residual over complex doubles.

mod cone;
mod types;

pub use cone::{
    cone_system, contains_plane, is_k_polar_point, iterated_cone, plane_residual, HSystem, PolarChain, PolarError,
    StepRecord, MEMBERSHIP_TOL,
};
pub use types::{cone_type, cone_type_chain, IntersectionType};
