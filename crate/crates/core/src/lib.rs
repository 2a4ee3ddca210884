//! Exact and numerical machinery for upper bounds on resolvent degree.
//!
//! * [`exact_core`]: big-integer kernels and interval-checked reals.
//! * [`bounds`]: the bounding functions `theta`, `phi`, `G`, `psi`, `Phi`, `F`
//!   and the inequalities relating them.
//! * [`poly`]: sparse homogeneous polynomials over exact or floating fields,
//!   with polars.
//! * [`polar`]: polar cones, iterated cones, polar points and plane containment.
//! * [`tschirnhaus`]: the hypersurfaces `b_m = 0` attached to a polynomial.
//! * [`planes`]: numerical point and plane finding, plus the arithmetic audit
//!   of the case-by-case constructions.
//! * [`verify`]: seeded randomized suites for the polar identities and
//!   Bertini's lemma.

// Index loops mirror the matrix algebra; `!(x <= tol)` also rejects NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod exact_core;
pub mod planes;
pub mod polar;
pub mod poly;
pub mod report;
pub mod sample;
pub mod tschirnhaus;
pub mod verify;

pub use exact_core::{HighPrecisionReal, Natural, Rational};
pub use polar::IntersectionType;
