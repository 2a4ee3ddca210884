//! Numerical point and plane finding, and the arithmetic audit of the
//! case-by-case plane constructions.

mod ledger;
mod pipeline;
mod quadric;
mod solve;

pub use ledger::{
    audit_all, audit_ledger, construction, eta, polar_degree_crossover, wolfson_pipeline_audit, Check, Construction,
    LedgerCase, LedgerReport, PlaneStep, Status, ETA, RHO,
};
pub use pipeline::{run_pipeline, PipelineReport, Stage, CERTIFY_TOL, MAX_DEPTH, MAX_N};
pub use quadric::{quadric_k_plane, QuadricPlane, MAX_PLANE_DIM, MAX_QUADRICS};
pub use solve::{
    expected_dimension, find_point, find_point_off_span, find_point_where, kernel, projective_distance, solve_all,
    Found, SliceConfig, Solutions, CLUSTER_TOL, DEGREE_CAP,
};

use thiserror::Error;

use crate::polar::PolarError;
use crate::poly::PolyError;
use crate::tschirnhaus::TschirnhausError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanesError {
    #[error("sliced system has expected dimension {expected} < 0")]
    Dimension { expected: i64 },
    #[error("Bezout number {degree} exceeds the cap")]
    DegreeCap { degree: u64 },
    #[error("{count} nonlinear equations remain after elimination (at most 3 supported)")]
    TooManyNonlinear { count: usize },
    #[error("no solution converged after {attempts} attempts: {detail}")]
    NoConvergence { attempts: u64, detail: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource guard: {0}")]
    Guard(String),
    #[error("stage {stage}: {source}")]
    Stage { stage: String, source: Box<PlanesError> },
    #[error(transparent)]
    Polar(#[from] PolarError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Tschirnhaus(#[from] TschirnhausError),
}

impl PlanesError {
    pub fn at(self, stage: impl Into<String>) -> Self {
        PlanesError::Stage {
            stage: stage.into(),
            source: Box::new(self),
        }
    }
}
