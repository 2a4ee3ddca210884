//! Linear spaces on intersections of quadrics through iterated polar points.

use num_complex::Complex64 as C;
use serde::Serialize;

use super::solve::{find_point_off_span, find_point_where, SliceConfig};
use super::PlanesError;
use crate::polar::{cone_system, plane_residual, HSystem};
use crate::poly::PPoint;

pub const MAX_QUADRICS: usize = 3;
pub const MAX_PLANE_DIM: usize = 5;

/// A `k`-plane on the quadrics, given by `k+1` spanning points.
#[derive(Clone, Debug, Serialize)]
pub struct QuadricPlane {
    pub points: Vec<PPoint<C>>,
    /// Bezout number of each point-finding solve, in order.
    pub solve_degrees: Vec<u64>,
    /// Per-point residual on the system it was found on.
    pub point_residuals: Vec<f64>,
    /// Largest normalized coefficient of the quadrics restricted to the plane.
    pub plane_residual: f64,
}

/// Finds a `k`-polar point `P_0..P_k` of `l` quadrics in `P^r`, `r >= (k+1)l + k`.
///
/// `P_0` is `base` when given (it must lie on the quadrics). Each further
/// point solves the current cone, which is the quadrics plus tangent
/// hyperplanes, so every solve has degree `2^l`.
pub fn quadric_k_plane(
    quadrics: &HSystem<C>,
    k: usize,
    base: Option<&PPoint<C>>,
    cfg: &SliceConfig,
) -> Result<QuadricPlane, PlanesError> {
    let l = quadrics.polys().len();
    let r = quadrics.ambient();
    if let Some(p) = quadrics.polys().iter().find(|p| p.degree() != 2) {
        return Err(PlanesError::Precondition(format!(
            "generator of degree {} is not a quadric",
            p.degree()
        )));
    }
    if l == 0 || l > MAX_QUADRICS || k > MAX_PLANE_DIM {
        return Err(PlanesError::Precondition(format!(
            "need 1 <= l <= {MAX_QUADRICS} and k <= {MAX_PLANE_DIM}, got l = {l}, k = {k}"
        )));
    }
    let need = (k + 1) * l + k;
    if r < need {
        return Err(PlanesError::Precondition(format!(
            "ambient dimension {r} < (k+1)l+k = {need}"
        )));
    }
    let tol = cfg.residual_tol;
    let mut solve_degrees = Vec::new();
    let mut point_residuals = Vec::new();
    let p0 = match base {
        Some(p) => {
            let res = quadrics.max_residual(p.coords())?;
            if res > tol {
                return Err(PlanesError::Precondition(format!(
                    "base point residual {res:e} exceeds tolerance"
                )));
            }
            point_residuals.push(res);
            p.clone()
        }
        None => {
            let f = find_point_where(quadrics, &cfg.derive(0), |_| true)?;
            solve_degrees.push(f.degree);
            point_residuals.push(f.residual);
            f.point
        }
    };
    let mut points = vec![p0];
    let mut cone = quadrics.clone();
    for j in 1..=k {
        cone = cone_system(&cone, &points[j - 1], tol)?;
        let f = find_point_off_span(&cone, &cfg.derive(j as u64), &points)?;
        solve_degrees.push(f.degree);
        point_residuals.push(f.residual);
        points.push(f.point);
    }
    let plane_residual = plane_residual(quadrics, &points)?;
    Ok(QuadricPlane {
        points,
        solve_degrees,
        point_residuals,
        plane_residual,
    })
}
