//! Desk-scale numeric rehearsal of the plane constructions on Tschirnhaus
//! hypersurfaces.
//!
//! A random polynomial of degree `n` gives `tau_{1,2,3} = {b_1 = b_2 = b_3 = 0}`
//! in `P^{n-1}`. A hyperplane `H` missing `[1:0:...:0]` is added so that
//! every plane found avoids the excluded axis. Depth 1 finds a line, depth 2
//! follows the `n-6` construction to a plane.

use nalgebra::DMatrix;
use num_complex::Complex64 as C;
use num_traits::{One, Zero};
use serde::Serialize;

use super::quadric::quadric_k_plane;
use super::solve::{find_point_off_span, find_point_where, images_of, kernel, linear_row, Found, SliceConfig};
use super::PlanesError;
use crate::exact_core::Rational;
use crate::polar::{cone_system, contains_plane, is_k_polar_point, plane_residual, HSystem};
use crate::poly::{Field, HPoly, PPoint};
use crate::sample::{rng, small_rational};
use crate::tschirnhaus::{build_tschirnhaus, transformed_coefficients, GeneralPoly};

pub const MAX_N: usize = 19;
pub const MAX_DEPTH: usize = 2;
/// Tolerance for certifying points and planes on the original system.
pub const CERTIFY_TOL: f64 = 1e-6;

/// One point-finding stage.
#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub name: String,
    /// Type of the system solved, as generators in the working space.
    pub system_type: String,
    /// Dimension of the working projective space.
    pub ambient: usize,
    /// Degree the proof's ledger assigns to this stage.
    pub ledger_degree: u64,
    /// Bezout number of the sliced system actually solved.
    pub solve_degree: u64,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub depth: usize,
    pub seed: u64,
    /// `a_1..a_n` of the random monic polynomial.
    pub polynomial: Vec<String>,
    pub stages: Vec<Stage>,
    /// Spanning points `P_0..P_depth` in `w`-coordinates.
    pub points: Vec<Vec<String>>,
    /// Restricted-coefficient residual of `H, b_1, b_2, b_3` on the plane.
    pub plane_residual: f64,
    /// Largest relative `|c_m|`, `m <= 3`, of the transformed polynomial at a
    /// random point of the plane.
    pub transformed_residual: f64,
    pub polar_point: bool,
    /// The plane misses `[1:0:...:0]`.
    pub off_axis: bool,
    pub certified: bool,
}

impl PipelineReport {
    pub fn solve_degrees(&self) -> Vec<u64> {
        self.stages.iter().map(|s| s.solve_degree).collect()
    }

    pub fn ledger_degrees(&self) -> Vec<u64> {
        self.stages.iter().map(|s| s.ledger_degree).collect()
    }
}

fn guard(n: usize, depth: usize) -> Result<(), PlanesError> {
    if n > MAX_N || depth > MAX_DEPTH {
        return Err(PlanesError::Guard(format!(
            "need n <= {MAX_N} and depth <= {MAX_DEPTH}, got n = {n}, depth = {depth}"
        )));
    }
    // P^{n-1} must hold: depth 0 a point on 4 generators, depth 1 a point on
    // the 7-generator cone, depth 2 a P^11 inside the 7 hyperplanes of C^2.
    let need = [5, 9, 19][depth];
    if n < need {
        return Err(PlanesError::Precondition(format!(
            "depth {depth} needs n >= {need}, got {n}"
        )));
    }
    Ok(())
}

/// The starting system `H, b_1, b_2, b_3` and the polynomial it came from.
fn base_system(n: usize, seed: u64) -> Result<(GeneralPoly<Rational>, HSystem<C>), PlanesError> {
    let p = GeneralPoly::random_rooted(n, seed);
    let tau = build_tschirnhaus(&p, 3)?;
    let mut r = rng(seed ^ 0x5eed);
    let mut h: Vec<Rational> = (0..n).map(|_| small_rational(&mut r)).collect();
    h[0] = Rational::one();
    let mut polys = vec![HPoly::linear(&h).to_complex()];
    polys.extend(tau.b.iter().map(HPoly::to_complex));
    Ok((p, HSystem::new(n - 1, polys)?))
}

fn stage(name: &str, v: &HSystem<C>, ledger_degree: u64, found: &Found) -> Stage {
    Stage {
        name: name.into(),
        system_type: v.intersection_type().to_string(),
        ambient: v.ambient(),
        ledger_degree,
        solve_degree: found.degree,
        residual: found.residual,
    }
}

fn independent(points: &[&[C]]) -> bool {
    let rows: Vec<Vec<C>> = points.iter().map(|p| p.to_vec()).collect();
    C::rank(&rows) == rows.len()
}

fn axis(n: usize) -> Vec<C> {
    let mut e = vec![C::zero(); n];
    e[0] = C::one();
    e
}

fn mat_vec(m: &DMatrix<C>, u: &[C]) -> Vec<C> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * u[j]).sum())
        .collect()
}

/// Runs the construction for a random degree-`n` polynomial.
pub fn run_pipeline(n: usize, depth: usize, cfg: &SliceConfig) -> Result<PipelineReport, PlanesError> {
    guard(n, depth)?;
    let (p, v) = base_system(n, cfg.seed)?;
    let tol = cfg.residual_tol;
    let mut stages = Vec::new();

    let f0 = find_point_where(&v, &cfg.derive(0), |_| true).map_err(|e| e.at("P_0"))?;
    stages.push(stage("P_0 on H, b_1, b_2, b_3", &v, 6, &f0));
    let mut points = vec![f0.point];

    if depth >= 1 {
        let c1 = cone_system(&v, &points[0], tol).map_err(|e| PlanesError::from(e).at("C^1"))?;
        if depth == 1 {
            let f1 = find_point_off_span(&c1, &cfg.derive(1), &points).map_err(|e| e.at("P_1"))?;
            stages.push(stage("P_1 on C^1", &c1, 12, &f1));
            points.push(f1.point);
        } else {
            let f1 = find_point_off_span(&c1, &cfg.derive(1), &points).map_err(|e| e.at("P_1"))?;
            stages.push(stage("P_1 on C^1", &c1, 12, &f1));
            points.push(f1.point);
            let c2 = cone_system(&c1, &points[1], tol).map_err(|e| PlanesError::from(e).at("C^2"))?;
            let p2 = second_polar_point(&c2, &points, cfg, &mut stages)?;
            points.push(p2);
        }
    }

    let polar_point = is_k_polar_point(&v, &points, CERTIFY_TOL)?;
    let plane_residual = plane_residual(&v, &points)?;
    let on_plane = contains_plane(&v, &points, CERTIFY_TOL)?;
    let mut with_axis: Vec<&[C]> = points.iter().map(PPoint::coords).collect();
    let e0 = axis(n);
    with_axis.push(&e0);
    let off_axis = independent(&with_axis);
    let transformed_residual = transformed_check(&p, &points, cfg.seed)?;

    Ok(PipelineReport {
        n,
        depth,
        seed: cfg.seed,
        polynomial: p.a.iter().map(Field::render).collect(),
        stages,
        points: points
            .iter()
            .map(|q| q.coords().iter().map(Field::render).collect())
            .collect(),
        plane_residual,
        transformed_residual,
        polar_point,
        off_axis,
        certified: polar_point && on_plane && off_axis && transformed_residual <= CERTIFY_TOL,
    })
}

/// `P_2` as in the `n-6` proof: a 5-plane on one quadric of `C^2` inside
/// the linear part of `C^2`, then a point on the rest of `C^2` in that plane.
fn second_polar_point(
    c2: &HSystem<C>,
    points: &[PPoint<C>],
    cfg: &SliceConfig,
    stages: &mut Vec<Stage>,
) -> Result<PPoint<C>, PlanesError> {
    let n = c2.ambient() + 1;
    let lin: Vec<Vec<C>> = c2.polys().iter().filter(|g| g.degree() == 1).map(linear_row).collect();
    let k = kernel(&lin, n);
    let images = images_of(&k);
    let mut nonlinear: Vec<&HPoly<C>> = c2.polys().iter().filter(|g| g.degree() >= 2).collect();
    let u_pos = nonlinear
        .iter()
        .position(|g| g.degree() == 2)
        .expect("C^2 has quadrics");
    let u = nonlinear.remove(u_pos);
    let u_local = HSystem::new(k.ncols() - 1, vec![u.substitute_linear(&images)?])?;

    let plane = quadric_k_plane(&u_local, 5, None, &cfg.derive(2)).map_err(|e| e.at("5-plane on U"))?;
    stages.push(Stage {
        name: "5-plane on U in the linear part of C^2".into(),
        system_type: u_local.intersection_type().to_string(),
        ambient: u_local.ambient(),
        ledger_degree: 2,
        solve_degree: plane.solve_degrees.iter().copied().max().unwrap_or(0),
        residual: plane.plane_residual,
    });

    // Lambda' in w-coordinates: columns K s_i.
    let cols: Vec<Vec<C>> = plane.points.iter().map(|s| mat_vec(&k, s.coords())).collect();
    let lambda = DMatrix::from_fn(n, cols.len(), |i, j| cols[j][i]);
    let lambda_images = images_of(&lambda);
    let rest: Vec<HPoly<C>> = nonlinear
        .iter()
        .map(|g| g.substitute_linear(&lambda_images))
        .collect::<Result<_, _>>()?;
    let rest = HSystem::new(cols.len() - 1, rest)?;
    let base: Vec<&[C]> = points.iter().map(PPoint::coords).collect();
    let f2 = find_point_where(&rest, &cfg.derive(3), |q| {
        let w = mat_vec(&lambda, q.coords());
        let mut rows = base.clone();
        rows.push(&w);
        independent(&rows)
    })
    .map_err(|e| e.at("P_2"))?;
    let w = PPoint::new(mat_vec(&lambda, f2.point.coords()))?;
    let residual = c2.max_residual(w.coords())?;
    stages.push(Stage {
        residual,
        ..stage("P_2 on C^2 within the 5-plane", &rest, 12, &f2)
    });
    Ok(w)
}

/// Pushes a random point of the plane through the transformation and reads
/// off the first three coefficients of the transformed polynomial.
fn transformed_check(p: &GeneralPoly<Rational>, points: &[PPoint<C>], seed: u64) -> Result<f64, PlanesError> {
    let mut r = rng(seed ^ 0xc0ef);
    let n = p.degree();
    let mut w = vec![C::zero(); n];
    for q in points {
        let t = crate::sample::unit_complex(&mut r);
        for (wi, qi) in w.iter_mut().zip(q.coords()) {
            *wi += t * qi;
        }
    }
    let scale = w.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let c = transformed_coefficients(p, &w)?;
    Ok(c.iter()
        .take(3)
        .enumerate()
        .map(|(m, cm)| cm.norm() / scale.powi(m as i32 + 1))
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_at_nine() {
        let r = run_pipeline(9, 1, &SliceConfig::with_seed(11)).unwrap();
        assert!(r.certified, "{r:#?}");
        assert_eq!(r.solve_degrees(), vec![6, 12]);
        assert!(r.plane_residual < 1e-6);
    }

    #[test]
    fn plane_at_nineteen() {
        let r = run_pipeline(19, 2, &SliceConfig::with_seed(2)).unwrap();
        assert!(r.certified, "{r:#?}");
        assert_eq!(r.solve_degrees(), vec![6, 12, 2, 12]);
        assert_eq!(r.solve_degrees(), r.ledger_degrees());
    }

    #[test]
    fn guards() {
        let cfg = SliceConfig::default();
        assert!(matches!(run_pipeline(25, 2, &cfg), Err(PlanesError::Guard(_))));
        assert!(matches!(run_pipeline(9, 3, &cfg), Err(PlanesError::Guard(_))));
        assert!(matches!(run_pipeline(12, 2, &cfg), Err(PlanesError::Precondition(_))));
    }

    #[test]
    fn point_at_five() {
        let r = run_pipeline(5, 0, &SliceConfig::with_seed(3)).unwrap();
        assert!(r.certified);
        assert_eq!(r.solve_degrees(), vec![6]);
    }
}
