//! Zero-dimensional solving by slicing, linear elimination and resultants.
//!
//! A system is cut to expected dimension zero with random hyperplanes, its
//! linear generators are eliminated through an orthonormal kernel basis, and
//! the remaining at most three equations are solved in a random affine chart:
//! one variable by companion-matrix eigenvalues, two by a Sylvester resultant,
//! three by nested resultants. Resultants are never expanded symbolically;
//! they are sampled on the unit circle and interpolated by a discrete Fourier
//! sum. Every candidate is polished by Newton's method and checked against the
//! original generators.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::PlanesError;
use crate::polar::HSystem;
use crate::poly::{Field, HPoly, PPoint};
use crate::sample::{rng, unit_complex};
use crate::tschirnhaus::eigenvalues;

/// Largest Bezout number the solver accepts.
pub const DEGREE_CAP: u64 = 64;
/// Most nonlinear equations left after linear elimination.
pub const MAX_NONLINEAR: usize = 3;
/// Seeds tried before giving up.
pub const ATTEMPTS: u64 = 5;
/// Relative distance below which two solutions are the same point.
pub const CLUSTER_TOL: f64 = 1e-6;
/// Random charts tried on one slice before settling for fewer solutions.
pub const CHARTS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SliceConfig {
    pub seed: u64,
    pub residual_tol: f64,
    pub newton_iters: usize,
}

impl Default for SliceConfig {
    fn default() -> Self {
        Self {
            seed: crate::sample::DEFAULT_SEED,
            residual_tol: 1e-8,
            newton_iters: 40,
        }
    }
}

impl SliceConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    /// Seed for the `i`-th derived sub-problem; keeps runs reproducible.
    pub fn derive(&self, i: u64) -> Self {
        Self {
            seed: splitmix(self.seed ^ splitmix(i.wrapping_add(0x9e37))),
            ..*self
        }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// All isolated solutions found on one random slice.
#[derive(Clone, Debug)]
pub struct Solutions {
    pub points: Vec<PPoint<C>>,
    pub residuals: Vec<f64>,
    /// Product of the nonlinear degrees: the number of points expected.
    pub degree: u64,
    /// Candidates handed to Newton before filtering and clustering.
    pub candidates: usize,
    pub seed: u64,
}

/// A single point together with how it was found.
#[derive(Clone, Debug)]
pub struct Found {
    pub point: PPoint<C>,
    pub residual: f64,
    pub degree: u64,
}

/// Orthonormal basis (as columns) of the kernel of the given rows.
pub fn kernel(rows: &[Vec<C>], n: usize) -> DMatrix<C> {
    if rows.is_empty() {
        return DMatrix::identity(n, n);
    }
    let mut a = DMatrix::<C>::zeros(n.max(rows.len()), n);
    for (i, r) in rows.iter().enumerate() {
        let norm = r.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        for j in 0..n {
            a[(i, j)] = r[j] / norm;
        }
    }
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= 1e-9 * top.max(1.0))
        .collect();
    DMatrix::from_fn(n, keep.len(), |j, c| vt[(keep[c], j)].conj())
}

fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<C> {
    let m = DMatrix::from_fn(n, n, |_, _| unit_complex(rng));
    m.qr().q()
}

pub(super) fn images_of(t: &DMatrix<C>) -> Vec<Vec<C>> {
    (0..t.nrows()).map(|i| t.row(i).iter().copied().collect()).collect()
}

pub(super) fn linear_row(p: &HPoly<C>) -> Vec<C> {
    let n = p.nvars();
    (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            p.coeff(&e)
        })
        .collect()
}

/// Coefficients in the last variable once the others are fixed.
fn coeffs_in_last(g: &HPoly<C>, fixed: &[C]) -> Vec<C> {
    let last = fixed.len();
    let mut out = vec![C::zero(); g.degree() as usize + 1];
    for (e, c) in g.terms() {
        let mut t = *c;
        for (j, &a) in e[..last].iter().enumerate() {
            if a > 0 {
                t *= fixed[j].powu(a);
            }
        }
        out[e[last] as usize] += t;
    }
    out
}

/// Sylvester resultant of two univariate polynomials (coefficients low to high).
fn sylvester(a: &[C], b: &[C]) -> C {
    let p = a.len() - 1;
    let q = b.len() - 1;
    let n = p + q;
    if n == 0 {
        return C::one();
    }
    let mut m = DMatrix::<C>::zeros(n, n);
    for i in 0..q {
        for (k, c) in a.iter().rev().enumerate() {
            m[(i, i + k)] = *c;
        }
    }
    for i in 0..p {
        for (k, c) in b.iter().rev().enumerate() {
            m[(q + i, i + k)] = *c;
        }
    }
    m.determinant()
}

/// Coefficients of a polynomial of degree at most `deg` from its values on
/// the `(deg+1)`-th roots of unity.
fn interpolate(deg: usize, f: impl Fn(C) -> C) -> Vec<C> {
    let m = deg + 1;
    let nodes: Vec<C> = (0..m)
        .map(|k| C::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64))
        .collect();
    let vals: Vec<C> = nodes.iter().map(|&z| f(z)).collect();
    (0..m)
        .map(|j| {
            let s: C = nodes.iter().zip(&vals).map(|(z, v)| v * z.powu(j as u32).conj()).sum();
            s / m as f64
        })
        .collect()
}

/// Roots of `sum c_k t^k`, ignoring numerically vanishing top coefficients.
fn univariate_roots(c: &[C]) -> Vec<C> {
    let top = c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if top == 0.0 {
        return Vec::new();
    }
    let mut d = c.len() - 1;
    while d > 0 && c[d].norm() <= 1e-12 * top {
        d -= 1;
    }
    if d == 0 {
        return Vec::new();
    }
    let lead = c[d];
    let a: Vec<C> = (1..=d).map(|i| c[d - i] / lead).collect();
    if d == 1 {
        return vec![-a[0]];
    }
    let n = a.len();
    let mut m = DMatrix::<C>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = C::one();
    }
    for i in 0..n {
        m[(i, n - 1)] = -a[n - 1 - i];
    }
    eigenvalues(m).unwrap_or_default()
}

fn chart(u: &[C]) -> Vec<C> {
    let mut v = Vec::with_capacity(u.len() + 1);
    v.push(C::one());
    v.extend_from_slice(u);
    v
}

/// Candidate affine solutions of `N <= 3` equations in `N` unknowns.
fn candidates(eqs: &[HPoly<C>]) -> Vec<Vec<C>> {
    match eqs.len() {
        0 => vec![Vec::new()],
        1 => univariate_roots(&coeffs_in_last(&eqs[0], &[C::one()]))
            .into_iter()
            .map(|t| vec![t])
            .collect(),
        2 => {
            let (f1, f2) = (&eqs[0], &eqs[1]);
            let d = (f1.degree() * f2.degree()) as usize;
            let res = interpolate(d, |y| {
                sylvester(&coeffs_in_last(f1, &[C::one(), y]), &coeffs_in_last(f2, &[C::one(), y]))
            });
            let mut out = Vec::new();
            for y in univariate_roots(&res) {
                for z in univariate_roots(&coeffs_in_last(f1, &[C::one(), y])) {
                    out.push(vec![y, z]);
                }
            }
            out
        }
        _ => {
            let (f1, f2, f3) = (&eqs[0], &eqs[1], &eqs[2]);
            let d12 = (f1.degree() * f2.degree()) as usize;
            let d13 = (f1.degree() * f3.degree()) as usize;
            let in_y = |x: C, g: &HPoly<C>, d: usize| {
                interpolate(d, |y| {
                    sylvester(
                        &coeffs_in_last(f1, &[C::one(), x, y]),
                        &coeffs_in_last(g, &[C::one(), x, y]),
                    )
                })
            };
            let res = interpolate(d12 * d13, |x| sylvester(&in_y(x, f2, d12), &in_y(x, f3, d13)));
            let mut out = Vec::new();
            for x in univariate_roots(&res) {
                for y in univariate_roots(&in_y(x, f2, d12)) {
                    for z in univariate_roots(&coeffs_in_last(f1, &[C::one(), x, y])) {
                        out.push(vec![x, y, z]);
                    }
                }
            }
            out
        }
    }
}

/// Newton's method on the square dehomogenized system.
fn newton_affine(eqs: &[HPoly<C>], jac: &[Vec<HPoly<C>>], u0: Vec<C>, iters: usize) -> Option<Vec<C>> {
    let n = u0.len();
    let mut u = u0;
    if n == 0 {
        return Some(u);
    }
    for _ in 0..iters {
        let x = chart(&u);
        let f = DVector::from_iterator(n, eqs.iter().map(|g| g.evaluate(&x).expect("arity")));
        let j = DMatrix::from_fn(n, n, |i, k| jac[i][k].evaluate(&x).expect("arity"));
        let step = j.lu().solve(&(-f))?;
        let size = step.norm();
        for (ui, si) in u.iter_mut().zip(step.iter()) {
            *ui += si;
        }
        if !size.is_finite() {
            return None;
        }
        let scale = 1.0 + u.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if size <= 1e-15 * scale {
            break;
        }
    }
    u.iter().all(|c| c.re.is_finite() && c.im.is_finite()).then_some(u)
}

/// A generator, its coefficient scale and its partials.
type Generator<'a> = (&'a HPoly<C>, f64, Vec<HPoly<C>>);

/// Gauss-Newton on the original generators, restricted to the slice.
struct Polisher<'a> {
    gens: Vec<Generator<'a>>,
    /// Rows cutting out the slice: `(I - T T^H) x = 0`.
    projector: DMatrix<C>,
    /// `chart . x = 1`.
    chart_row: Vec<C>,
}

impl<'a> Polisher<'a> {
    fn new(v: &'a HSystem<C>, t: &DMatrix<C>) -> Self {
        let n = t.nrows();
        let gens = v
            .polys()
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| {
                let grads = (0..n).map(|j| p.partial(j).expect("index")).collect();
                (p, 1.0 / p.l1_norm(), grads)
            })
            .collect();
        let projector = DMatrix::<C>::identity(n, n) - t * t.adjoint();
        let chart_row = (0..n).map(|j| t[(j, 0)].conj()).collect();
        Self {
            gens,
            projector,
            chart_row,
        }
    }

    fn polish(&self, mut x: Vec<C>, iters: usize) -> Vec<C> {
        let n = x.len();
        let rows = self.gens.len() + n + 1;
        for _ in 0..iters {
            let mut r = DVector::<C>::zeros(rows);
            let mut j = DMatrix::<C>::zeros(rows, n);
            for (i, (p, w, grads)) in self.gens.iter().enumerate() {
                r[i] = p.evaluate(&x).expect("arity") * *w;
                for k in 0..n {
                    j[(i, k)] = grads[k].evaluate(&x).expect("arity") * *w;
                }
            }
            let off = self.gens.len();
            let xv = DVector::from_column_slice(&x);
            let px = &self.projector * &xv;
            for i in 0..n {
                r[off + i] = px[i];
                for k in 0..n {
                    j[(off + i, k)] = self.projector[(i, k)];
                }
            }
            let c: C = self.chart_row.iter().zip(&x).map(|(a, b)| a * b).sum();
            r[rows - 1] = c - C::one();
            for k in 0..n {
                j[(rows - 1, k)] = self.chart_row[k];
            }
            let Ok(step) = j.svd(true, true).solve(&(-r), 1e-13) else {
                break;
            };
            let size = step.norm();
            for (xi, si) in x.iter_mut().zip(step.iter()) {
                *xi += si;
            }
            let scale = 1.0 + x.iter().map(|c| c.norm()).fold(0.0, f64::max);
            if !(size > 1e-15 * scale) {
                break;
            }
        }
        x
    }
}

/// Sine of the angle between two complex lines.
pub fn projective_distance(a: &[C], b: &[C]) -> f64 {
    let na: f64 = a.iter().map(|c| c.norm_sqr()).sum();
    let nb: f64 = b.iter().map(|c| c.norm_sqr()).sum();
    let ip: C = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    (1.0 - ip.norm_sqr() / (na * nb)).max(0.0).sqrt()
}

/// Dimension left after removing the generators: `r - #nonzero generators`.
pub fn expected_dimension(v: &HSystem<C>) -> i64 {
    v.ambient() as i64 - v.polys().iter().filter(|p| !p.is_zero()).count() as i64
}

/// Solves one random slice of `v`, returning every solution that survives
/// Newton refinement, deduplicated.
pub fn solve_all(v: &HSystem<C>, cfg: &SliceConfig) -> Result<Solutions, PlanesError> {
    let n = v.ambient() + 1;
    let mut r = rng(cfg.seed);
    if v.polys().iter().any(|p| p.degree() == 0 && !p.is_zero()) {
        return Err(PlanesError::NoConvergence {
            attempts: 0,
            detail: "nonzero constant generator".into(),
        });
    }
    let lin: Vec<Vec<C>> = v
        .polys()
        .iter()
        .filter(|p| p.degree() == 1 && !p.is_zero())
        .map(linear_row)
        .collect();
    let b = kernel(&lin, n);
    if b.ncols() == 0 {
        return Err(PlanesError::Dimension { expected: -1 });
    }
    let images = images_of(&b);
    let mut eqs = Vec::new();
    for p in v.polys().iter().filter(|p| p.degree() >= 2 && !p.is_zero()) {
        let g = p.substitute_linear(&images)?;
        if g.l1_norm() > 1e-10 * p.l1_norm() {
            eqs.push(g);
        }
    }
    let m = b.ncols();
    let dim = m as i64 - 1 - eqs.len() as i64;
    if dim < 0 {
        return Err(PlanesError::Dimension { expected: dim });
    }
    if eqs.len() > MAX_NONLINEAR {
        return Err(PlanesError::TooManyNonlinear { count: eqs.len() });
    }
    let degree: u64 = eqs.iter().map(|g| u64::from(g.degree())).product();
    if degree > DEGREE_CAP {
        return Err(PlanesError::DegreeCap { degree });
    }
    // slice down to P^N, then rotate the chart randomly
    let slices: Vec<Vec<C>> = (0..dim)
        .map(|_| (0..m).map(|_| unit_complex(&mut r)).collect())
        .collect();
    let k2 = kernel(&slices, m);
    let mut points: Vec<PPoint<C>> = Vec::new();
    let mut residuals = Vec::new();
    let mut total = 0;
    // the solution set depends only on the slice; fresh charts recover roots
    // that one chart's resultant conditioned badly
    for _ in 0..CHARTS {
        let q = random_unitary(&mut r, k2.ncols());
        let local = &k2 * &q;
        let t = &b * &local;
        let local_images = images_of(&local);
        // unit l1 norm, so nested resultants of small restrictions don't underflow
        let mut reduced: Vec<HPoly<C>> = eqs
            .iter()
            .map(|g| {
                g.substitute_linear(&local_images).map(|h| match h.l1_norm() {
                    n if n > 0.0 => h.scale(&C::from(1.0 / n)),
                    _ => h,
                })
            })
            .collect::<Result<_, _>>()?;
        reduced.sort_by_key(HPoly::degree);
        let jac: Vec<Vec<HPoly<C>>> = reduced
            .iter()
            .map(|g| (1..=reduced.len()).map(|j| g.partial(j).expect("index")).collect())
            .collect();
        let raw = candidates(&reduced);
        total += raw.len();
        let polisher = Polisher::new(v, &t);
        for u0 in &raw {
            let Some(u) = newton_affine(&reduced, &jac, u0.clone(), cfg.newton_iters) else {
                continue;
            };
            let u1 = DVector::from_vec(chart(&u));
            let x0: Vec<C> = (&t * u1).iter().copied().collect();
            let x = polisher.polish(x0, 8);
            let Ok(p) = PPoint::new(x) else { continue };
            let res = v.max_residual(p.coords())?;
            if !(res <= cfg.residual_tol) {
                continue;
            }
            if points
                .iter()
                .any(|q| projective_distance(q.coords(), p.coords()) < CLUSTER_TOL)
            {
                continue;
            }
            points.push(p);
            residuals.push(res);
        }
        if points.len() as u64 >= degree {
            break;
        }
    }
    Ok(Solutions {
        points,
        residuals,
        degree,
        candidates: total,
        seed: cfg.seed,
    })
}

/// A point of `v` satisfying `accept`, resampling the slice on failure.
pub fn find_point_where(
    v: &HSystem<C>,
    cfg: &SliceConfig,
    accept: impl Fn(&PPoint<C>) -> bool,
) -> Result<Found, PlanesError> {
    let mut last = String::from("no solutions");
    for attempt in 0..ATTEMPTS {
        let c = if attempt == 0 { *cfg } else { cfg.derive(attempt) };
        match solve_all(v, &c) {
            Ok(sol) => {
                let mut order: Vec<usize> = (0..sol.points.len()).collect();
                order.sort_by(|&a, &b| sol.residuals[a].total_cmp(&sol.residuals[b]));
                if let Some(&i) = order.iter().find(|&&i| accept(&sol.points[i])) {
                    return Ok(Found {
                        point: sol.points[i].clone(),
                        residual: sol.residuals[i],
                        degree: sol.degree,
                    });
                }
                last = format!(
                    "{} of {} expected solutions converged, none accepted",
                    sol.points.len(),
                    sol.degree
                );
            }
            Err(
                e @ (PlanesError::Dimension { .. }
                | PlanesError::DegreeCap { .. }
                | PlanesError::TooManyNonlinear { .. }),
            ) => return Err(e),
            Err(e) => last = e.to_string(),
        }
    }
    Err(PlanesError::NoConvergence {
        attempts: ATTEMPTS,
        detail: last,
    })
}

/// A point of `v` with residual at most `cfg.residual_tol`.
pub fn find_point(v: &HSystem<C>, cfg: &SliceConfig) -> Result<PPoint<C>, PlanesError> {
    find_point_where(v, cfg, |_| true).map(|f| f.point)
}

/// A point of `v` off the span of `avoid`.
pub fn find_point_off_span(v: &HSystem<C>, cfg: &SliceConfig, avoid: &[PPoint<C>]) -> Result<Found, PlanesError> {
    let base: Vec<Vec<C>> = avoid.iter().map(|p| p.coords().to_vec()).collect();
    find_point_where(v, cfg, |p| {
        let mut rows = base.clone();
        rows.push(p.coords().to_vec());
        C::rank(&rows) == rows.len()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::complex_form;

    fn system(seed: u64, n: usize, degrees: &[u32]) -> HSystem<C> {
        let mut r = rng(seed);
        let polys = degrees.iter().map(|&d| complex_form(&mut r, n, d)).collect();
        HSystem::new(n - 1, polys).unwrap()
    }

    #[test]
    fn interpolation_is_exact_for_low_degree() {
        let c = interpolate(3, |z| C::new(2.0, 0.0) + z * z * C::new(0.0, 1.0) - z * z * z);
        assert!((c[0] - C::new(2.0, 0.0)).norm() < 1e-14);
        assert!((c[2] - C::new(0.0, 1.0)).norm() < 1e-14);
        assert!((c[3] + C::one()).norm() < 1e-14);
    }

    #[test]
    fn sylvester_detects_common_root() {
        // (t - 1)(t - 2) and (t - 2)(t + 5)
        let a = [C::new(2.0, 0.0), C::new(-3.0, 0.0), C::one()];
        let b = [C::new(-10.0, 0.0), C::new(3.0, 0.0), C::one()];
        assert!(sylvester(&a, &b).norm() < 1e-10);
        let c = [C::new(-3.0, 0.0), C::new(-2.0, 0.0), C::one()];
        assert!(sylvester(&a, &c).norm() > 1.0);
    }

    #[test]
    fn quadric_point() {
        let v = system(1, 4, &[2]);
        let p = find_point(&v, &SliceConfig::with_seed(3)).unwrap();
        assert!(v.max_residual(p.coords()).unwrap() < 1e-12);
    }

    #[test]
    fn full_solution_counts() {
        for (seed, degrees, n) in [
            (2u64, vec![1, 2, 3], 4usize),
            (3, vec![2, 2], 3),
            (4, vec![2, 2, 2], 4),
            (5, vec![2, 2, 3], 5),
        ] {
            let v = system(seed, n, &degrees);
            let sol = solve_all(&v, &SliceConfig::with_seed(seed)).unwrap();
            assert_eq!(sol.points.len() as u64, sol.degree, "degrees {degrees:?}");
            assert!(sol.residuals.iter().all(|&r| r < 1e-10));
        }
    }

    #[test]
    fn rejects_overdetermined_and_oversized() {
        let v = system(6, 3, &[2, 2, 2]);
        assert!(matches!(
            find_point(&v, &SliceConfig::default()),
            Err(PlanesError::Dimension { .. })
        ));
        let big = system(7, 6, &[3, 3, 3, 3]);
        assert!(matches!(
            find_point(&big, &SliceConfig::default()),
            Err(PlanesError::TooManyNonlinear { .. })
        ));
        let heavy = system(8, 5, &[4, 4, 5]);
        assert!(matches!(
            find_point(&heavy, &SliceConfig::default()),
            Err(PlanesError::DegreeCap { degree: 80 })
        ));
    }
}
