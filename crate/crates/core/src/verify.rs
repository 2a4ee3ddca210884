//! Seeded randomized suites for the polar identities and Bertini's lemma.

use num_complex::Complex64 as C;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact_core::Rational;
use crate::planes::{find_point_off_span, SliceConfig};
use crate::polar::{cone_system, contains_plane, HSystem, PolarError};
use crate::poly::{HPoly, PPoint};
use crate::sample::{complex_form, rational_form, rng, small_rational, through_point};

/// Tolerance for line containment on numerically found cone points.
pub const BERTINI_TOL: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    /// Trials run over the rationals (the rest are complex).
    pub exact: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.passed == self.trials
    }

    fn collect(suite: &str, seed: u64, results: Vec<(bool, Result<(), String>)>) -> Self {
        let trials = results.len();
        let exact = results.iter().filter(|(e, _)| *e).count();
        let failures: Vec<Failure> = results
            .into_iter()
            .enumerate()
            .filter_map(|(trial, (_, r))| r.err().map(|detail| Failure { trial, detail }))
            .collect();
        Self {
            suite: suite.into(),
            seed,
            trials,
            passed: trials - failures.len(),
            exact,
            failures,
        }
    }
}

fn trial_seed(seed: u64, i: usize) -> u64 {
    SliceConfig::with_seed(seed).derive(i as u64).seed
}

fn affine_point<R: Rng>(r: &mut R, n: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = (0..n).map(|_| small_rational(r)).collect();
    v[0] = Rational::one();
    v
}

/// Random exact instances of the polar expansion of `f(lP + mQ)`, with
/// `d <= 5` and `r <= 4`.
pub fn technical_identity_suite(trials: usize, seed: u64) -> SuiteReport {
    let results = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(trial_seed(seed, i));
            let d = r.gen_range(1..=5u32);
            let n = r.gen_range(2..=5usize);
            let f = rational_form(&mut r, n, d, 0.6);
            let (p, q) = (affine_point(&mut r, n), affine_point(&mut r, n));
            let (l, m) = (small_rational(&mut r), small_rational(&mut r));
            let out = match f.technical_identity_check(&p, &q, &l, &m) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("identity fails for d = {d}, f = {f}")),
                Err(e) => Err(e.to_string()),
            };
            (true, out)
        })
        .collect();
    SuiteReport::collect("polar-identity", seed, results)
}

/// Gauss-Jordan inverse of a square rational matrix, `None` if singular.
fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, piv);
        let inv = Rational::one() / m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in 0..2 * n {
                    let t = m[col][j].clone() * factor.clone();
                    m[i][j] = m[i][j].clone() - t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A random hypersurface containing the line through `P = A e_0` and
/// `Q = A e_1`, for a random invertible rational `A`.
fn exact_instance<R: Rng>(r: &mut R, n: usize, d: u32) -> (HSystem<Rational>, PPoint<Rational>, PPoint<Rational>) {
    let f = rational_form(r, n, d, 0.5);
    // drop x_0^a x_1^b so the line {x_2 = .. = x_r = 0} lies on V(f)
    let terms: Vec<(Vec<u32>, Rational)> = f
        .terms()
        .filter(|(e, _)| e[2..].iter().any(|&x| x > 0))
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect();
    let mut f = HPoly::from_terms(n, d, terms).expect("same shape");
    if f.is_zero() {
        let mut e = vec![0; n];
        e[0] = d - 1;
        e[2] = 1;
        f = HPoly::from_terms(n, d, vec![(e, Rational::one())]).expect("monomial");
    }
    let (a, inv) = loop {
        let a: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| small_rational(r)).collect()).collect();
        if let Some(inv) = invert(&a) {
            break (a, inv);
        }
    };
    // g(y) = f(A^{-1} y) vanishes on A(line)
    let images: Vec<Vec<Rational>> = inv;
    let g = f.substitute_linear(&images).expect("square change of coordinates");
    let col = |j: usize| PPoint::new(a.iter().map(|row| row[j].clone()).collect()).expect("invertible");
    (HSystem::new(n - 1, vec![g]).expect("arity"), col(0), col(1))
}

fn exact_trial<R: Rng>(r: &mut R) -> Result<(), String> {
    let n = r.gen_range(4..=7usize);
    let d = r.gen_range(2..=3u32);
    let (v, p, q) = exact_instance(r, n, d);
    let cone = cone_system(&v, &p, 0.0).map_err(|e| e.to_string())?;
    if !cone.contains_point(q.coords(), 0.0).map_err(|e| e.to_string())? {
        return Err(format!("Q not on the exact cone (d = {d}, r = {})", n - 1));
    }
    match contains_plane(&v, &[p, q], 0.0) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("exact line not on V (d = {d}, r = {})", n - 1)),
        Err(e) => Err(e.to_string()),
    }
}

fn complex_trial<R: Rng>(r: &mut R, seed: u64) -> Result<(), String> {
    let n = r.gen_range(4..=7usize);
    // one or two hypersurfaces of degree <= 3, small enough to solve the cone
    let degrees: Vec<u32> = match n {
        4 | 5 => vec![r.gen_range(2..=3)],
        _ => vec![2, r.gen_range(2..=3)],
    };
    let mut p: Vec<C> = crate::sample::complex_vector(r, n);
    p[0] = C::one();
    let polys: Vec<HPoly<C>> = degrees
        .iter()
        .map(|&d| through_point(&complex_form(r, n, d), &p))
        .collect();
    let v = HSystem::new(n - 1, polys).map_err(|e| e.to_string())?;
    let p = PPoint::new(p).map_err(|e| e.to_string())?;
    let cone = cone_system(&v, &p, BERTINI_TOL).map_err(|e| e.to_string())?;
    let found = find_point_off_span(&cone, &SliceConfig::with_seed(seed), std::slice::from_ref(&p))
        .map_err(|e| e.to_string())?;
    match contains_plane(&v, &[p, found.point], BERTINI_TOL) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!(
            "line through cone point not on V (degrees {degrees:?}, r = {})",
            n - 1
        )),
        Err(e) => Err(e.to_string()),
    }
}

/// Lines through a cone point lie on `V`: alternating exact instances with a
/// planted line and complex instances where `Q` is solved for on the cone.
/// The Fermat cubic line is always checked as an extra trial.
pub fn bertini_suite(trials: usize, seed: u64) -> SuiteReport {
    let mut results: Vec<(bool, Result<(), String>)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(seed, i);
            let mut r = rng(s);
            if i % 2 == 0 {
                (true, exact_trial(&mut r))
            } else {
                (false, complex_trial(&mut r, s))
            }
        })
        .collect();
    let fermat = match fermat_line() {
        Ok(true) => Ok(()),
        Ok(false) => Err("Fermat line not certified".to_string()),
        Err(e) => Err(e.to_string()),
    };
    results.push((true, fermat));
    SuiteReport::collect("bertini", seed, results)
}

/// The line `[s:-s:t:-t]` on the Fermat cubic surface, certified exactly.
pub fn fermat_line() -> Result<bool, PolarError> {
    let f: HPoly<Rational> = "x0^3 + x1^3 + x2^3 + x3^3".parse()?;
    let v = HSystem::new(3, vec![f])?;
    let pt = |c: [i64; 4]| PPoint::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect());
    let (p, q) = (pt([1, -1, 0, 0])?, pt([0, 0, 1, -1])?);
    let cone = cone_system(&v, &p, 0.0)?;
    Ok(cone.contains_point(q.coords(), 0.0)? && contains_plane(&v, &[p, q], 0.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_suite_small() {
        let r = technical_identity_suite(60, 5);
        assert!(r.ok(), "{:?}", r.failures);
    }

    #[test]
    fn bertini_small() {
        let r = bertini_suite(20, 5);
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!(r.trials, 21);
        assert_eq!(r.exact, 11);
    }

    #[test]
    fn inverse() {
        let q = |n: i64| Rational::from_integer(n.into());
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        assert_eq!(invert(&a).unwrap(), vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert!(invert(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn fermat() {
        assert!(fermat_line().unwrap());
    }
}
