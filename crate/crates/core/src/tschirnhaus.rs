//! Tschirnhaus hypersurfaces `b_m(w) = 0` for a specialized monic polynomial.
//!
//! With `M` the companion matrix of `p` and `W(w) = sum_j w_j M^j`, the
//! transformed polynomial is the characteristic polynomial
//! `z^n + b_1(w) z^{n-1} + ... + b_n(w)` of `W(w)`. The `b_m` come from the
//! power traces `tr(W^k)` through Newton's identities; since the powers of `M`
//! commute, `tr(W^k) = sum_{|a| = k} (k!/a!) w^a tr(M^{sum_j j a_j})`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde_json::json;
use thiserror::Error;

use crate::exact_core::{factorial, Rational};
use crate::poly::{Field, HPoly, PolyError};
use crate::sample::{monomials, rng};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TschirnhausError {
    #[error("polynomial degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("m_max = {m_max} outside 1..={limit}")]
    Guard { m_max: usize, limit: usize },
    #[error("w is the zero vector or lies on the excluded w_0-axis")]
    ExcludedLocus,
    #[error("eigenvalue iteration did not converge")]
    Eigenvalues,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Monic `z^n + a_1 z^{n-1} + ... + a_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralPoly<F: Field> {
    /// `a_1..a_n`.
    pub a: Vec<F>,
}

impl<F: Field> GeneralPoly<F> {
    pub fn new(a: Vec<F>) -> Self {
        Self { a }
    }

    pub fn degree(&self) -> usize {
        self.a.len()
    }

    /// `prod_i (z - r_i)`.
    pub fn from_roots(roots: &[F]) -> Self {
        // coefficients of the monic product, highest power first
        let mut c = vec![F::one()];
        for r in roots {
            let mut next = c.clone();
            next.push(F::zero());
            for i in 0..c.len() {
                next[i + 1] = next[i + 1].clone() - r.clone() * c[i].clone();
            }
            c = next;
        }
        Self { a: c[1..].to_vec() }
    }

    pub fn evaluate(&self, z: &F) -> F {
        let mut acc = F::one();
        for ai in &self.a {
            acc = acc * z.clone() + ai.clone();
        }
        acc
    }

    /// Power sums `s_0..s_{max}` of the roots, from the coefficients alone.
    pub fn power_sums(&self, max: usize) -> Vec<F> {
        let n = self.a.len();
        let mut s = Vec::with_capacity(max + 1);
        s.push(F::from_i64(n as i64));
        for k in 1..=max {
            let mut acc = if k <= n {
                F::from_i64(k as i64) * self.a[k - 1].clone()
            } else {
                F::zero()
            };
            for i in 1..k.min(n + 1) {
                acc = acc + self.a[i - 1].clone() * s[k - i].clone();
            }
            s.push(-acc);
        }
        s
    }
}

impl GeneralPoly<Rational> {
    /// Monic polynomial with `n` seeded random rational roots in `(-1, 1)`.
    ///
    /// Rational roots keep `tr(M^s)` bounded by `n`, so the `b_m` stay well
    /// scaled for the numerical solvers.
    pub fn random_rooted(n: usize, seed: u64) -> Self {
        let mut r = rng(seed);
        let roots: Vec<Rational> = (0..n)
            .map(|_| {
                let den: i64 = r.gen_range(5..=40);
                let num: i64 = r.gen_range(-(den - 1)..=(den - 1));
                Rational::new(num.into(), den.into())
            })
            .collect();
        Self::from_roots(&roots)
    }
}

/// `n x n` companion matrix: ones below the diagonal, `-a_n, .., -a_1` in the last column.
pub fn companion_matrix<F: Field>(p: &GeneralPoly<F>) -> Result<Vec<Vec<F>>, TschirnhausError> {
    let n = p.degree();
    if n < 2 {
        return Err(TschirnhausError::DegreeTooSmall(n));
    }
    let mut m = vec![vec![F::zero(); n]; n];
    for i in 1..n {
        m[i][i - 1] = F::one();
    }
    for i in 0..n {
        m[i][n - 1] = -p.a[n - 1 - i].clone();
    }
    Ok(m)
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut c = vec![vec![F::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                c[i][j] = c[i][j].clone() + a[i][l].clone() * b[l][j].clone();
            }
        }
    }
    c
}

pub fn trace<F: Field>(a: &[Vec<F>]) -> F {
    a.iter()
        .enumerate()
        .fold(F::zero(), |acc, (i, row)| acc + row[i].clone())
}

/// `b_1..b_{m_max}` in `w_0..w_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TschirnhausSystem<F: Field> {
    pub n: usize,
    pub b: Vec<HPoly<F>>,
}

/// Default symbolic size guard: `m_max <= min(n, 4)`.
pub fn default_limit(n: usize) -> usize {
    n.min(4)
}

/// Builds `b_1..b_{m_max}` under the default size guard.
pub fn build_tschirnhaus<F: Field>(p: &GeneralPoly<F>, m_max: usize) -> Result<TschirnhausSystem<F>, TschirnhausError> {
    build_tschirnhaus_with_limit(p, m_max, default_limit(p.degree()))
}

pub fn build_tschirnhaus_with_limit<F: Field>(
    p: &GeneralPoly<F>,
    m_max: usize,
    limit: usize,
) -> Result<TschirnhausSystem<F>, TschirnhausError> {
    let n = p.degree();
    if n < 2 {
        return Err(TschirnhausError::DegreeTooSmall(n));
    }
    let limit = limit.min(n);
    if m_max == 0 || m_max > limit {
        return Err(TschirnhausError::Guard { m_max, limit });
    }
    let traces = p.power_sums((n - 1) * m_max);
    // power traces P_k = tr(W^k)
    let mut power: Vec<HPoly<F>> = Vec::with_capacity(m_max);
    for k in 1..=m_max as u32 {
        let kf = factorial(u64::from(k));
        let terms = monomials(n, k).into_iter().map(|alpha| {
            let mut denom = crate::exact_core::nat(1);
            let mut weight = 0usize;
            for (j, &a) in alpha.iter().enumerate() {
                denom *= factorial(u64::from(a));
                weight += j * a as usize;
            }
            let multinomial = F::from_natural(&(&kf / &denom));
            (alpha, multinomial * traces[weight].clone())
        });
        power.push(HPoly::from_terms(n, k, terms)?);
    }
    // Newton: m e_m = sum_{i=1}^m (-1)^{i-1} e_{m-i} P_i
    let mut e: Vec<HPoly<F>> = vec![HPoly::constant(n, F::one())];
    for m in 1..=m_max {
        let mut acc = HPoly::zero(n, m as u32);
        for i in 1..=m {
            let t = e[m - i].mul(&power[i - 1])?;
            acc = if i % 2 == 1 { acc.add(&t)? } else { acc.sub(&t)? };
        }
        e.push(acc.scale(&(F::one() / F::from_i64(m as i64))));
    }
    let b = (1..=m_max)
        .map(|m| {
            if m % 2 == 0 {
                e[m].clone()
            } else {
                e[m].scale(&-F::one())
            }
        })
        .collect();
    Ok(TschirnhausSystem { n, b })
}

impl<F: Field> TschirnhausSystem<F> {
    pub fn m_max(&self) -> usize {
        self.b.len()
    }

    /// `b_1(w)..b_{m_max}(w)`.
    pub fn coefficients_at(&self, w: &[F]) -> Result<Vec<F>, PolyError> {
        self.b.iter().map(|b| b.evaluate(w)).collect()
    }

    pub fn to_json(&self, seed: Option<u64>, p: &GeneralPoly<F>) -> serde_json::Value {
        json!({
            "n": self.n,
            "m_max": self.m_max(),
            "seed": seed.map(|s| s.to_string()),
            "coefficients": p.a.iter().map(Field::render).collect::<Vec<_>>(),
            "b": self.b.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

fn on_excluded_locus<F: Field>(w: &[F]) -> bool {
    let top = w.iter().map(Field::modulus).fold(0.0, f64::max);
    if top == 0.0 {
        return true;
    }
    match F::TAG {
        crate::poly::FieldTag::ExactRational => w[1..].iter().all(|c| c.is_zero()),
        crate::poly::FieldTag::ComplexDouble => w[1..].iter().all(|c| c.modulus() <= 1e-12 * top),
    }
}

/// Whether every `b_m` vanishes at `w`, under `poly`'s tolerance rules.
pub fn tau_point_check<F: Field>(system: &TschirnhausSystem<F>, w: &[F], tol: f64) -> Result<bool, TschirnhausError> {
    if w.len() != system.n {
        return Err(PolyError::Arity {
            expected: system.n,
            got: w.len(),
        }
        .into());
    }
    if on_excluded_locus(w) {
        return Err(TschirnhausError::ExcludedLocus);
    }
    for b in &system.b {
        if !b.vanishes_at(w, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn to_complex_matrix<F: Field>(m: &[Vec<F>]) -> DMatrix<Complex64> {
    let n = m.len();
    DMatrix::from_fn(n, n, |i, j| m[i][j].to_complex())
}

/// Eigenvalues of a square complex matrix, or `None` if the entries are not
/// finite or the QR iteration stalls.
pub fn eigenvalues(m: DMatrix<Complex64>) -> Option<Vec<Complex64>> {
    if !m.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        return None;
    }
    let iters = 200 * m.nrows().max(1);
    let t = nalgebra::Schur::try_new(m, f64::EPSILON, iters)?.unpack().1;
    Some((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

/// Roots of `p`, as eigenvalues of its companion matrix.
pub fn roots<F: Field>(p: &GeneralPoly<F>) -> Result<Vec<Complex64>, TschirnhausError> {
    eigenvalues(to_complex_matrix(&companion_matrix(p)?)).ok_or(TschirnhausError::Eigenvalues)
}

/// Coefficients `c_1..c_n` of the characteristic polynomial of `W(w)`,
/// computed numerically from its eigenvalues.
pub fn transformed_coefficients<F: Field>(
    p: &GeneralPoly<F>,
    w: &[Complex64],
) -> Result<Vec<Complex64>, TschirnhausError> {
    let m = to_complex_matrix(&companion_matrix(p)?);
    let n = m.nrows();
    let mut acc = DMatrix::<Complex64>::zeros(n, n);
    let mut pw = DMatrix::<Complex64>::identity(n, n);
    for wj in w {
        acc += &pw * *wj;
        pw = &pw * &m;
    }
    let eig = eigenvalues(acc).ok_or(TschirnhausError::Eigenvalues)?;
    Ok(GeneralPoly::from_roots(&eig).a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{complex_vector, small_rational, unit_complex};
    use num_traits::Zero;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn companion_shape() {
        let p = GeneralPoly::new(vec![q(3), q(5)]);
        let m = companion_matrix(&p).unwrap();
        assert_eq!(m, vec![vec![q(0), q(-5)], vec![q(1), q(-3)]]);
        assert!(companion_matrix(&GeneralPoly::new(vec![q(1)])).is_err());
    }

    #[test]
    fn power_sums_match_matrix_traces() {
        let mut r = rng(11);
        let p = GeneralPoly::new((0..5).map(|_| small_rational(&mut r)).collect());
        let m = companion_matrix(&p).unwrap();
        let sums = p.power_sums(12);
        let mut pw = m.clone();
        for s in 1..=12 {
            assert_eq!(trace(&pw), sums[s], "s = {s}");
            pw = mat_mul(&pw, &m);
        }
    }

    #[test]
    fn b1_is_minus_trace_form() {
        let p = GeneralPoly::new(vec![q(2), q(-1), q(4)]);
        let sys = build_tschirnhaus(&p, 2).unwrap();
        let sums = p.power_sums(2);
        let expect = HPoly::linear(&sums[..3].iter().map(|s| -s.clone()).collect::<Vec<_>>());
        assert_eq!(sys.b[0], expect);
        assert_eq!(sys.b[1].degree(), 2);
    }

    #[test]
    fn homogeneity_of_b() {
        let mut r = rng(5);
        let p = GeneralPoly::new((0..6).map(|_| small_rational(&mut r)).collect());
        let sys = build_tschirnhaus(&p, 4).unwrap();
        let w: Vec<Rational> = (0..6).map(|_| small_rational(&mut r)).collect();
        let c = Rational::new(7.into(), 3.into());
        let cw: Vec<Rational> = w.iter().map(|x| x * &c).collect();
        for (m, b) in sys.b.iter().enumerate() {
            let lhs = b.evaluate(&cw).unwrap();
            let rhs = b.evaluate(&w).unwrap() * num_traits::pow(c.clone(), m + 1);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn root_transport() {
        for seed in 0..10u64 {
            let mut r = rng(seed);
            let n = 5 + (seed as usize % 2);
            let p = GeneralPoly::new(complex_vector(&mut r, n));
            let sys = build_tschirnhaus_with_limit(&p, n, n).unwrap();
            let w = complex_vector(&mut r, n);
            let b = sys.coefficients_at(&w).unwrap();
            let lambdas = roots(&p).unwrap();
            let images: Vec<Complex64> = lambdas
                .iter()
                .map(|l| w.iter().rev().fold(Complex64::zero(), |acc, wj| acc * l + wj))
                .collect();
            let transported = roots(&GeneralPoly::new(b.clone())).unwrap();
            for y in &images {
                let best = transported.iter().map(|t| (t - y).norm()).fold(f64::INFINITY, f64::min);
                assert!(best < 1e-7, "seed {seed}: mismatch {best:e}");
            }
            let charpoly = transformed_coefficients(&p, &w).unwrap();
            for (x, y) in b.iter().zip(&charpoly) {
                assert!((x - y).norm() < 1e-8 * (1.0 + y.norm()));
            }
        }
    }

    #[test]
    fn eigenvalues_are_roots() {
        let mut r = rng(3);
        let p = GeneralPoly::new((0..6).map(|_| unit_complex(&mut r)).collect());
        for z in roots(&p).unwrap() {
            assert!(p.evaluate(&z).norm() < 1e-8);
        }
    }

    #[test]
    fn excluded_axis_and_guard() {
        let p = GeneralPoly::new(vec![q(1), q(0), q(2), q(-1), q(3)]);
        let sys = build_tschirnhaus(&p, 2).unwrap();
        let axis = vec![q(1), q(0), q(0), q(0), q(0)];
        assert_eq!(tau_point_check(&sys, &axis, 0.0), Err(TschirnhausError::ExcludedLocus));
        let w = vec![q(1), q(2), q(0), q(-1), q(1)];
        assert!(!tau_point_check(&sys, &w, 0.0).unwrap());
        assert!(matches!(build_tschirnhaus(&p, 5), Err(TschirnhausError::Guard { .. })));
    }

    #[test]
    fn restriction_to_hyperplane_has_type_123() {
        let p = GeneralPoly::random_rooted(9, 1);
        let sys = build_tschirnhaus(&p, 3).unwrap();
        // hyperplane w_8 = w_1 + w_2 misses [1:0:...:0]; parametrize by w_0..w_7
        let mut images = vec![vec![q(0); 8]; 9];
        for j in 0..8 {
            images[j][j] = q(1);
        }
        images[8][1] = q(1);
        images[8][2] = q(1);
        let degrees: Vec<u32> = sys
            .b
            .iter()
            .map(|b| {
                let r = b.substitute_linear(&images).unwrap();
                assert!(!r.is_zero() && r.nvars() == 8);
                r.degree()
            })
            .collect();
        assert_eq!(degrees, vec![1, 2, 3]);
    }
}
