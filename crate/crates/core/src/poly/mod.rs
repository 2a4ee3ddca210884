//! Sparse homogeneous polynomials in `x_0..x_r` and their polars.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration order and
//! rendering are canonical. Every stored exponent vector sums to the degree and
//! no stored coefficient is zero.

mod field;
mod point;
mod text;

pub use field::{normalized_singular_values, Field, FieldTag, SPAN_TOL};
pub use point::PPoint;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exact_core::{binom_u, factorial};

/// Default relative tolerance for complex zero tests.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("expected {expected} coordinates or variables, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("degree mismatch: {left} vs {right}")]
    Degree { left: u32, right: u32 },
    #[error("term {exps:?} does not have degree {degree}")]
    NotHomogeneous { exps: Vec<u32>, degree: u32 },
    #[error("variable index {index} out of range for {nvars} variables")]
    Index { index: usize, nvars: usize },
    #[error("polar order {k} exceeds degree {d}")]
    PolarOrder { k: u32, d: u32 },
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("point has vanishing first coordinate, cannot take the affine representative")]
    NotAffine,
    #[error("points span a space of rank {rank}, expected {expected}")]
    Dependent { rank: usize, expected: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Homogeneous polynomial of a fixed degree in `nvars` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct HPoly<F: Field> {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, F>,
}

impl<F: Field> HPoly<F> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Self {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from terms; repeated exponents are summed.
    pub fn from_terms(
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, F)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(nvars, degree);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(PolyError::Arity {
                    expected: nvars,
                    got: exps.len(),
                });
            }
            if exps.iter().sum::<u32>() != degree {
                return Err(PolyError::NotHomogeneous { exps, degree });
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars, 0);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The coordinate function `x_j`.
    pub fn var(nvars: usize, j: usize) -> Result<Self, PolyError> {
        if j >= nvars {
            return Err(PolyError::Index { index: j, nvars });
        }
        let mut e = vec![0; nvars];
        e[j] = 1;
        let mut p = Self::zero(nvars, 1);
        p.add_term(e, F::one());
        Ok(p)
    }

    /// The linear form `sum_j c_j x_j`.
    pub fn linear(coeffs: &[F]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n, 1);
        for (j, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic, ascending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    /// Sum of coefficient moduli.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(Field::modulus).sum()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> HPoly<G> {
        let mut p = HPoly::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    pub fn to_complex(&self) -> HPoly<num_complex::Complex64> {
        self.map(Field::to_complex)
    }

    fn same_shape(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::Arity {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        if self.degree != other.degree {
            return Err(PolyError::Degree {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_shape(other)?;
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut p = Self::zero(self.nvars, self.degree);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v.clone() * c.clone());
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::Arity {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        let mut p = Self::zero(self.nvars, self.degree + other.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(p)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, F::one());
        for _ in 0..e {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    fn check_len(&self, v: &[F]) -> Result<(), PolyError> {
        if v.len() != self.nvars {
            return Err(PolyError::Arity {
                expected: self.nvars,
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, v: &[F]) -> Result<F, PolyError> {
        self.check_len(v)?;
        let powers = power_table(v, self.degree);
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (j, &a) in e.iter().enumerate() {
                if a > 0 {
                    t = t * powers[j][a as usize].clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Scale-aware residual `|f(v)| / (1 + |f|_1 |v|_inf^d)`.
    pub fn residual(&self, v: &[F]) -> Result<f64, PolyError> {
        let val = self.evaluate(v)?.modulus();
        let vmax = v.iter().map(Field::modulus).fold(0.0, f64::max);
        Ok(val / (1.0 + self.l1_norm() * vmax.powi(self.degree as i32)))
    }

    /// `f(v) = 0` exactly, or within `tol` in the residual sense.
    pub fn vanishes_at(&self, v: &[F], tol: f64) -> Result<bool, PolyError> {
        match F::TAG {
            FieldTag::ExactRational => Ok(self.evaluate(v)?.is_zero()),
            FieldTag::ComplexDouble => Ok(self.residual(v)? <= tol),
        }
    }

    pub fn partial(&self, j: usize) -> Result<Self, PolyError> {
        if j >= self.nvars {
            return Err(PolyError::Index {
                index: j,
                nvars: self.nvars,
            });
        }
        let mut p = Self::zero(self.nvars, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[j] -= 1;
            p.add_term(e2, c.clone() * F::from_i64(i64::from(e[j])));
        }
        Ok(p)
    }

    /// The `k`-th polar `t(k, f, P)`, a form of degree `d - k` in the same variables.
    ///
    /// `t(k,f,P)(y) = (d-k)! * sum_{|i| = d-k} (1/i!) (d^i f)(P) y^i`. Per term
    /// `c x^a` this is `c * sum_{i <= a} prod_j C(a_j, i_j) P^(a-i) y^i`, so no
    /// derivative is ever formed explicitly.
    pub fn polar(&self, p: &[F], k: u32) -> Result<Self, PolyError> {
        self.check_len(p)?;
        if k > self.degree {
            return Err(PolyError::PolarOrder { k, d: self.degree });
        }
        let m = self.degree - k;
        let powers = power_table(p, self.degree);
        let weight = F::from_natural(&factorial(u64::from(m)));
        let mut out = Self::zero(self.nvars, m);
        let mut i = vec![0u32; self.nvars];
        for (a, c) in &self.terms {
            sub_multi_indices(a, m, 0, &mut i, &mut |i| {
                let mut t = c.clone() * weight.clone();
                for j in 0..a.len() {
                    let rest = a[j] - i[j];
                    if i[j] > 0 && i[j] < a[j] {
                        t = t * F::from_natural(&binom_u(u64::from(a[j]), u64::from(i[j])));
                    }
                    if rest > 0 {
                        t = t * powers[j][rest as usize].clone();
                    }
                }
                out.add_term(i.to_vec(), t);
            });
        }
        Ok(out)
    }

    /// Substitutes `x_j = sum_i images[j][i] s_i`, giving a form in `s_0..s_{m-1}`.
    pub fn substitute_linear(&self, images: &[Vec<F>]) -> Result<Self, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::Arity {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let m = images.first().map_or(0, Vec::len);
        if let Some(bad) = images.iter().find(|r| r.len() != m) {
            return Err(PolyError::Arity {
                expected: m,
                got: bad.len(),
            });
        }
        let forms: Vec<Self> = images.iter().map(|r| Self::linear(r)).collect();
        let mut cache: BTreeMap<(usize, u32), Self> = BTreeMap::new();
        let mut out = Self::zero(m, self.degree);
        for (e, c) in &self.terms {
            let mut t = Self::constant(m, c.clone());
            for (j, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let pw = cache.entry((j, a)).or_insert_with(|| forms[j].pow(a));
                t = t.mul(pw)?;
            }
            for (e2, c2) in t.terms {
                out.add_term(e2, c2);
            }
        }
        Ok(out)
    }

    /// Restriction to the span of the given points, as a form in one
    /// parameter per point.
    ///
    /// The result vanishes identically iff the spanned linear space lies on
    /// the hypersurface.
    pub fn restrict_to_span(&self, points: &[Vec<F>]) -> Result<Self, PolyError> {
        for p in points {
            self.check_len(p)?;
        }
        let rank = F::rank(points);
        if rank != points.len() {
            return Err(PolyError::Dependent {
                rank,
                expected: points.len(),
            });
        }
        let images: Vec<Vec<F>> = (0..self.nvars)
            .map(|j| points.iter().map(|p| p[j].clone()).collect())
            .collect();
        self.substitute_linear(&images)
    }

    /// Checks `f(lP + mQ) = f(lP) + f(mQ) + sum_{k=1}^{d-1} (1/k!) t(d-k, f, lP)(mQ)`
    /// on the affine representatives of `P` and `Q`.
    pub fn technical_identity_check(&self, p: &[F], q: &[F], lambda: &F, mu: &F) -> Result<bool, PolyError> {
        self.check_len(p)?;
        self.check_len(q)?;
        if !(p[0] == F::one() && q[0] == F::one()) {
            return Err(PolyError::NotAffine);
        }
        let lp: Vec<F> = p.iter().map(|c| c.clone() * lambda.clone()).collect();
        let mq: Vec<F> = q.iter().map(|c| c.clone() * mu.clone()).collect();
        let r: Vec<F> = lp.iter().zip(&mq).map(|(a, b)| a.clone() + b.clone()).collect();
        let lhs = self.evaluate(&r)?;
        let mut rhs = self.evaluate(&lp)? + self.evaluate(&mq)?;
        for k in 1..self.degree {
            let t = self.polar(&lp, self.degree - k)?.evaluate(&mq)?;
            rhs = rhs + t / F::from_natural(&factorial(u64::from(k)));
        }
        let scale = 1.0 + lhs.modulus() + rhs.modulus();
        Ok(F::close(&lhs, &rhs, DEFAULT_TOL, scale))
    }
}

/// `powers[j][e] = v_j^e` for `e <= max`.
fn power_table<F: Field>(v: &[F], max: u32) -> Vec<Vec<F>> {
    v.iter()
        .map(|x| {
            let mut row = Vec::with_capacity(max as usize + 1);
            row.push(F::one());
            for e in 1..=max as usize {
                row.push(row[e - 1].clone() * x.clone());
            }
            row
        })
        .collect()
}

/// Calls `f` on every `i <= a` (componentwise) with `|i| = m`.
fn sub_multi_indices(a: &[u32], m: u32, pos: usize, i: &mut [u32], f: &mut impl FnMut(&[u32])) {
    if pos == a.len() {
        if m == 0 {
            f(i);
        }
        return;
    }
    let tail: u32 = a[pos + 1..].iter().sum();
    let lo = m.saturating_sub(tail);
    for v in lo..=a[pos].min(m) {
        i[pos] = v;
        sub_multi_indices(a, m - v, pos + 1, i, f);
    }
    i[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::Rational;
    use num_complex::Complex64;
    use num_traits::Zero;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn parse(s: &str) -> HPoly<Rational> {
        s.parse().unwrap()
    }

    #[test]
    fn evaluate_and_partials() {
        let f = parse("1*x0^2*x1^0");
        assert_eq!(f.evaluate(&[q(3), q(7)]).unwrap(), q(9));
        let g = parse("1*x0^1*x1^1*x2^1");
        assert_eq!(g.partial(1).unwrap(), parse("1*x0^1*x1^0*x2^1"));
        let c = parse("1*x0^3");
        assert_eq!(c.partial(0).unwrap(), parse("3*x0^2"));
        assert!(HPoly::<Rational>::zero(3, 2)
            .evaluate(&[q(1), q(2), q(3)])
            .unwrap()
            .is_zero());
        assert!(matches!(f.evaluate(&[q(1)]), Err(PolyError::Arity { .. })));
    }

    #[test]
    fn tangent_hyperplane() {
        let f = parse("1*x0^2*x1^0*x2^0 + 1*x0^0*x1^2*x2^0 - 2*x0^0*x1^0*x2^2");
        let t = f.polar(&[q(1), q(1), q(1)], 1).unwrap();
        assert_eq!(t, parse("2*x0^1*x1^0*x2^0 + 2*x0^0*x1^1*x2^0 - 4*x0^0*x1^0*x2^1"));
    }

    #[test]
    fn polar_of_product() {
        // t(1, x0 x1, [1:p]) = p y0 + y1
        let f = parse("1*x0^1*x1^1");
        let p = Rational::new(3.into(), 5.into());
        let t = f.polar(&[q(1), p.clone()], 1).unwrap();
        assert_eq!(t.coeff(&[1, 0]), p);
        assert_eq!(t.coeff(&[0, 1]), q(1));
    }

    #[test]
    fn polar_extremes() {
        let f = parse("2*x0^2*x1^1 - 1/3*x0^0*x1^3 + 5*x0^1*x1^2");
        let p = [q(2), q(-1)];
        assert_eq!(f.polar(&p, 0).unwrap(), f.scale(&q(6)));
        let top = f.polar(&p, 3).unwrap();
        assert_eq!(top.coeff(&[0, 0]), f.evaluate(&p).unwrap());
        assert!(f.polar(&p, 4).is_err());
    }

    #[test]
    fn technical_identity_small() {
        let f = parse("1*x0^1*x1^1");
        let (p, qq) = ([q(1), q(2)], [q(1), q(-5)]);
        assert!(f.technical_identity_check(&p, &qq, &q(3), &q(7)).unwrap());
        let lin = parse("4*x0^1*x1^0 - 1*x0^0*x1^1");
        assert!(lin.technical_identity_check(&p, &qq, &q(-2), &q(9)).unwrap());
        assert_eq!(
            f.technical_identity_check(&[q(0), q(1)], &qq, &q(1), &q(1)),
            Err(PolyError::NotAffine)
        );
    }

    #[test]
    fn restriction() {
        let plane = parse("1*x0^1*x1^0 + 1*x0^0*x1^1");
        assert!(plane.restrict_to_span(&[vec![q(1), q(-1)]]).unwrap().is_zero());
        let fermat =
            parse("1*x0^3*x1^0*x2^0*x3^0 + 1*x0^0*x1^3*x2^0*x3^0 + 1*x0^0*x1^0*x2^3*x3^0 + 1*x0^0*x1^0*x2^0*x3^3");
        let pts = vec![vec![q(1), q(-1), q(0), q(0)], vec![q(0), q(0), q(1), q(-1)]];
        assert!(fermat.restrict_to_span(&pts).unwrap().is_zero());
        let dup = vec![pts[0].clone(), pts[0].clone()];
        assert!(matches!(
            fermat.restrict_to_span(&dup),
            Err(PolyError::Dependent { .. })
        ));
    }

    #[test]
    fn complex_partial_matches_finite_difference() {
        let f = parse("3*x0^3*x1^0*x2^0 - 2*x0^1*x1^1*x2^1 + 1/2*x0^0*x1^2*x2^1").to_complex();
        let v = [
            Complex64::new(0.3, -0.2),
            Complex64::new(1.1, 0.4),
            Complex64::new(-0.7, 0.9),
        ];
        for j in 0..3 {
            let h = 1e-5;
            let mut a = v;
            let mut b = v;
            a[j] += h;
            b[j] -= h;
            let fd = (f.evaluate(&a).unwrap() - f.evaluate(&b).unwrap()) / (2.0 * h);
            let exact = f.partial(j).unwrap().evaluate(&v).unwrap();
            assert!((fd - exact).norm() <= 1e-6 * exact.norm().max(1.0));
        }
    }
}
