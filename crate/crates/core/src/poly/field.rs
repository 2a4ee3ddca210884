//! Coefficient fields: exact rationals and complex doubles.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::exact_core::{Natural, Rational};

/// Smallest singular value (relative to the largest) below which complex rows
/// are treated as dependent.
pub const SPAN_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FieldTag {
    ExactRational,
    ComplexDouble,
}

/// The arithmetic a polynomial coefficient needs.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const TAG: FieldTag;

    fn from_natural(n: &Natural) -> Self;

    fn from_i64(v: i64) -> Self;

    /// Absolute value as a double, for scale-aware residuals.
    fn modulus(&self) -> f64;

    fn to_complex(&self) -> Complex64;

    /// Equality for exact fields; `|a - b| <= tol * scale` otherwise.
    fn close(a: &Self, b: &Self, tol: f64, scale: f64) -> bool;

    fn render(&self) -> String;

    fn parse_coeff(s: &str) -> Option<Self>;

    /// Rank of the matrix with the given rows.
    fn rank(rows: &[Vec<Self>]) -> usize;

    /// Index of the coordinate that normalization scales to one.
    fn pivot(coords: &[Self]) -> Option<usize>;
}

impl Field for Rational {
    const TAG: FieldTag = FieldTag::ExactRational;

    fn from_natural(n: &Natural) -> Self {
        Rational::from_integer(BigInt::from(n.clone()))
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn modulus(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn close(a: &Self, b: &Self, _tol: f64, _scale: f64) -> bool {
        a == b
    }

    fn render(&self) -> String {
        self.to_string()
    }

    fn parse_coeff(s: &str) -> Option<Self> {
        Rational::from_str(s.trim()).ok()
    }

    fn rank(rows: &[Vec<Self>]) -> usize {
        let mut m: Vec<Vec<Rational>> = rows.to_vec();
        let ncols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][col].clone();
            for i in (rank + 1)..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let factor = &m[i][col] / &pivot;
                for j in col..ncols {
                    let delta = &factor * &m[rank][j];
                    m[i][j] -= delta;
                }
            }
            rank += 1;
        }
        rank
    }

    fn pivot(coords: &[Self]) -> Option<usize> {
        coords.iter().position(|c| !c.is_zero())
    }
}

impl Field for Complex64 {
    const TAG: FieldTag = FieldTag::ComplexDouble;

    fn from_natural(n: &Natural) -> Self {
        Complex64::new(n.to_f64().unwrap_or(f64::INFINITY), 0.0)
    }

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn close(a: &Self, b: &Self, tol: f64, scale: f64) -> bool {
        (a - b).norm() <= tol * scale
    }

    fn render(&self) -> String {
        format!("({},{})", self.re, self.im)
    }

    fn parse_coeff(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (re, im) = inner.split_once(',')?;
            return Some(Complex64::new(re.trim().parse().ok()?, im.trim().parse().ok()?));
        }
        if let Ok(v) = s.parse::<f64>() {
            return Some(Complex64::new(v, 0.0));
        }
        Rational::parse_coeff(s).map(|q| q.to_complex())
    }

    /// Numerical rank of the row-normalized matrix.
    fn rank(rows: &[Vec<Self>]) -> usize {
        let sv = normalized_singular_values(rows);
        let Some(&top) = sv.first() else { return 0 };
        if top == 0.0 {
            return 0;
        }
        sv.iter().filter(|&&s| s > SPAN_TOL * top).count()
    }

    /// The coordinate of largest modulus; the first one wins ties.
    fn pivot(coords: &[Self]) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, c) in coords.iter().enumerate() {
            let m = c.norm();
            if m > 0.0 && best.map_or(true, |(_, b)| m > b) {
                best = Some((i, m));
            }
        }
        best.map(|(i, _)| i)
    }
}

/// Singular values, descending, of the matrix whose rows are scaled to unit norm.
pub fn normalized_singular_values<F: Field>(rows: &[Vec<F>]) -> Vec<f64> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return Vec::new();
    }
    let mut m = DMatrix::<Complex64>::zeros(nrows, ncols);
    for (i, row) in rows.iter().enumerate() {
        let norm = row.iter().map(|c| c.modulus().powi(2)).sum::<f64>().sqrt();
        let scale = if norm > 0.0 { 1.0 / norm } else { 0.0 };
        for (j, c) in row.iter().enumerate() {
            m[(i, j)] = c.to_complex() * scale;
        }
    }
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn exact_rank() {
        let rows = vec![
            vec![q(1, 1), q(2, 1), q(3, 1)],
            vec![q(2, 1), q(4, 1), q(6, 1)],
            vec![q(0, 1), q(1, 2), q(1, 1)],
        ];
        assert_eq!(Rational::rank(&rows), 2);
        assert_eq!(Rational::pivot(&[q(0, 1), q(-3, 1)]), Some(1));
    }

    #[test]
    fn complex_rank_and_parse() {
        let c = |re: f64| Complex64::new(re, 0.0);
        let rows = vec![vec![c(1.0), c(1.0)], vec![c(1.0), c(1.0 + 1e-12)]];
        assert_eq!(Complex64::rank(&rows), 1);
        assert_eq!(Complex64::parse_coeff("(1.5,-2)"), Some(Complex64::new(1.5, -2.0)));
        assert_eq!(Complex64::parse_coeff("3/4"), Some(c(0.75)));
        let z = Complex64::new(0.1, -1e-300);
        assert_eq!(Complex64::parse_coeff(&z.render()), Some(z));
    }
}
