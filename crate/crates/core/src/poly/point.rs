use serde::{Serialize, Serializer};

use super::{Field, PolyError};

/// A projective point, stored with its pivot coordinate scaled to one.
///
/// Exact points use the first nonzero coordinate as pivot, which makes the
/// representative unique. Complex points use the coordinate of largest
/// modulus, which keeps the representative well conditioned.
#[derive(Clone, Debug, PartialEq)]
pub struct PPoint<F: Field> {
    coords: Vec<F>,
}

impl<F: Field> PPoint<F> {
    pub fn new(coords: Vec<F>) -> Result<Self, PolyError> {
        let p = F::pivot(&coords).ok_or(PolyError::ZeroPoint)?;
        let inv = F::one() / coords[p].clone();
        let mut coords: Vec<F> = coords.into_iter().map(|c| c * inv.clone()).collect();
        coords[p] = F::one();
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// The representative with first coordinate one.
    pub fn affine(&self) -> Result<Vec<F>, PolyError> {
        let c0 = self.coords[0].clone();
        if c0.modulus() == 0.0 || c0.is_zero() {
            return Err(PolyError::NotAffine);
        }
        let inv = F::one() / c0;
        let mut v: Vec<F> = self.coords.iter().map(|c| c.clone() * inv.clone()).collect();
        v[0] = F::one();
        Ok(v)
    }

    /// Whether this point is a multiple of `other`.
    pub fn same_as(&self, other: &Self) -> bool {
        self.coords.len() == other.coords.len() && F::rank(&[self.coords.clone(), other.coords.clone()]) < 2
    }
}

impl<F: Field> Serialize for PPoint<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(Field::render))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::Rational;
    use num_complex::Complex64;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn exact_normalization() {
        let p = PPoint::new(vec![q(0, 1), q(2, 1), q(-4, 3)]).unwrap();
        assert_eq!(p.coords(), &[q(0, 1), q(1, 1), q(-2, 3)]);
        let same = PPoint::new(vec![q(0, 1), q(-3, 1), q(2, 1)]).unwrap();
        assert_eq!(p, same);
        assert_eq!(p.affine(), Err(PolyError::NotAffine));
        assert_eq!(PPoint::new(vec![q(0, 1); 3]), Err(PolyError::ZeroPoint));
    }

    #[test]
    fn complex_pivot_is_largest() {
        let p = PPoint::new(vec![Complex64::new(0.1, 0.0), Complex64::new(0.0, 2.0)]).unwrap();
        assert_eq!(p.coords()[1], Complex64::new(1.0, 0.0));
        assert!((p.coords()[0] - Complex64::new(0.0, -0.05)).norm() < 1e-15);
    }
}
