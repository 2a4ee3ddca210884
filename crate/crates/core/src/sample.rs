//! Seeded random instances shared by tests, the CLI and the solvers.

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact_core::Rational;
use crate::poly::{Field, HPoly};

/// Seed used when neither a flag nor `RESOLVENT_SEED` supplies one.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All exponent vectors of `nvars` variables summing to `degree`, descending lex.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn go(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in (0..=left).rev() {
            cur[pos] = v;
            go(pos + 1, left - v, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(0, degree, &mut vec![0; nvars], &mut out);
    out
}

/// Nonzero rational `p/q` with `|p| <= 9`, `1 <= q <= 5`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-9..=9);
        if p != 0 {
            let q: i64 = rng.gen_range(1..=5);
            return Rational::new(BigInt::from(p), BigInt::from(q));
        }
    }
}

/// Rational with small numerator and denominator, possibly zero.
pub fn small_rational_or_zero<R: Rng>(rng: &mut R) -> Rational {
    if rng.gen_bool(0.2) {
        Rational::from_integer(BigInt::from(0))
    } else {
        small_rational(rng)
    }
}

/// Complex number uniform in the square `[-1, 1]^2`.
pub fn unit_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random form whose monomials each appear with probability `density`
/// (at least one monomial always appears).
pub fn rational_form<R: Rng>(rng: &mut R, nvars: usize, degree: u32, density: f64) -> HPoly<Rational> {
    let mons = monomials(nvars, degree);
    let forced = rng.gen_range(0..mons.len());
    let terms: Vec<_> = mons
        .into_iter()
        .enumerate()
        .filter_map(|(i, e)| (i == forced || rng.gen_bool(density)).then(|| (e, small_rational(rng))))
        .collect();
    HPoly::from_terms(nvars, degree, terms).expect("monomials are homogeneous")
}

/// Dense random complex form.
pub fn complex_form<R: Rng>(rng: &mut R, nvars: usize, degree: u32) -> HPoly<Complex64> {
    let terms: Vec<_> = monomials(nvars, degree)
        .into_iter()
        .map(|e| (e, unit_complex(rng)))
        .collect();
    HPoly::from_terms(nvars, degree, terms).expect("monomials are homogeneous")
}

pub fn rational_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational_or_zero(rng)).collect()
}

pub fn complex_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| unit_complex(rng)).collect()
}

/// Forces `f(p) = 0` by subtracting `f(p) / p_j^d * x_j^d` for a pivot `j`.
pub fn through_point<F: Field>(f: &HPoly<F>, p: &[F]) -> HPoly<F> {
    let j = F::pivot(p).expect("nonzero point");
    let val = f.evaluate(p).expect("arity");
    let mut e = vec![0; f.nvars()];
    e[j] = f.degree();
    let mut pj = F::one();
    for _ in 0..f.degree() {
        pj = pj * p[j].clone();
    }
    let corr = HPoly::from_terms(f.nvars(), f.degree(), [(e, val / pj)]).expect("homogeneous");
    f.sub(&corr).expect("same shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::binom_u;
    use num_traits::Zero;

    #[test]
    fn monomial_counts() {
        for n in 1..6usize {
            for d in 0..5u32 {
                let m = monomials(n, d);
                assert_eq!(
                    m.len() as u64,
                    binom_u(n as u64 - 1 + u64::from(d), u64::from(d))
                        .try_into()
                        .unwrap_or(0u64)
                );
                assert!(m.windows(2).all(|w| w[0] > w[1]));
            }
        }
    }

    #[test]
    fn forced_vanishing() {
        let mut r = rng(7);
        let f = rational_form(&mut r, 4, 3, 0.5);
        let p = vec![
            small_rational(&mut r),
            small_rational(&mut r),
            Rational::zero(),
            small_rational(&mut r),
        ];
        assert!(through_point(&f, &p).evaluate(&p).unwrap().is_zero());
    }
}
