//! Exact integer and rational kernels used by every other module.
//!
//! Integers are [`num_bigint::BigUint`] (aliased as [`Natural`]) and fractions
//! are [`num_rational::BigRational`]. Transcendental quantities live in
//! [`HighPrecisionReal`], an interval-tracked fixed-point type.

mod hpr;

pub use hpr::{HighPrecisionReal, HprError, DEFAULT_PRECISION};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;
/// Exact reduced fraction with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("factorial_ratio needs a >= b, got a = {a}, b = {b}")]
    RatioOrder { a: u64, b: u64 },
    #[error("natural subtraction {lhs} - {rhs} would be negative")]
    Underflow { lhs: String, rhs: String },
}

/// Shorthand for building a [`Natural`] from a machine integer.
pub fn nat(v: u64) -> Natural {
    Natural::from(v)
}

/// `a - b`, refusing to go below zero.
pub fn checked_sub(a: &Natural, b: &Natural) -> Result<Natural, ExactError> {
    if a < b {
        return Err(ExactError::Underflow {
            lhs: a.to_string(),
            rhs: b.to_string(),
        });
    }
    Ok(a - b)
}

/// Signed difference of two naturals.
pub fn signed_diff(a: &Natural, b: &Natural) -> BigInt {
    BigInt::from(a.clone()) - BigInt::from(b.clone())
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
///
/// Uses the running product `C(n, i+1) = C(n, i) (n - i) / (i + 1)`, every
/// intermediate being an exact binomial.
///
/// # Panics
/// If `min(k, n - k)` does not fit in a `u64`; such a product could never be
/// materialized anyway.
pub fn binom(n: &Natural, k: &Natural) -> Natural {
    if k > n {
        return Natural::zero();
    }
    let rest = n - k;
    let small = if &rest < k { rest } else { k.clone() };
    let small = small.to_u64().expect("binomial lower index too large to materialize");
    binom_k(n, small)
}

/// `C(n, k)` for a machine-sized lower index.
pub fn binom_k(n: &Natural, k: u64) -> Natural {
    let kk = nat(k);
    if &kk > n {
        return Natural::zero();
    }
    let k = if n - &kk < kk {
        (n - &kk).to_u64().unwrap_or(k)
    } else {
        k
    };
    let mut acc = Natural::one();
    for i in 0..k {
        acc *= n - nat(i);
        acc /= nat(i + 1);
    }
    acc
}

/// `C(n, k)` on machine integers.
pub fn binom_u(n: u64, k: u64) -> Natural {
    binom_k(&nat(n), k)
}

/// Returns true iff `C(n, k) > cap`, stopping as soon as that is certain.
///
/// After reducing to `k <= n/2` the partial products `C(n, i)` increase with
/// `i`, so exceeding the cap early settles the answer.
pub fn binom_exceeds(n: &Natural, k: u64, cap: &Natural) -> bool {
    let kk = nat(k);
    if &kk > n {
        return Natural::zero() > *cap;
    }
    let k = if n - &kk < kk {
        (n - &kk).to_u64().unwrap_or(k)
    } else {
        k
    };
    let mut acc = Natural::one();
    for i in 0..k {
        acc *= n - nat(i);
        acc /= nat(i + 1);
        if &acc > cap {
            return true;
        }
    }
    &acc > cap
}

/// `ceil(a / b)`.
pub fn ceil_div(a: &Natural, b: &Natural) -> Result<Natural, ExactError> {
    if b.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    Ok(Integer::div_ceil(a, b))
}

/// `a! / b!` as the falling product `a (a-1) ... (b+1)`.
pub fn factorial_ratio(a: u64, b: u64) -> Result<Natural, ExactError> {
    if a < b {
        return Err(ExactError::RatioOrder { a, b });
    }
    let mut acc = Natural::one();
    for v in (b + 1)..=a {
        acc *= nat(v);
    }
    Ok(acc)
}

/// `n!`.
pub fn factorial(n: u64) -> Natural {
    factorial_ratio(n, 0).expect("n >= 0")
}

/// Renders `p/q` to `places` decimals using round-half-even.
pub fn round_half_even(q: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = q * Rational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let frac = scaled - Rational::from_integer(floor.clone());
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let rounded = if frac > half || (frac == half && floor.is_odd()) {
        floor + 1
    } else {
        floor
    };
    let negative = rounded < BigInt::zero();
    let digits = rounded.magnitude().to_string();
    let places = places as usize;
    let padded = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}
