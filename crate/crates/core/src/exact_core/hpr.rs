//! Fixed-point reals with a rigorous error radius.
//!
//! A value is `mant * 2^-prec` with an absolute error of at most
//! `err * 2^-prec`. Every operation widens `err` enough to keep the true value
//! inside the interval, and comparisons refuse to answer when the intervals
//! overlap.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Fractional bits used unless a caller asks otherwise.
pub const DEFAULT_PRECISION: u32 = 256;

/// Extra bits carried while summing series.
const GUARD: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HprError {
    #[error("comparison undecidable at {precision} bits")]
    Undecidable { precision: u32 },
    #[error("logarithm of a non-positive value")]
    LogDomain,
    #[error("division by an interval containing zero")]
    DivisionByZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighPrecisionReal {
    mant: BigInt,
    err: BigUint,
    prec: u32,
}

/// `round(n / 2^shift)` for signed `n`, ties away from zero.
fn shift_round(n: &BigInt, shift: u32) -> BigInt {
    if shift == 0 {
        return n.clone();
    }
    let half = BigInt::one() << (shift - 1);
    let mag = n.magnitude().clone();
    let rounded = (BigInt::from(mag) + half) >> shift;
    if n.sign() == Sign::Minus {
        -rounded
    } else {
        rounded
    }
}

/// `ceil(n / 2^shift)` for unsigned `n`.
fn shift_ceil(n: &BigUint, shift: u32) -> BigUint {
    if shift == 0 {
        return n.clone();
    }
    let mask = (BigUint::one() << shift) - 1u32;
    let q = n >> shift;
    if (n & mask).is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// `round(a / b)` for `b > 0`.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = a.div_mod_floor(b);
    if &r * &two >= *b {
        q + 1
    } else {
        q
    }
}

fn ceil_ratio(a: &BigUint, b: &BigUint) -> BigUint {
    Integer::div_ceil(a, b)
}

/// `atanh(num/den) * 2^w` with `0 <= num/den <= 1/3`, plus an error bound in
/// ulps of `2^-w`.
fn atanh_fixed(num: &BigInt, den: &BigInt, w: u32) -> (BigInt, BigUint) {
    let num2 = num * num;
    let den2 = den * den;
    let mut power = (num << w) / den;
    let mut sum = BigInt::zero();
    let mut terms: u64 = 0;
    let mut j: u64 = 0;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * j + 1);
        power = &power * &num2 / &den2;
        j += 1;
        terms += 1;
    }
    (sum, BigUint::from(3 * terms + 4))
}

/// `atan(1/n) * 2^w` for integer `n >= 2`, with an error bound in ulps.
fn atan_inv_fixed(n: u64, w: u32) -> (BigInt, BigUint) {
    let n2 = BigInt::from(n * n);
    let mut power = (BigInt::one() << w) / BigInt::from(n);
    let mut sum = BigInt::zero();
    let mut terms: u64 = 0;
    let mut j: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * j + 1);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &n2;
        j += 1;
        terms += 1;
    }
    (sum, BigUint::from(2 * terms + 4))
}

/// `ln 2 * 2^w` with its ulp error.
fn ln2_fixed(w: u32) -> (BigInt, BigUint) {
    let (a, e) = atanh_fixed(&BigInt::one(), &BigInt::from(3), w);
    (a * 2, e * 2u32)
}

/// `ln(n) * 2^w` for a positive integer `n`.
fn ln_int_fixed(n: &BigUint, w: u32) -> (BigInt, BigUint) {
    debug_assert!(!n.is_zero());
    let e = n.bits() - 1;
    let pow = BigUint::one() << e;
    let num = BigInt::from(n - &pow);
    let den = BigInt::from(n + &pow);
    let (at, at_err) = atanh_fixed(&num, &den, w);
    let (l2, l2_err) = ln2_fixed(w);
    let mant = l2 * BigInt::from(e) + at * 2;
    let err = l2_err * BigUint::from(e) + at_err * 2u32 + 1u32;
    (mant, err)
}

impl HighPrecisionReal {
    /// Exact integer.
    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        Self {
            mant: v.into() << prec,
            err: BigUint::zero(),
            prec,
        }
    }

    /// Nearest representable value to `q`; exact when `q` is dyadic enough.
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let scaled = q.numer() << prec;
        let (quot, rem) = scaled.div_mod_floor(q.denom());
        if rem.is_zero() {
            return Self {
                mant: quot,
                err: BigUint::zero(),
                prec,
            };
        }
        Self {
            mant: div_round(&scaled, q.denom()),
            err: BigUint::one(),
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_int(0, prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Centre of the enclosing interval.
    pub fn midpoint(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.prec)
    }

    /// Half-width of the enclosing interval.
    pub fn error_radius(&self) -> BigRational {
        BigRational::new(BigInt::from(self.err.clone()), BigInt::one() << self.prec)
    }

    pub fn is_exact(&self) -> bool {
        self.err.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let shift = self.mant.bits().saturating_sub(60);
        let top = (&self.mant >> shift).to_f64().unwrap_or(0.0);
        top * 2f64.powi(shift as i32 - self.prec as i32)
    }

    /// Re-expresses the value at another precision.
    pub fn with_precision(&self, prec: u32) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = prec - self.prec;
                Self {
                    mant: &self.mant << s,
                    err: &self.err << s,
                    prec,
                }
            }
            Ordering::Less => {
                let s = self.prec - prec;
                let exact = (&self.mant % (BigInt::one() << s)).is_zero();
                let mut err = shift_ceil(&self.err, s);
                if !exact {
                    err += 1u32;
                }
                Self {
                    mant: shift_round(&self.mant, s),
                    err,
                    prec,
                }
            }
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let p = self.prec.max(other.prec);
        (self.with_precision(p), other.with_precision(p))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        Self {
            mant: a.mant + b.mant,
            err: a.err + b.err,
            prec: a.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -self.mant.clone(),
            err: self.err.clone(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let p = a.prec;
        let prod = &a.mant * &b.mant;
        let exact_prod = (&prod % (BigInt::one() << p)).is_zero();
        let spread = a.mant.magnitude() * &b.err + b.mant.magnitude() * &a.err + &a.err * &b.err;
        let mut err = shift_ceil(&spread, p);
        if !exact_prod {
            err += 1u32;
        }
        Self {
            mant: shift_round(&prod, p),
            err,
            prec: p,
        }
    }

    /// Exact scaling by an integer.
    pub fn mul_int(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        Self {
            mant: &self.mant * &k,
            err: &self.err * k.magnitude(),
            prec: self.prec,
        }
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        assert!(!k.is_zero(), "division by zero");
        let sign = k.signum();
        let kabs = k.abs();
        let exact = (&self.mant % &kabs).is_zero();
        let mut err = ceil_ratio(&self.err, kabs.magnitude());
        if !exact {
            err += 1u32;
        }
        Self {
            mant: div_round(&self.mant, &kabs) * sign,
            err,
            prec: self.prec,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, HprError> {
        let (a, b) = self.aligned(other);
        let p = a.prec;
        let bmag = b.mant.magnitude().clone();
        if bmag <= b.err {
            return Err(HprError::DivisionByZero);
        }
        let scaled = &a.mant << p;
        let mant = div_round(&(scaled.clone() * b.mant.signum()), &BigInt::from(bmag.clone()));
        let spread = (&a.err * &bmag + a.mant.magnitude() * &b.err) << p;
        let denom = (&bmag - &b.err) * &bmag;
        let err = ceil_ratio(&spread, &denom) + 1u32;
        Ok(Self { mant, err, prec: p })
    }

    /// Natural logarithm of a positive rational; exact zero for `q = 1`.
    pub fn ln_rational(q: &BigRational, prec: u32) -> Result<Self, HprError> {
        if !q.is_positive() {
            return Err(HprError::LogDomain);
        }
        if q.is_one() {
            return Ok(Self::zero(prec));
        }
        let w = prec + GUARD;
        let (nm, ne) = ln_int_fixed(q.numer().magnitude(), w);
        let (dm, de) = ln_int_fixed(q.denom().magnitude(), w);
        let wide = Self {
            mant: nm - dm,
            err: ne + de,
            prec: w,
        };
        Ok(wide.with_precision(prec))
    }

    /// Natural logarithm of a positive integer.
    pub fn ln_int(n: u64, prec: u32) -> Result<Self, HprError> {
        Self::ln_rational(&BigRational::from_integer(BigInt::from(n)), prec)
    }

    /// Natural logarithm of a positive big integer.
    pub fn ln_natural(n: &BigUint, prec: u32) -> Result<Self, HprError> {
        Self::ln_rational(&BigRational::from_integer(BigInt::from(n.clone())), prec)
    }

    /// Natural logarithm of an interval lying strictly above zero.
    pub fn ln(&self) -> Result<Self, HprError> {
        if self.mant.sign() != Sign::Plus || self.mant.magnitude() <= &self.err {
            return Err(HprError::LogDomain);
        }
        let p = self.prec;
        let w = p + GUARD;
        let x = self.mant.magnitude();
        let (lx, lx_err) = ln_int_fixed(x, w);
        let (l2, l2_err) = ln2_fixed(w);
        let centre = Self {
            mant: lx - l2 * BigInt::from(p),
            err: lx_err + l2_err * BigUint::from(p),
            prec: w,
        }
        .with_precision(p);
        let widen = ceil_ratio(&(&self.err << p), &(x - &self.err)) + 1u32;
        Ok(Self {
            mant: centre.mant,
            err: centre.err + widen,
            prec: p,
        })
    }

    /// The constant pi by Machin's formula.
    pub fn pi(prec: u32) -> Self {
        let w = prec + GUARD;
        let (a5, e5) = atan_inv_fixed(5, w);
        let (a239, e239) = atan_inv_fixed(239, w);
        Self {
            mant: a5 * 16 - a239 * 4,
            err: e5 * 16u32 + e239 * 4u32,
            prec: w,
        }
        .with_precision(prec)
    }

    /// Three-way comparison, or an error when the intervals overlap.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, HprError> {
        let d = self.sub(other);
        let mag = d.mant.magnitude();
        if d.err.is_zero() && mag.is_zero() {
            return Ok(Ordering::Equal);
        }
        if mag > &d.err {
            return Ok(if d.mant.sign() == Sign::Minus {
                Ordering::Less
            } else {
                Ordering::Greater
            });
        }
        Err(HprError::Undecidable { precision: d.prec })
    }

    pub fn try_lt(&self, other: &Self) -> Result<bool, HprError> {
        Ok(self.try_cmp(other)? == Ordering::Less)
    }

    pub fn try_le(&self, other: &Self) -> Result<bool, HprError> {
        Ok(self.try_cmp(other)? != Ordering::Greater)
    }
}

impl fmt::Display for HighPrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let err = self.error_radius().to_f64().unwrap_or(f64::INFINITY);
        write!(f, "{:.12e} ± {:.1e}", self.to_f64(), err)
    }
}
