//! Bounding functions for resolvent degree and the predicates they rest on.
//!
//! Everything here is exact big-integer arithmetic. The minimizations behind
//! `G` and `F` prune candidates that provably cannot win, so a value is only
//! materialized when it could be the minimum.

mod checks;
mod tables;

pub use checks::{
    analytic_inequality_suite, combinatorial_identity_sweep, comparison_check, frak_c_log, omega,
    omega_condition_check, psi_monotonicity_check, ratio_checkpoint, simplified_omega_check, theta_minimality_sweep,
    theta_upper_bound_check, theta_upper_bound_sweep, varphi_condition_check, AnalyticCheck, AnalyticReport,
    ComparisonReport, ComparisonRow, MonotonicityReport, MonotonicityStep, OmegaValue, RatioCheckpoint, SweepReport,
    EXPECTED_EQUALITY_SET,
};
pub use tables::{plane_witness, table1, table2, BoundsRow};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact_core::{
    binom_exceeds, binom_k, ceil_div, checked_sub, factorial, factorial_ratio, nat, signed_diff, ExactError, Natural,
};
use crate::polar::IntersectionType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("empty moduli space: {0}")]
    EmptyModuli(String),
    #[error("a single quadric is excluded from the surjectivity criterion")]
    QuadricOnly,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Precision(#[from] crate::exact_core::HprError),
}

fn domain(msg: impl Into<String>) -> BoundsError {
    BoundsError::Domain(msg.into())
}

/// Which branch of a `max { factorial, moduli }` bound was larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Factorial,
    Moduli,
}

/// A bound value with the branch that produced it. Ties report `Factorial`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sourced {
    pub value: Natural,
    pub source: Source,
}

impl Sourced {
    fn max_of(factorial: Natural, moduli: Option<Natural>) -> Self {
        match moduli {
            Some(m) if m > factorial => Self {
                value: m,
                source: Source::Moduli,
            },
            _ => Self {
                value: factorial,
                source: Source::Factorial,
            },
        }
    }
}

/// A minimized bound with the smallest `d` attaining the minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimized {
    pub value: Natural,
    pub witness: Option<u64>,
}

/// Outcome of a surjectivity criterion: the slack and whether it is nonnegative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slack {
    pub holds: bool,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub slack: BigInt,
}

impl Slack {
    fn from(slack: BigInt) -> Self {
        Self {
            holds: slack >= BigInt::zero(),
            slack,
        }
    }
}

/// `theta(d,k) = k + ceil((C(k+d+1,d) - (k+2)) / (k+1))`, the least ambient
/// dimension whose Debarre-Manivel slack for type `(2,...,d)` is nonnegative.
pub fn theta(d: u64, k: u64) -> Result<Natural, BoundsError> {
    if d < 3 || k < 1 {
        return Err(domain(format!("theta needs d >= 3, k >= 1 (got d={d}, k={k})")));
    }
    let top = checked_sub(&binom_k(&nat(k + d + 1), d), &nat(k + 2))?;
    Ok(nat(k) + ceil_div(&top, &nat(k + 1))?)
}

/// `H(d;r) = C(r+d,d) - 1`.
pub fn dim_param_hyp(d: u64, r: &Natural) -> Result<Natural, BoundsError> {
    if d < 1 {
        return Err(domain("dim_param_hyp needs d >= 1"));
    }
    Ok(checked_sub(&binom_k(&(r + d), d), &Natural::one())?)
}

/// `M(d;r) = C(r+d,d) - (r+1)^2`.
pub fn dim_moduli_hyp(d: u64, r: &Natural) -> Result<Natural, BoundsError> {
    let total = binom_k(&(r + d), d);
    let group = (r + 1u32) * (r + 1u32);
    checked_sub(&total, &group)
        .map_err(|_| BoundsError::EmptyModuli(format!("M({d};{r}) = C({r}+{d},{d}) - ({r}+1)^2 < 0")))
}

/// `H(2,...,d;r) = C(r+d+1,d) - (r+d+1)`.
pub fn dim_param_chain(d: u64, r: &Natural) -> Result<Natural, BoundsError> {
    if d < 2 {
        return Err(domain("dim_param_chain needs d >= 2"));
    }
    Ok(checked_sub(&binom_k(&(r + d + 1u32), d), &(r + d + 1u32))?)
}

/// `M(2,...,d;r) = C(r+d+1,d) - (r+1)^2 - (r+d)`.
pub fn dim_moduli_chain(d: u64, r: &Natural) -> Result<Natural, BoundsError> {
    if d < 2 {
        return Err(domain("dim_moduli_chain needs d >= 2"));
    }
    let total = binom_k(&(r + d + 1u32), d);
    let removed = (r + 1u32) * (r + 1u32) + r + d;
    checked_sub(&total, &removed).map_err(|_| BoundsError::EmptyModuli(format!("M(2..{d};{r}) is negative")))
}

/// Waldron's criterion: slack `(k+1)(r-k) - C(k+d,d)`.
pub fn waldron_ok(d: u64, r: &Natural, k: &Natural) -> Result<Slack, BoundsError> {
    if d < 3 {
        return Err(domain("waldron_ok needs d >= 3"));
    }
    let lhs = BigInt::from(k + 1u32) * signed_diff(r, k);
    let rhs = BigInt::from(binom_k(&(k + d), d));
    Ok(Slack::from(lhs - rhs))
}

/// Debarre-Manivel criterion: slack `(k+1)(r-k) - sum_i l_i C(k+i,i)`.
pub fn debarre_manivel_ok(t: &IntersectionType, r: &Natural, k: &Natural) -> Result<Slack, BoundsError> {
    if t.total() == 1 && t.count(2) == 1 {
        return Err(BoundsError::QuadricOnly);
    }
    let lhs = BigInt::from(k + 1u32) * signed_diff(r, k);
    let mut rhs = BigInt::zero();
    for (deg, mult) in t.pairs() {
        rhs += BigInt::from(binom_k(&(k + deg), u64::from(deg))) * BigInt::from(mult);
    }
    Ok(Slack::from(lhs - rhs))
}

/// The type `(2,3,...,d)`.
pub fn chain_type(d: u32) -> IntersectionType {
    IntersectionType::from_degrees(&(2..=d).collect::<Vec<_>>())
}

/// `phi(d,k) = max { (d+k)!/d!, M(2,...,d; theta(d,k)) }`.
pub fn phi(d: u64, k: u64) -> Result<Sourced, BoundsError> {
    if d < 4 || k < 1 {
        return Err(domain(format!("phi needs d >= 4, k >= 1 (got d={d}, k={k})")));
    }
    let fact = factorial_ratio(d + k, d)?;
    let moduli = dim_moduli_chain(d, &theta(d, k)?)?;
    Ok(Sourced::max_of(fact, Some(moduli)))
}

/// `phi(d,k)` unless it provably exceeds `bound`.
fn phi_below(d: u64, k: u64, bound: Option<&Natural>) -> Result<Option<Sourced>, BoundsError> {
    let fact = factorial_ratio(d + k, d)?;
    if let Some(b) = bound {
        if &fact > b {
            return Ok(None);
        }
    }
    let th = theta(d, k)?;
    if let Some(b) = bound {
        let cap = b + (&th + 1u32) * (&th + 1u32) + &th + d;
        if binom_exceeds(&(&th + d + 1u32), d, &cap) {
            return Ok(None);
        }
    }
    let moduli = dim_moduli_chain(d, &th)?;
    Ok(Some(Sourced::max_of(fact, Some(moduli))))
}

/// Tabulated `G(m)` for `1 <= m <= 14`.
pub const G_TABLE: [u64; 14] = [
    2,
    3,
    4,
    5,
    9,
    21,
    109,
    325,
    1681,
    15121,
    151_201,
    1_663_201,
    19_958_401,
    259_459_201,
];

/// `G(m)`: the table for `m <= 14`, otherwise `1 + min_{4 <= d <= m-2} phi(d, m-d-1)`.
///
/// The range stops at `m-2` because `phi(d, 0)` is undefined.
pub fn g(m: u64) -> Result<Minimized, BoundsError> {
    if m < 1 {
        return Err(domain("G needs m >= 1"));
    }
    if m <= 14 {
        return Ok(Minimized {
            value: nat(G_TABLE[(m - 1) as usize]),
            witness: None,
        });
    }
    let (value, d) = g_min(m)?;
    Ok(Minimized {
        value: value + 1u32,
        witness: Some(d),
    })
}

/// `min_{4 <= d <= m-2} phi(d, m-d-1)` and the smallest minimizing `d`.
pub fn g_min(m: u64) -> Result<(Natural, u64), BoundsError> {
    if m < 6 {
        return Err(domain("the G minimization needs m >= 6"));
    }
    let mut best: Option<(Natural, u64)> = None;
    for d in 4..=m - 2 {
        let k = m - d - 1;
        if let Some(v) = phi_below(d, k, best.as_ref().map(|b| &b.0))? {
            if best.as_ref().map_or(true, |b| v.value < b.0) {
                best = Some((v.value, d));
            }
        }
    }
    Ok(best.expect("range is nonempty"))
}

/// `psi(d,k)`, the vector `psi_0, ..., psi_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiVector {
    pub d: u64,
    pub k: u64,
    pub entries: Vec<Natural>,
}

/// One recursion step `x + ceil(C(x+e, e) / (x+1))`.
pub fn psi_step(x: &Natural, e: u64) -> Natural {
    let c = binom_k(&(x + e), e);
    x + ceil_div(&c, &(x + 1u32)).expect("x + 1 > 0")
}

/// Like [`psi_step`] but gives up (returns `None`) once the result would exceed `cap`.
fn psi_step_capped(x: &Natural, e: u64, cap: &Natural) -> Option<Natural> {
    if x > cap {
        return None;
    }
    let room = cap - x;
    if binom_exceeds(&(x + e), e, &(room * (x + 1u32))) {
        return None;
    }
    Some(psi_step(x, e))
}

/// Wolfson's recursion: `psi_0 = k`, `psi_{i+1} = psi_i + ceil(C(psi_i+d-i, d-i) / (psi_i+1))`
/// for `i < d-2`, and `psi_{d-1} = 2 psi_{d-2} + 1`.
pub fn psi(d: u64, k: u64) -> Result<PsiVector, BoundsError> {
    if d < 3 || k < 1 {
        return Err(domain(format!("psi needs d >= 3, k >= 1 (got d={d}, k={k})")));
    }
    let mut entries = vec![nat(k)];
    for i in 0..d - 2 {
        let next = psi_step(&entries[i as usize], d - i);
        entries.push(next);
    }
    let last = entries.last().expect("nonempty") * 2u32 + 1u32;
    entries.push(last);
    Ok(PsiVector { d, k, entries })
}

/// `psi(d,k)_{d-2}`, or `None` once some entry passes `cap`.
fn psi_penultimate_capped(d: u64, k: u64, cap: Option<&Natural>) -> Option<Natural> {
    let mut x = nat(k);
    for i in 0..d - 2 {
        x = match cap {
            Some(c) => psi_step_capped(&x, d - i, c)?,
            None => psi_step(&x, d - i),
        };
    }
    Some(x)
}

/// `M(3;x) = C(x+3,3) - (x+1)^2`, which factors as `(x-1) x (x+1) / 6`.
fn m3(x: &Natural) -> Result<Natural, BoundsError> {
    dim_moduli_hyp(3, x)
}

/// `Phi(d,k) = max { (d+k)!/d!, M(3; psi(d,k)_{d-2}) + d + k + 1 }`; only the
/// factorial branch exists for `d <= 2`.
#[allow(non_snake_case)]
pub fn Phi(d: u64, k: u64) -> Result<Sourced, BoundsError> {
    if d < 1 || k < 1 {
        return Err(domain(format!("Phi needs d >= 1, k >= 1 (got d={d}, k={k})")));
    }
    let fact = factorial_ratio(d + k, d)?;
    if d <= 2 {
        return Ok(Sourced::max_of(fact, None));
    }
    let p = psi_penultimate_capped(d, k, None).expect("uncapped");
    let moduli = m3(&p)? + d + k + 1u32;
    Ok(Sourced::max_of(fact, Some(moduli)))
}

/// The moduli branch of `Phi(d,k)` on its own.
#[allow(non_snake_case)]
pub fn Phi_moduli(d: u64, k: u64) -> Result<Natural, BoundsError> {
    if d < 3 || k < 1 {
        return Err(domain("the moduli branch of Phi needs d >= 3, k >= 1"));
    }
    let p = psi_penultimate_capped(d, k, None).expect("uncapped");
    Ok(m3(&p)? + d + k + 1u32)
}

/// `Phi(d,k)` unless it provably exceeds `bound`.
fn big_phi_below(d: u64, k: u64, bound: Option<&Natural>) -> Result<Option<Sourced>, BoundsError> {
    let fact = factorial_ratio(d + k, d)?;
    if let Some(b) = bound {
        if &fact > b {
            return Ok(None);
        }
    }
    if d <= 2 {
        return Ok(Some(Sourced::max_of(fact, None)));
    }
    // M(3;x) >= (x-1)^3 / 6, so any x above cbrt(6b) + 2 already loses.
    let cap = bound.map(|b| (b * 6u32).cbrt() + 2u32);
    let Some(p) = psi_penultimate_capped(d, k, cap.as_ref()) else {
        return Ok(None);
    };
    let moduli = m3(&p)? + d + k + 1u32;
    Ok(Some(Sourced::max_of(fact, Some(moduli))))
}

/// `min_{1 <= d <= m-2} Phi(d, m-d-1)` with the smallest minimizing `d`.
pub fn f_min(m: u64) -> Result<(Natural, u64), BoundsError> {
    if m < 3 {
        return Err(domain("the F minimization needs m >= 3"));
    }
    let mut best: Option<(Natural, u64)> = None;
    for d in 1..=m - 2 {
        let k = m - d - 1;
        if let Some(v) = big_phi_below(d, k, best.as_ref().map(|b| &b.0))? {
            if best.as_ref().map_or(true, |b| v.value < b.0) {
                best = Some((v.value, d));
            }
        }
    }
    Ok(best.expect("range is nonempty"))
}

/// `F(m) = 2 floor(min Phi / 2) + 1`, and `m + 1` for `m <= 4`.
///
/// The printed rule switches at `m <= 3`, but the formula gives `F(4) = 3`
/// while the tabulated value (and `G(4) <= F(4)`) needs 5.
pub fn f(m: u64) -> Result<Minimized, BoundsError> {
    if m < 1 {
        return Err(domain("F needs m >= 1"));
    }
    if m <= 4 {
        return Ok(Minimized {
            value: nat(m + 1),
            witness: None,
        });
    }
    let (v, d) = f_min(m)?;
    Ok(Minimized {
        value: (v / 2u32) * 2u32 + 1u32,
        witness: Some(d),
    })
}

/// Brauer's threshold `(m-1)! + 1`.
pub fn brauer(m: u64) -> Result<Natural, BoundsError> {
    if m < 2 {
        return Err(domain("brauer needs m >= 2"));
    }
    Ok(factorial(m - 1) + 1u32)
}

/// The coefficient `C_d = max_i C(d+1, i)`.
pub fn central_binomial(d: u64) -> Natural {
    binom_k(&nat(d + 1), d.div_ceil(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Natural {
        s.parse().unwrap()
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(4, 8).unwrap(), nat(87));
        assert_eq!(theta(5, 11).unwrap(), nat(526));
        assert_eq!(theta(4, 1).unwrap(), nat(7));
        assert!(theta(2, 1).is_err());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_moduli_hyp(3, &nat(778)).unwrap(), nat(78_485_029));
        assert_eq!(dim_param_hyp(4, &nat(63)).unwrap(), nat(766_479));
        assert!(matches!(dim_moduli_hyp(2, &nat(2)), Err(BoundsError::EmptyModuli(_))));
    }

    #[test]
    fn slack_examples() {
        let w = |d, r, k| waldron_ok(d, &nat(r), &nat(k)).unwrap();
        assert_eq!(w(3, 778, 63), Slack::from(BigInt::zero()));
        assert_eq!(w(4, 63, 8), Slack::from(BigInt::zero()));
        assert_eq!(w(3, 10, 9), Slack::from(BigInt::from(-210)));
        let t = IntersectionType::from_degrees(&[2, 3, 4]);
        let dm = |r| debarre_manivel_ok(&t, &nat(r), &nat(1)).unwrap();
        assert_eq!(dm(7), Slack::from(BigInt::zero()));
        assert_eq!(dm(6), Slack::from(BigInt::from(-2)));
        let q = IntersectionType::from_degrees(&[2]);
        assert_eq!(debarre_manivel_ok(&q, &nat(5), &nat(1)), Err(BoundsError::QuadricOnly));
    }

    #[test]
    fn phi_examples() {
        let v = phi(4, 10).unwrap();
        assert_eq!((v.value, v.source), (nat(3_632_428_800), Source::Factorial));
        let v = phi(5, 12).unwrap();
        assert_eq!((v.value, v.source), (nat(2_964_061_900_800), Source::Factorial));
        let v = phi(5, 11).unwrap();
        assert_eq!((v.value, v.source), (nat(348_489_762_716), Source::Moduli));
    }

    #[test]
    fn g_examples() {
        assert_eq!(g(6).unwrap().value, nat(21));
        assert_eq!(
            g(15).unwrap(),
            Minimized {
                value: nat(3_632_428_801),
                witness: Some(4)
            }
        );
        assert_eq!(
            g(16).unwrap(),
            Minimized {
                value: nat(54_486_432_001),
                witness: Some(4)
            }
        );
    }

    #[test]
    fn psi_examples() {
        let p = psi(4, 8).unwrap();
        assert_eq!(p.entries, vec![nat(8), nat(63), nat(778), nat(1557)]);
        let p = psi(5, 9).unwrap();
        assert_eq!(p.entries[4].clone() + 1u32, nat(54_097_786_526));
        assert_eq!(psi(3, 1).unwrap().entries, vec![nat(1), nat(3), nat(7)]);
    }

    #[test]
    fn big_phi_examples() {
        let v = Phi(4, 8).unwrap();
        assert_eq!((v.value, v.source), (nat(78_485_042), Source::Moduli));
        assert_eq!(Phi(4, 9).unwrap().value, nat(320_082_458));
        let v = Phi(4, 12).unwrap();
        assert_eq!((v.value, v.source), (nat(871_782_912_000), Source::Factorial));
        let p = psi(5, 9).unwrap();
        assert_eq!(m3(&p.entries[3]).unwrap(), n("3298353885918738132194252727911"));
        assert_eq!(Phi_moduli(5, 9).unwrap(), n("3298353885918738132194252727911") + 15u32);
    }

    #[test]
    fn f_examples() {
        assert_eq!(f(3).unwrap().value, nat(4));
        assert_eq!(
            f(17).unwrap(),
            Minimized {
                value: nat(871_782_912_001),
                witness: Some(4)
            }
        );
        assert_eq!(f(11).unwrap().value, nat(604_801));
    }

    #[test]
    fn brauer_examples() {
        assert_eq!(brauer(2).unwrap(), nat(2));
        assert_eq!(brauer(5).unwrap(), nat(25));
        assert_eq!(brauer(15).unwrap(), nat(87_178_291_201));
    }

    #[test]
    fn m3_closed_form() {
        for x in 1..200u64 {
            let x = nat(x);
            let closed = (&x - 1u32) * &x * (&x + 1u32) / 6u32;
            assert_eq!(m3(&x).unwrap(), closed);
        }
    }

    #[test]
    fn pruned_minimum_matches_brute_force() {
        for m in 6..=40u64 {
            let brute = (4..=m - 2)
                .map(|d| (phi(d, m - d - 1).unwrap().value, d))
                .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))
                .unwrap();
            assert_eq!(g_min(m).unwrap(), brute, "G at m={m}");
        }
        for m in 3..=12u64 {
            let brute = (1..=m - 2)
                .map(|d| (Phi(d, m - d - 1).unwrap().value, d))
                .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))
                .unwrap();
            assert_eq!(f_min(m).unwrap(), brute, "F at m={m}");
        }
    }
}
