//! Condition lemmas, analytic inequalities and sweeping comparisons.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::{f, g, phi, psi_step, theta, BoundsError, Minimized};
use crate::exact_core::{binom_u, factorial, nat, HighPrecisionReal as Hpr, HprError, Natural, Rational};
use crate::report::{ser_display, ser_opt_display};

const MAX_RETRY_PRECISION: u32 = 4096;

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// Runs `f` at `prec`, doubling the precision while the answer is undecidable.
fn with_retry<T>(prec: u32, f: impl Fn(u32) -> Result<T, HprError>) -> Result<T, HprError> {
    let mut p = prec;
    loop {
        match f(p) {
            Err(HprError::Undecidable { .. }) if p < MAX_RETRY_PRECISION => p *= 2,
            other => return other,
        }
    }
}

/// `ln(i!)`.
fn ln_factorial(i: u64, prec: u32) -> Result<Hpr, HprError> {
    Hpr::ln_natural(&factorial(i), prec)
}

/// `log c_d = -sum_{i=3}^{d-1} (i-2)! log(i!)`.
pub fn frak_c_log(d: u64, prec: u32) -> Result<Hpr, BoundsError> {
    if d < 3 {
        return Err(BoundsError::Domain("frak_c_log needs d >= 3".into()));
    }
    let mut acc = Hpr::zero(prec);
    for i in 3..d {
        let term = ln_factorial(i, prec)?.mul_int(BigInt::from(factorial(i - 2)));
        acc = acc.sub(&term);
    }
    Ok(acc)
}

/// `Omega(d,m) = c_d (m-d-1)^{(d-2)!}`, in the log domain and, when the
/// exponents are small enough, as an exact rational.
#[derive(Clone, Debug)]
pub struct OmegaValue {
    pub log: Hpr,
    pub exact: Option<Rational>,
}

/// Largest `(d-2)!` for which the linear-domain value is materialized.
const OMEGA_EXACT_EXPONENT_CAP: u64 = 720;

pub fn omega(d: u64, m: u64, prec: u32) -> Result<OmegaValue, BoundsError> {
    if d < 4 || m < d + 2 {
        return Err(BoundsError::Domain(format!(
            "omega needs d >= 4 and m >= d + 2 (got d={d}, m={m})"
        )));
    }
    let e = factorial(d - 2);
    let base = m - d - 1;
    let log = frak_c_log(d, prec)?.add(&Hpr::ln_int(base, prec)?.mul_int(BigInt::from(e.clone())));
    let exact = match e.to_u64() {
        Some(ex) if ex <= OMEGA_EXACT_EXPONENT_CAP => {
            let mut denom = BigInt::one();
            for i in 3..d {
                let power = factorial(i - 2).to_u32().expect("small exponent");
                denom *= BigInt::from(factorial(i)).pow(power);
            }
            let numer = BigInt::from(base).pow(ex as u32);
            Some(Rational::new(numer, denom))
        }
        _ => None,
    };
    Ok(OmegaValue { log, exact })
}

fn omega_domain(d: u64, m: u64) -> Result<(), BoundsError> {
    if d < 6 || m < d * d - d + 4 {
        return Err(BoundsError::Domain(format!(
            "the Omega condition needs d >= 6 and m >= d^2 - d + 4 (got d={d}, m={m})"
        )));
    }
    Ok(())
}

/// `m^2 - 5m/2 + 1/2 < (d+1) + (d+1/2) log d + 6 (d-3)! (d - 2 - log(d-1))`.
pub fn omega_condition_check(d: u64, m: u64, prec: u32) -> Result<bool, BoundsError> {
    omega_domain(d, m)?;
    let mm = int(m);
    let lhs = &mm * &mm - rat(5, 2) * &mm + rat(1, 2);
    let fact = BigInt::from(factorial(d - 3));
    Ok(with_retry(prec, |p| {
        let ln_d = Hpr::ln_int(d, p)?;
        let ln_d1 = Hpr::ln_int(d - 1, p)?;
        let rhs = Hpr::from_int(d + 1, p)
            .add(&ln_d.mul_int(2 * d + 1).div_int(2))
            .add(&Hpr::from_int(d - 2, p).sub(&ln_d1).mul_int(fact.clone() * 6));
        Hpr::from_rational(&lhs, p).try_lt(&rhs)
    })?)
}

/// `m^2 - 5m/2 <= 6 (d-3)! + 2d + 1`, decided exactly.
pub fn simplified_omega_check(d: u64, m: u64) -> Result<bool, BoundsError> {
    omega_domain(d, m)?;
    let lhs = BigInt::from(2 * m * m) - BigInt::from(5 * m);
    let rhs = (BigInt::from(factorial(d - 3)) * 6 + BigInt::from(2 * d + 1)) * 2;
    Ok(lhs <= rhs)
}

/// `theta(d, m-d-1) <= m - d - 2 + C(m, d)`.
pub fn theta_upper_bound_check(d: u64, m: u64) -> Result<bool, BoundsError> {
    if d < 4 || m < d + 2 {
        return Err(BoundsError::Domain(format!(
            "needs d >= 4 and m >= d + 2 so that k = m-d-1 >= 1 (got d={d}, m={m})"
        )));
    }
    Ok(theta(d, m - d - 1)? <= nat(m - d - 2) + binom_u(m, d))
}

/// `phi(d+1, m-d-2) < phi(d, m-d-1)`, compared exactly.
pub fn varphi_condition_check(d: u64, m: u64) -> Result<bool, BoundsError> {
    let threshold = 2 * d * d + 7 * d + 6;
    if d < 4 || m < threshold {
        return Err(BoundsError::Domain(format!(
            "needs d >= 4 and m >= 2d^2+7d+6 = {threshold} (got d={d}, m={m})"
        )));
    }
    Ok(phi(d + 1, m - d - 2)?.value < phi(d, m - d - 1)?.value)
}

/// One evaluated analytic inequality.
#[derive(Clone, Debug, Serialize)]
pub struct AnalyticCheck {
    pub family: &'static str,
    pub parameter: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyticReport {
    pub checks: Vec<AnalyticCheck>,
    pub all_pass: bool,
}

fn decided(
    family: &'static str,
    parameter: u64,
    prec: u32,
    sides: impl Fn(u32) -> Result<(Hpr, Hpr), HprError>,
) -> Result<AnalyticCheck, HprError> {
    with_retry(prec, |p| {
        let (lhs, rhs) = sides(p)?;
        let pass = lhs.try_le(&rhs)?;
        Ok(AnalyticCheck {
            family,
            parameter,
            lhs: lhs.to_f64(),
            rhs: rhs.to_f64(),
            pass,
        })
    })
}

/// Stirling's two-sided bound for `a in 1..=a_max`, the bound on
/// `log(C_d/(d+1))` and the lower bound on `log c_d` for `d in 4..=d_max`.
pub fn analytic_inequality_suite(a_max: u64, d_max: u64, prec: u32) -> Result<AnalyticReport, BoundsError> {
    let mut jobs: Vec<(&'static str, u64)> = Vec::new();
    for a in 1..=a_max {
        jobs.push(("stirling_lower", a));
        jobs.push(("stirling_upper", a));
    }
    for d in 4..=d_max {
        jobs.push(("log_central_binomial", d));
        jobs.push(("log_frak_c_lower", d));
    }
    let checks: Result<Vec<AnalyticCheck>, HprError> = jobs
        .par_iter()
        .map(|&(family, x)| match family {
            "stirling_lower" => decided(family, x, prec, |p| {
                // log(sqrt(2 pi)) + (a + 1/2) log a - a <= log a!
                let half_log_2pi = Hpr::ln_int(2, p)?.add(&Hpr::pi(p).ln()?).div_int(2);
                let lhs = half_log_2pi
                    .add(&Hpr::ln_int(x, p)?.mul_int(2 * x + 1).div_int(2))
                    .sub(&Hpr::from_int(x, p));
                Ok((lhs, ln_factorial(x, p)?))
            }),
            "stirling_upper" => decided(family, x, prec, |p| {
                // log a! <= (a + 1/2) log a + 1 - a
                let rhs = Hpr::ln_int(x, p)?
                    .mul_int(2 * x + 1)
                    .div_int(2)
                    .add(&Hpr::from_int(BigInt::from(1) - BigInt::from(x), p));
                Ok((ln_factorial(x, p)?, rhs))
            }),
            "log_central_binomial" => decided(family, x, prec, |p| {
                let c = super::central_binomial(x);
                let q = Rational::new(BigInt::from(c), BigInt::from(x + 1));
                let lhs = Hpr::ln_rational(&q, p)?;
                Ok((lhs, Hpr::from_rational(&rat(2 * x as i64 + 3, 2), p)))
            }),
            _ => decided(family, x, prec, |p| {
                // 2(d-2)! - 2(d-2)! log(d-1) - 2(d-3)! log(d-1) <= log c_d
                let f2 = BigInt::from(factorial(x - 2));
                let f3 = BigInt::from(factorial(x - 3));
                let l = Hpr::ln_int(x - 1, p)?;
                let lhs = Hpr::from_int(f2.clone() * 2, p)
                    .sub(&l.mul_int(f2 * 2))
                    .sub(&l.mul_int(f3 * 2));
                let rhs = frak_c_log(x, p).map_err(|e| match e {
                    BoundsError::Precision(h) => h,
                    _ => HprError::LogDomain,
                })?;
                Ok((lhs, rhs))
            }),
        })
        .collect();
    let checks = checks?;
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(AnalyticReport { checks, all_pass })
}

/// How one link of the psi chain was compared.
#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityStep {
    pub d: u64,
    /// `"materialized"` when both chain values were computed in full,
    /// `"aligned"` when compared through the shared tail of the recursion.
    pub method: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityReport {
    pub m: u64,
    pub holds: bool,
    pub steps: Vec<MonotonicityStep>,
}

/// Bit budget above which chain values are not materialized.
const PSI_BIT_BUDGET: u64 = 1 << 22;

/// `psi(d,k)_{d-2}` (with `psi(2,k)_0 = k`), unless it would exceed the bit budget.
fn psi_penultimate_budgeted(d: u64, k: u64) -> Option<Natural> {
    let mut x = nat(k);
    for i in 0..d.saturating_sub(2) {
        let e = d - i;
        if x.bits().saturating_mul(e) > PSI_BIT_BUDGET {
            return None;
        }
        x = psi_step(&x, e);
    }
    Some(x)
}

/// Checks `psi(d, m-d-1)_{d-2} <= psi(d+1, m-d-2)_{d-1}` for `2 <= d <= m-3`.
///
/// Both sides end with the same maps `x -> x + ceil(C(x+e,e)/(x+1))` for
/// `e = d, ..., 3`, each strictly increasing in `x` (the ratio of consecutive
/// values of `C(x+e,e)/(x+1)` is `(x+e+1)/(x+2) >= 1`). So the comparison is
/// decided by the inputs to that shared tail, `k` against
/// `step_{d+1}(k-1)`; this is used whenever the full values are too large.
pub fn psi_monotonicity_check(m: u64) -> Result<MonotonicityReport, BoundsError> {
    if m < 5 {
        return Err(BoundsError::Domain("psi monotonicity needs m >= 5".into()));
    }
    let steps: Vec<MonotonicityStep> = (2..=m - 3)
        .into_par_iter()
        .map(|d| {
            let k = m - d - 1;
            let low = psi_penultimate_budgeted(d, k);
            let high = psi_penultimate_budgeted(d + 1, k - 1);
            match (low, high) {
                (Some(a), Some(b)) => MonotonicityStep {
                    d,
                    method: "materialized",
                    holds: a <= b,
                },
                _ => MonotonicityStep {
                    d,
                    method: "aligned",
                    holds: nat(k) <= psi_step(&nat(k - 1), d + 1),
                },
            }
        })
        .collect();
    let holds = steps.iter().all(|s| s.holds);
    Ok(MonotonicityReport { m, holds, steps })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonRow {
    pub m: u64,
    #[serde(serialize_with = "ser_display")]
    pub g: Natural,
    #[serde(serialize_with = "ser_display")]
    pub f: Natural,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub m_max: u64,
    pub g_le_f: bool,
    pub g_nondecreasing: bool,
    pub f_nondecreasing: bool,
    pub equality_set: Vec<u64>,
    pub rows: Vec<ComparisonRow>,
}

/// The set on which `G(m) = F(m)` is expected to hold.
pub const EXPECTED_EQUALITY_SET: [u64; 7] = [1, 2, 3, 4, 5, 15, 16];

impl ComparisonReport {
    pub fn equality_set_matches(&self) -> bool {
        let expected: Vec<u64> = EXPECTED_EQUALITY_SET
            .iter()
            .copied()
            .filter(|&m| m <= self.m_max)
            .collect();
        self.equality_set == expected
    }
}

/// Verifies `G(m) <= F(m)` on `1..=m_max` and records where equality holds.
pub fn comparison_check(m_max: u64) -> Result<ComparisonReport, BoundsError> {
    if m_max < 1 {
        return Err(BoundsError::Domain("comparison needs m_max >= 1".into()));
    }
    let rows: Result<Vec<ComparisonRow>, BoundsError> = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            Ok(ComparisonRow {
                m,
                g: g(m)?.value,
                f: f(m)?.value,
            })
        })
        .collect();
    let rows = rows?;
    let g_le_f = rows.iter().all(|r| r.g <= r.f);
    let equality_set = rows.iter().filter(|r| r.g == r.f).map(|r| r.m).collect();
    let g_nondecreasing = rows.windows(2).all(|w| w[0].g <= w[1].g);
    let f_nondecreasing = rows.windows(2).all(|w| w[0].f <= w[1].f);
    Ok(ComparisonReport {
        m_max,
        g_le_f,
        g_nondecreasing,
        f_nondecreasing,
        equality_set,
        rows,
    })
}

/// `F(m) / G(m) > d + 1` at `m = 2d^2 + 11d + 15`.
#[derive(Clone, Debug, Serialize)]
pub struct RatioCheckpoint {
    pub d: u64,
    pub m: u64,
    #[serde(serialize_with = "ser_display")]
    pub g: Natural,
    #[serde(serialize_with = "ser_display")]
    pub f: Natural,
    pub g_witness: Option<u64>,
    pub f_witness: Option<u64>,
    /// Decimal approximation of the ratio, for display only.
    #[serde(serialize_with = "ser_opt_display")]
    pub ratio_approx: Option<String>,
    pub holds: bool,
}

pub fn ratio_checkpoint(d: u64) -> Result<RatioCheckpoint, BoundsError> {
    let m = 2 * d * d + 11 * d + 15;
    let (gv, fv): (Result<Minimized, _>, Result<Minimized, _>) = rayon::join(|| g(m), || f(m));
    let (gv, fv) = (gv?, fv?);
    let holds = fv.value > &gv.value * (d + 1);
    let ratio = Rational::new(BigInt::from(fv.value.clone()), BigInt::from(gv.value.clone()));
    let approx = ratio_scientific(&ratio);
    Ok(RatioCheckpoint {
        d,
        m,
        g: gv.value,
        f: fv.value,
        g_witness: gv.witness,
        f_witness: fv.witness,
        ratio_approx: Some(approx),
        holds,
    })
}

/// Three significant digits in scientific notation.
fn ratio_scientific(q: &Rational) -> String {
    let int_part = q.to_integer();
    let digits = int_part.to_string();
    if digits.len() <= 6 {
        return crate::exact_core::round_half_even(q, 3);
    }
    let exp = digits.len() - 1;
    format!("{}.{}e{}", &digits[..1], &digits[1..3], exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_examples() {
        let o = omega(5, 10, 256).unwrap();
        assert_eq!(o.exact.clone().unwrap(), rat(4096, 3456));
        assert!((o.log.to_f64().exp() - 1.185).abs() < 1e-3);
        assert_eq!(omega(4, 10, 256).unwrap().exact.unwrap(), rat(25, 6));
        let big = omega(5, 100, 256).unwrap();
        let approx = big.log.to_f64().exp();
        assert!((approx / 1.996e8 - 1.0).abs() < 1e-3, "{approx}");
        assert!(omega(3, 10, 256).is_err());
    }

    #[test]
    fn simplified_omega_examples() {
        assert!(simplified_omega_check(10, 100).unwrap());
        assert!(simplified_omega_check(11, 378).unwrap());
        assert!(!simplified_omega_check(6, 34).unwrap());
        assert!(simplified_omega_check(6, 20).is_err());
    }

    #[test]
    fn full_omega_condition_is_decidable() {
        assert!(omega_condition_check(11, 378, 256).unwrap());
        assert!(!omega_condition_check(6, 34, 256).unwrap());
    }

    #[test]
    fn theta_and_varphi_examples() {
        assert!(theta_upper_bound_check(4, 6).unwrap());
        assert!(theta_upper_bound_check(5, 17).unwrap());
        assert!(theta_upper_bound_check(4, 5).is_err());
        assert!(varphi_condition_check(4, 66).unwrap());
        assert!(varphi_condition_check(5, 91).unwrap());
        assert!(varphi_condition_check(4, 60).is_err());
    }

    #[test]
    fn analytic_small_sweep() {
        let r = analytic_inequality_suite(20, 10, 256).unwrap();
        assert!(r.all_pass);
        let d4 = r
            .checks
            .iter()
            .find(|c| c.family == "log_frak_c_lower" && c.parameter == 4)
            .unwrap();
        assert!((d4.lhs + 2.5916).abs() < 1e-3 && (d4.rhs + 1.7918).abs() < 1e-3);
    }

    #[test]
    fn monotone_small() {
        let r = psi_monotonicity_check(10).unwrap();
        assert!(r.holds);
        assert!(r.steps.iter().all(|s| s.method == "materialized"));
    }

    #[test]
    fn comparison_small() {
        let r = comparison_check(20).unwrap();
        assert!(r.g_le_f && r.equality_set_matches());
        let row18 = &r.rows[17];
        let ratio = Rational::new(BigInt::from(row18.f.clone()), BigInt::from(row18.g.clone()));
        assert_eq!(crate::exact_core::round_half_even(&ratio, 3), "5.000");
    }
}

/// Outcome of a finite sweep of an exact identity or inequality.
#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub name: &'static str,
    pub cases: usize,
    /// Parameters of every failing case.
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn from_cases(name: &'static str, cases: Vec<(String, bool)>) -> Self {
        let n = cases.len();
        let failures = cases.into_iter().filter(|(_, ok)| !ok).map(|(p, _)| p).collect();
        Self {
            name,
            cases: n,
            failures,
        }
    }
}

/// `sum_{i=2}^{d} C(r+i, i) = C(r+d+1, d) - (r+2)` for `1 <= r, d <= max`.
pub fn combinatorial_identity_sweep(max: u64) -> SweepReport {
    let cases = (1..=max)
        .into_par_iter()
        .flat_map_iter(|r| {
            (1..=max).map(move |d| {
                let lhs: Natural = (2..=d).map(|i| binom_u(r + i, i)).sum();
                let rhs = BigInt::from(binom_u(r + d + 1, d)) - BigInt::from(r + 2);
                (format!("r={r}, d={d}"), BigInt::from(lhs) == rhs)
            })
        })
        .collect();
    SweepReport::from_cases("combinatorial identity", cases)
}

/// `theta(d,k)` is the least `r` with nonnegative Debarre-Manivel slack for
/// type `(2,...,d)`, for `3 <= d <= d_max`, `1 <= k <= k_max`.
pub fn theta_minimality_sweep(d_max: u64, k_max: u64) -> Result<SweepReport, BoundsError> {
    let mut cases = Vec::new();
    for d in 3..=d_max {
        let t = super::chain_type(d as u32);
        for k in 1..=k_max {
            let th = theta(d, k)?;
            let kk = nat(k);
            let at = super::debarre_manivel_ok(&t, &th, &kk)?.holds;
            let below = th > kk && super::debarre_manivel_ok(&t, &(&th - 1u32), &kk)?.holds;
            cases.push((format!("d={d}, k={k}"), at && !below));
        }
    }
    Ok(SweepReport::from_cases("theta minimality", cases))
}

/// [`theta_upper_bound_check`] for `4 <= d` and `d + 2 <= m <= m_max`.
pub fn theta_upper_bound_sweep(m_max: u64) -> Result<SweepReport, BoundsError> {
    let mut cases = Vec::new();
    for m in 6..=m_max {
        for d in 4..=m - 2 {
            cases.push((format!("d={d}, m={m}"), theta_upper_bound_check(d, m)?));
        }
    }
    Ok(SweepReport::from_cases("theta upper bound", cases))
}
