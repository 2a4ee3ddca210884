//! Mechanical audit of the arithmetic in the plane-construction proofs.
//!
//! Each case is a declarative transcription of the numbers the proof prints
//! (types, hyperplane counts, splits, dimension identities, degrees). The
//! auditor recomputes every one of them from first principles and compares.
//! Printed values that disagree with a recomputation which itself closes up
//! are `Flagged`; a recomputation that does not close up is a `Fail`.

use std::fmt::{self, Display};
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bounds::{self, BoundsError};
use crate::exact_core::{binom_u, factorial, nat, Natural};
use crate::polar::{cone_type, cone_type_chain, IntersectionType};
use crate::report::ser_display;

/// Ambient dimension `rho(k)` needed for a `k`-plane on `tau_{1,2,3,4}`.
pub const RHO: [u64; 9] = [25, 60, 264, 806, 1773, 8905, 34546, 77040, 612_581];
/// Largest extension degree `eta(k)` needed for that plane.
pub const ETA: [u64; 9] = [36, 108, 324, 972, 2916, 8748, 26244, 78732, 236_196];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The printed value disagrees with the recomputation, but the recomputed
    /// construction still closes up.
    Flagged,
}

impl Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAG",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub description: String,
    pub expected: Vec<String>,
    pub computed: Vec<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LedgerReport {
    pub case: String,
    pub checks: Vec<Check>,
    #[serde(serialize_with = "ser_display")]
    pub max_extension_degree: Natural,
    /// `eta(k)` for the `k` cases.
    #[serde(serialize_with = "crate::report::ser_opt_display")]
    pub eta: Option<Natural>,
    pub residuals: Vec<f64>,
    pub seed: Option<u64>,
}

impl LedgerReport {
    /// No check failed (flags are allowed).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn find(&self, needle: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.description.contains(needle))
    }
}

/// Which proof to audit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LedgerCase {
    /// The `n-6` construction (a plane on `tau_{1,2,3}` at `n = 19`).
    N6,
    /// A `k`-plane on `tau_{1,2,3,4}`, `1 <= k <= 9`.
    K(u32),
    Wolfson,
}

impl LedgerCase {
    pub fn all() -> Vec<LedgerCase> {
        let mut v = vec![LedgerCase::N6];
        v.extend((1..=9).map(LedgerCase::K));
        v
    }
}

impl Display for LedgerCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LedgerCase::N6 => f.write_str("n6"),
            LedgerCase::K(k) => write!(f, "k{k}"),
            LedgerCase::Wolfson => f.write_str("wolfson"),
        }
    }
}

impl FromStr for LedgerCase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "n6" => Ok(LedgerCase::N6),
            "wolfson" => Ok(LedgerCase::Wolfson),
            _ => s
                .strip_prefix('k')
                .and_then(|k| k.parse::<u32>().ok())
                .filter(|k| (1..=9).contains(k))
                .map(LedgerCase::K)
                .ok_or_else(|| format!("unknown ledger case '{s}' (expected n6, k1..k9 or wolfson)")),
        }
    }
}

/// A printed application of the quadric plane proposition:
/// `lhs = (a+1)(b)+c`, used "with k = k, l = l" to get a `plane`-plane over
/// an extension of degree at most `degree`.
struct Step {
    lhs: u64,
    a: u64,
    b: u64,
    c: u64,
    k: u64,
    l: u64,
    plane: u64,
    degree: u64,
}

#[allow(clippy::too_many_arguments)]
const fn st(lhs: u64, a: u64, b: u64, c: u64, k: u64, l: u64, plane: u64, degree: u64) -> Step {
    Step {
        lhs,
        a,
        b,
        c,
        k,
        l,
        plane,
        degree,
    }
}

/// Printed numbers of one `k` case.
struct CaseText {
    ambient: u64,
    /// Degree of the extension giving the starting point(s).
    base_degree: u64,
    cone: &'static [(u32, u64)],
    hyperplanes: u64,
    linear_dim: u64,
    quadrics: u64,
    /// `(s, 2^s)` for "2^s is the largest power of 2 less than 4*3^(k+1)".
    power: Option<(u32, u64)>,
    split: &'static [u64],
    steps: &'static [Step],
    remaining: &'static [(u32, u64)],
    /// Printed `K - m >= k`.
    dim_claim: (u64, u64, u64),
    final_degree: u64,
}

static CASES: [CaseText; 9] = [
    CaseText {
        ambient: 23,
        base_degree: 24,
        cone: &[(4, 1), (3, 2), (2, 3), (1, 4)],
        hyperplanes: 4,
        linear_dim: 19,
        quadrics: 3,
        power: None,
        split: &[3],
        steps: &[st(19, 4, 3, 4, 4, 3, 4, 8)],
        remaining: &[(4, 1), (1, 2)],
        dim_claim: (4, 3, 1),
        final_degree: 36,
    },
    CaseText {
        ambient: 58,
        base_degree: 36,
        cone: &[(4, 1), (3, 3), (2, 6), (1, 10)],
        hyperplanes: 10,
        linear_dim: 48,
        quadrics: 6,
        power: None,
        split: &[6],
        steps: &[st(48, 5, 6, 5, 5, 6, 5, 64)],
        remaining: &[(4, 1), (3, 3)],
        dim_claim: (6, 4, 2),
        final_degree: 108,
    },
    CaseText {
        ambient: 262,
        base_degree: 108,
        cone: &[(4, 1), (3, 4), (2, 10), (1, 20)],
        hyperplanes: 35,
        linear_dim: 242,
        quadrics: 10,
        power: Some((8, 256)),
        split: &[2, 8],
        steps: &[st(242, 80, 2, 80, 75, 2, 80, 4), st(80, 8, 8, 8, 8, 8, 8, 256)],
        remaining: &[(4, 1), (3, 4)],
        dim_claim: (8, 5, 3),
        final_degree: 324,
    },
    CaseText {
        ambient: 804,
        base_degree: 324,
        cone: &[(4, 1), (3, 5), (2, 15), (1, 35)],
        hyperplanes: 35,
        linear_dim: 769,
        quadrics: 15,
        power: Some((9, 512)),
        split: &[6, 9],
        steps: &[st(769, 109, 6, 109, 109, 6, 109, 64), st(109, 10, 9, 10, 10, 9, 8, 512)],
        remaining: &[(4, 1), (3, 5)],
        dim_claim: (10, 6, 4),
        final_degree: 972,
    },
    CaseText {
        ambient: 1771,
        base_degree: 972,
        cone: &[(4, 1), (3, 6), (2, 21), (1, 56)],
        hyperplanes: 56,
        linear_dim: 1715,
        quadrics: 21,
        power: Some((11, 2048)),
        split: &[10, 11],
        steps: &[
            st(1715, 155, 10, 155, 155, 10, 155, 1024),
            st(155, 12, 11, 12, 12, 11, 10, 2048),
        ],
        remaining: &[(4, 1), (3, 6)],
        dim_claim: (12, 7, 5),
        final_degree: 2916,
    },
    CaseText {
        ambient: 8903,
        base_degree: 2916,
        cone: &[(4, 1), (3, 7), (2, 28), (1, 84)],
        hyperplanes: 84,
        linear_dim: 8819,
        quadrics: 28,
        power: Some((13, 8192)),
        split: &[2, 13, 13],
        steps: &[
            st(8819, 2939, 2, 2939, 2939, 2, 2939, 4),
            st(2939, 209, 13, 209, 209, 13, 209, 8192),
            st(209, 14, 13, 14, 14, 13, 14, 8192),
        ],
        remaining: &[(4, 1), (3, 7)],
        dim_claim: (14, 8, 6),
        final_degree: 8748,
    },
    CaseText {
        ambient: 34544,
        base_degree: 8748,
        cone: &[(4, 1), (3, 8), (2, 36), (1, 120)],
        hyperplanes: 120,
        linear_dim: 34424,
        quadrics: 36,
        power: Some((14, 16384)),
        split: &[8, 14, 14],
        steps: &[
            st(34424, 3824, 8, 3824, 3824, 8, 3824, 256),
            st(3824, 254, 14, 254, 254, 14, 254, 16384),
            st(254, 16, 14, 16, 16, 14, 16, 16384),
        ],
        remaining: &[(4, 1), (3, 8)],
        dim_claim: (16, 9, 7),
        final_degree: 26244,
    },
    CaseText {
        ambient: 77038,
        base_degree: 26244,
        cone: &[(4, 1), (3, 9), (2, 45), (1, 165)],
        hyperplanes: 165,
        linear_dim: 76873,
        quadrics: 45,
        power: Some((16, 65536)),
        split: &[13, 16, 16],
        steps: &[
            st(76873, 5490, 13, 5490, 5490, 13, 5490, 8192),
            st(5490, 322, 16, 322, 322, 16, 322, 65536),
            st(322, 18, 16, 18, 18, 16, 18, 65536),
        ],
        remaining: &[(4, 1), (3, 9)],
        dim_claim: (18, 10, 8),
        final_degree: 78732,
    },
    CaseText {
        ambient: 612_579,
        base_degree: 78732,
        cone: &[(4, 1), (3, 10), (2, 55), (1, 220)],
        hyperplanes: 220,
        linear_dim: 612_359,
        quadrics: 55,
        power: Some((17, 131_072)),
        split: &[4, 17, 17, 17],
        steps: &[
            st(612_359, 122_471, 4, 122_471, 122_471, 4, 122_471, 16),
            st(122_471, 6803, 17, 6805, 6805, 17, 6805, 131_072),
            st(6803, 377, 17, 377, 18, 16, 18, 65536),
            st(377, 20, 17, 20, 18, 16, 20, 131_072),
        ],
        remaining: &[(4, 1), (3, 10)],
        dim_claim: (20, 11, 9),
        final_degree: 236_196,
    },
];

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    /// A printed value against its recomputation: agreement passes, anything
    /// else is flagged.
    fn printed(&mut self, description: impl Into<String>, printed: impl Display, computed: impl Display) {
        let (p, c) = (printed.to_string(), computed.to_string());
        let ok = p == c;
        self.0.push(Check {
            description: description.into(),
            expected: vec![p],
            computed: vec![c],
            status: if ok { Status::Pass } else { Status::Flagged },
            note: (!ok).then(|| "printed value differs from recomputation".to_string()),
        });
    }

    /// A property of the recomputed construction itself.
    fn require(&mut self, description: impl Into<String>, expected: Vec<String>, computed: Vec<String>, ok: bool) {
        self.0.push(Check {
            description: description.into(),
            expected,
            computed,
            status: if ok { Status::Pass } else { Status::Fail },
            note: None,
        });
    }

    fn equal(&mut self, description: impl Into<String>, expected: impl Display, computed: impl Display) {
        let (e, c) = (expected.to_string(), computed.to_string());
        let ok = e == c;
        self.require(description, vec![e], vec![c], ok);
    }

    fn note_last(&mut self, note: impl Into<String>) {
        if let Some(c) = self.0.last_mut() {
            c.note = Some(note.into());
        }
    }
}

fn ty(pairs: &[(u32, u64)]) -> IntersectionType {
    IntersectionType::new(pairs)
}

fn to_u64(n: &Natural) -> u64 {
    n.to_u64().expect("ledger quantities fit in 64 bits")
}

/// `eta(k) = 4 * 3^(k+1)`.
pub fn eta(k: u32) -> u64 {
    4 * 3u64.pow(k + 1)
}

/// Largest `s` with `2^s < bound`.
fn largest_power_below(bound: u64) -> u32 {
    63 - (bound - 1).leading_zeros()
}

/// Splits `q` quadrics into groups of at most `s`, the short group first.
fn split_quadrics(q: u64, s: u64) -> Vec<u64> {
    let groups = q.div_ceil(s);
    let mut out = vec![s; groups as usize];
    out[0] = q - (groups - 1) * s;
    out
}

/// One recomputed application of the quadric plane proposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneStep {
    /// Dimension of the linear space the quadrics live in.
    pub ambient: u64,
    pub quadrics: u64,
    pub plane: u64,
    pub degree: u64,
}

/// The recomputed `k`-plane construction on `tau_{1,2,3,4}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub k: u32,
    pub cone: IntersectionType,
    pub hyperplanes: u64,
    pub quadrics: u64,
    pub power: u32,
    pub split: Vec<u64>,
    pub steps: Vec<PlaneStep>,
    pub remaining: IntersectionType,
    /// Smallest ambient dimension the construction needs: `rho(k)`.
    pub rho: u64,
    pub final_degree: u64,
}

/// Recomputes the construction for a `k`-plane from the cone type alone.
///
/// The last plane must have dimension `2k+2` so that the `k+2` remaining
/// generators (a quartic and `k+1` cubics) cut out something of dimension
/// at least `k`; each earlier plane is the smallest `r` with
/// `r >= (K+1)l + K` for the next step.
pub fn construction(k: u32) -> Construction {
    let cone = cone_type_chain(4, k);
    let hyperplanes = cone.count(1);
    let quadrics = cone.count(2);
    let e = eta(k);
    let power = largest_power_below(e);
    let split = split_quadrics(quadrics, u64::from(power));
    let mut plane = 2 * u64::from(k) + 2;
    let mut steps = Vec::new();
    for &l in split.iter().rev() {
        let ambient = (plane + 1) * l + plane;
        steps.push(PlaneStep {
            ambient,
            quadrics: l,
            plane,
            degree: 1 << l,
        });
        plane = ambient;
    }
    steps.reverse();
    let remaining = cone.at_least(3);
    let final_degree = to_u64(&remaining.degree_product());
    Construction {
        k,
        rho: steps[0].ambient + hyperplanes + 2,
        cone,
        hyperplanes,
        quadrics,
        power,
        split,
        steps,
        remaining,
        final_degree,
    }
}

/// Audits one proof case.
pub fn audit_ledger(case: LedgerCase) -> Result<LedgerReport, BoundsError> {
    match case {
        LedgerCase::N6 => audit_n6(),
        LedgerCase::K(k) if (1..=9).contains(&k) => audit_k(k),
        LedgerCase::K(k) => Err(BoundsError::Domain(format!("ledger case k{k} is outside 1..9"))),
        LedgerCase::Wolfson => wolfson_pipeline_audit(),
    }
}

fn audit_k(k: u32) -> Result<LedgerReport, BoundsError> {
    let text = &CASES[(k - 1) as usize];
    let rec = construction(k);
    let ku = u64::from(k);
    let e = eta(k);
    let mut c = Checks::default();

    c.equal(format!("eta({k}) = 4*3^{}", k + 1), ETA[(k - 1) as usize], e);
    c.equal(
        format!("rho({k}) = first plane-step dimension + hyperplanes + 2"),
        RHO[(k - 1) as usize],
        rec.rho,
    );
    c.printed("ambient dimension rho(k) - 2", text.ambient, RHO[(k - 1) as usize] - 2);
    if k == 1 {
        c.printed(
            "degree of the base point P_0 on type (1,2,3,4)",
            text.base_degree,
            IntersectionType::from_degrees(&[1, 2, 3, 4]).degree_product(),
        );
    } else {
        c.printed(
            format!("previous case extension eta({})", k - 1),
            text.base_degree,
            eta(k - 1),
        );
    }

    let iterated = cone_type(&IntersectionType::from_degrees(&[1, 2, 3, 4]), k);
    c.equal(
        format!("{k}-th polar cone type, iterated vs closed form"),
        &iterated,
        &rec.cone,
    );
    c.printed(format!("{k}-th polar cone type"), ty(text.cone), &rec.cone);
    c.printed("hyperplane count C(k+3,3)", text.hyperplanes, binom_u(ku + 3, 3));
    c.equal("hyperplanes in the cone type", binom_u(ku + 3, 3), rec.hyperplanes);
    let linear_dim = RHO[(k - 1) as usize] - 2 - rec.hyperplanes;
    c.printed("dimension of the linear part", text.linear_dim, linear_dim);
    c.printed("quadric count C(k+2,2)", text.quadrics, rec.quadrics);

    let pow = 1u64 << rec.power;
    c.require(
        format!("2^{} is the largest power of 2 below {e}", rec.power),
        vec![format!("{pow} < {e} <= {}", 2 * pow)],
        vec![pow.to_string(), e.to_string()],
        pow < e && 2 * pow >= e,
    );
    match text.power {
        Some((s, v)) => {
            c.printed("printed largest power of 2 (exponent)", s, rec.power);
            c.printed("printed largest power of 2 (value)", v, pow);
        }
        None => c.require(
            "no split needed: quadrics fit one group",
            vec![format!("<= {}", rec.power)],
            vec![rec.quadrics.to_string()],
            rec.quadrics <= u64::from(rec.power),
        ),
    }
    c.printed("quadric split sizes", fmt_list(text.split), fmt_list(&rec.split));
    c.equal(
        "split covers every quadric",
        rec.quadrics,
        rec.split.iter().sum::<u64>(),
    );

    c.require(
        "first plane step fits the linear part",
        vec![format!("<= {linear_dim}")],
        vec![rec.steps[0].ambient.to_string()],
        rec.steps[0].ambient <= linear_dim,
    );
    if text.steps.len() != rec.steps.len() {
        c.equal("number of plane steps", text.steps.len(), rec.steps.len());
    }
    // The base point extension only counts in the first case; later cases
    // start from the previous case's plane.
    let mut max_degree = if k == 1 {
        to_u64(&IntersectionType::from_degrees(&[1, 2, 3, 4]).degree_product())
    } else {
        0
    };
    for (j, (p, r)) in text.steps.iter().zip(&rec.steps).enumerate() {
        let n = j + 1;
        let rhs = (p.a + 1) * p.b + p.c;
        let shown = format!("{} = ({}+1)({})+{}", p.lhs, p.a, p.b, p.c);
        if rhs == p.lhs {
            c.printed(format!("step {n}: identity {shown}"), p.lhs, rhs);
        } else {
            c.printed(format!("step {n}: identity {shown} as printed"), p.lhs, rhs);
            c.note_last(format!("right-hand side evaluates to {rhs}"));
        }
        let threshold = (r.plane + 1) * r.quadrics + r.plane;
        c.require(
            format!(
                "step {n}: recomputed threshold {} >= ({}+1)({})+{}",
                r.ambient, r.plane, r.quadrics, r.plane
            ),
            vec![threshold.to_string()],
            vec![r.ambient.to_string()],
            r.ambient >= threshold,
        );
        c.printed(format!("step {n}: ambient of the quadric group"), p.lhs, r.ambient);
        c.printed(format!("step {n}: plane dimension k used"), p.k, r.plane);
        c.printed(format!("step {n}: quadric count l used"), p.l, r.quadrics);
        c.printed(format!("step {n}: plane produced"), p.plane, r.plane);
        c.printed(format!("step {n}: extension degree 2^l"), p.degree, r.degree);
        c.require(
            format!("step {n}: extension degree below eta({k})"),
            vec![format!("< {e}")],
            vec![r.degree.to_string()],
            r.degree < e,
        );
        max_degree = max_degree.max(r.degree);
    }

    let last = rec.steps.last().expect("at least one step").plane;
    let m = rec.remaining.total();
    c.printed("remaining type on the last plane", ty(text.remaining), &rec.remaining);
    c.printed(
        "remaining dimension bound K - (k+2) >= k",
        format!("{} - {} >= {}", text.dim_claim.0, text.dim_claim.1, text.dim_claim.2),
        format!("{last} - {m} >= {k}"),
    );
    c.require(
        "remaining intersection has dimension at least k",
        vec![format!(">= {k}")],
        vec![(last - m).to_string()],
        last >= m + ku,
    );
    c.printed("final point degree 4*3^(k+1)", text.final_degree, rec.final_degree);
    max_degree = max_degree.max(rec.final_degree);
    c.equal("max extension degree equals eta(k)", e, max_degree);

    let slice = to_u64(&(factorial(ku + 4) / nat(24)));
    c.equal(
        "degree of the plane slice of tau_{1..k+4} is (k+4)!/24",
        (5..=ku + 4).product::<u64>(),
        slice,
    );
    if k >= 2 {
        let threshold = RHO[(k - 1) as usize].max(e + 1).max(slice + 1);
        let g = bounds::g(ku + 5)?.value;
        c.equal(format!("G({}) = max(rho, eta+1, (k+4)!/24+1)", k + 5), &g, threshold);
    }

    Ok(LedgerReport {
        case: LedgerCase::K(k).to_string(),
        checks: c.0,
        max_extension_degree: nat(max_degree),
        eta: Some(nat(e)),
        residuals: Vec::new(),
        seed: None,
    })
}

fn fmt_list(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn audit_n6() -> Result<LedgerReport, BoundsError> {
    let mut c = Checks::default();
    let n = 19u64;
    let ambient = n - 1;
    // tau_{1,2,3} cut by a hyperplane H missing [1:0:...:0].
    let base = IntersectionType::from_degrees(&[1, 1, 2, 3]);
    c.printed("ambient dimension at n = 19", 18, ambient);
    let p0 = to_u64(&base.degree_product());
    c.printed("degree of P_0 on type (1,2,3)", 6, p0);

    let c1 = cone_type(&base, 1);
    c.printed("first polar cone type", ty(&[(3, 1), (2, 2), (1, 4)]), &c1);
    c.printed(
        "first cone dimension bound 18 - 7",
        "18 - 7 = 11",
        format!("{ambient} - {} = {}", c1.total(), ambient - c1.total()),
    );
    let p1 = to_u64(&c1.degree_product());
    c.printed("degree of P_1", 12, p1);

    let c2 = cone_type(&base, 2);
    c.printed("second polar cone type", ty(&[(3, 1), (2, 3), (1, 7)]), &c2);
    c.printed("hyperplanes in the second cone", 7, c2.count(1));
    let linear = ambient - c2.count(1);
    c.printed("linear part of the second cone", 11, linear);
    let (l, k) = (1u64, 5u64);
    c.require(
        "quadric plane threshold 11 >= (5+1)(1)+5",
        vec![((k + 1) * l + k).to_string()],
        vec![linear.to_string()],
        linear >= (k + 1) * l + k,
    );
    c.printed("extension degree for the 5-plane (quadratic)", 2, 1u64 << l);

    // One quadric was used up by the 5-plane.
    let remaining = ty(&[(3, c2.count(3)), (2, c2.count(2) - 1)]);
    c.printed("remaining type on the 5-plane", ty(&[(3, 1), (2, 2)]), &remaining);
    c.printed(
        "remaining dimension bound",
        "5 - 3 >= 2",
        format!("{k} - {} >= 2", remaining.total()),
    );
    c.require(
        "remaining intersection has dimension at least 2",
        vec![">= 2".into()],
        vec![(k - remaining.total()).to_string()],
        k >= remaining.total() + 2,
    );
    let p2 = to_u64(&remaining.degree_product());
    c.printed("degree of P_2 (3*2^2)", 12, p2);

    let slice = to_u64(&IntersectionType::from_degrees(&[4, 5]).degree_product());
    c.printed("degree of the plane slice of tau_{1..5}", 20, slice);
    let max_degree = [p0, p1, 2, p2].into_iter().max().expect("nonempty");
    let threshold = max_degree.max(slice) + 1;
    let g = bounds::g(6)?.value;
    c.equal("G(6) = max(extension degrees, slice degree) + 1", &g, threshold);
    c.printed("theorem threshold n >= 21", 21, threshold);

    Ok(LedgerReport {
        case: LedgerCase::N6.to_string(),
        checks: c.0,
        max_extension_degree: nat(max_degree),
        eta: None,
        residuals: Vec::new(),
        seed: None,
    })
}

/// Audits the two worked examples of Wolfson's method and the comparison
/// with the iterated polar cone degree.
pub fn wolfson_pipeline_audit() -> Result<LedgerReport, BoundsError> {
    let mut c = Checks::default();
    let psi48 = bounds::psi(4, 8)?.entries;
    c.printed("psi(4,8)", "[8, 63, 778, 1557]", fmt_nat_list(&psi48));
    c.printed("n for an 8-plane: psi(4,8)_3 + 2", 1559, &psi48[3] + 2u32);
    c.printed("quadric in P^1557 holds a 778-plane", 1557, &psi48[2] * 2u32 + 1u32);

    let s1 = bounds::waldron_ok(3, &nat(778), &nat(63))?;
    c.printed("(63+1)(778-63) - C(66,3)", 0, &s1.slack);
    let s2 = bounds::waldron_ok(4, &nat(63), &nat(8))?;
    c.printed("(8+1)(63-8) - C(12,4)", 0, &s2.slack);
    c.printed("dim M(3;778)", 78_485_029, bounds::dim_moduli_hyp(3, &nat(778))?);
    c.printed("dim H(4;63)", 766_479, bounds::dim_param_hyp(4, &nat(63))?);

    let psi59 = bounds::psi(5, 9)?.entries;
    c.printed("psi(5,9)_4 + 1", 54_097_786_526u64, &psi59[4] + 1u32);
    let m3 = bounds::dim_moduli_hyp(3, &psi59[3])?;
    c.printed("dim M(3;psi(5,9)_3)", "3298353885918738132194252727911", &m3);

    let cone = cone_type_chain(5, 9);
    c.printed(
        "9th polar cone type of (1,2,3,4,5)",
        ty(&[(5, 1), (4, 10), (3, 55), (2, 220), (1, 715)]),
        &cone,
    );
    let product = cone.at_least(3).degree_product();
    let closed = Natural::from(5u32) * Natural::from(4u32).pow(10) * Natural::from(3u32).pow(55);
    c.equal("degree of the cubic-and-up part is 5*4^10*3^55", &closed, &product);
    c.printed("5*4^10*3^55", "914616279415496004448658427740160", &product);
    c.require(
        "cone degree exceeds dim M(3;psi(5,9)_3)",
        vec![format!("> {m3}")],
        vec![product.to_string()],
        product > m3,
    );

    let crossover = polar_degree_crossover(4, 200)?;
    c.printed(
        "type (1,2,3,4): first k with 4*3^(k+1) > dim M(3;psi(4,k)_2)",
        33,
        crossover.map_or_else(|| "none below 200".to_string(), |k| k.to_string()),
    );

    Ok(LedgerReport {
        case: LedgerCase::Wolfson.to_string(),
        checks: c.0,
        max_extension_degree: m3,
        eta: None,
        residuals: Vec::new(),
        seed: None,
    })
}

/// Smallest `k <= k_max` for which the iterated polar cone degree of type
/// `(1,...,d)` exceeds the moduli dimension Wolfson's method needs.
pub fn polar_degree_crossover(d: u32, k_max: u32) -> Result<Option<u32>, BoundsError> {
    for k in 1..=k_max {
        let degree = cone_type_chain(d, k).at_least(3).degree_product();
        let psi = bounds::psi(u64::from(d), u64::from(k))?.entries;
        let wolfson = bounds::dim_moduli_hyp(3, &psi[(d - 2) as usize])?;
        if degree > wolfson {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn fmt_nat_list(v: &[Natural]) -> String {
    let parts: Vec<String> = v.iter().map(Natural::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Whether every case (n6, k = 1..9) passes.
pub fn audit_all() -> Result<Vec<LedgerReport>, BoundsError> {
    LedgerCase::all().into_iter().map(audit_ledger).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_reproduces_rho() {
        for k in 1..=9 {
            assert_eq!(construction(k).rho, RHO[(k - 1) as usize], "k = {k}");
        }
    }

    #[test]
    fn splits() {
        assert_eq!(split_quadrics(10, 8), vec![2, 8]);
        assert_eq!(split_quadrics(55, 17), vec![4, 17, 17, 17]);
        assert_eq!(split_quadrics(6, 6), vec![6]);
        assert_eq!(largest_power_below(324), 8);
        assert_eq!(largest_power_below(256), 7);
    }

    #[test]
    fn every_case_passes() {
        for case in LedgerCase::all() {
            let r = audit_ledger(case).unwrap();
            let fails: Vec<_> = r.checks.iter().filter(|c| c.status == Status::Fail).collect();
            assert!(fails.is_empty(), "{case}: {fails:#?}");
        }
    }

    #[test]
    fn known_flags() {
        let k2 = audit_ledger(LedgerCase::K(2)).unwrap();
        let id = k2.find("48 = (5+1)(6)+5").unwrap();
        assert_eq!(id.status, Status::Flagged);
        assert_eq!(id.computed, vec!["41"]);
        assert_eq!(k2.find("4-th").map(|c| c.status), None);
        assert_eq!(
            k2.find("2-th polar cone type").unwrap().computed,
            vec!["[4:1, 3:3, 2:6, 1:10]"]
        );

        let k9 = audit_ledger(LedgerCase::K(9)).unwrap();
        assert_eq!(k9.find("612359 = (122471+1)(4)+122471").unwrap().status, Status::Pass);
        assert_eq!(k9.find("122471 = (6803+1)(17)+6805").unwrap().status, Status::Flagged);
        assert_eq!(k9.max_extension_degree, nat(236_196));

        let k1 = audit_ledger(LedgerCase::K(1)).unwrap();
        assert_eq!(k1.find("remaining type").unwrap().status, Status::Flagged);
        assert_eq!(k1.count(Status::Flagged), 1);
    }

    #[test]
    fn wolfson_numbers() {
        let r = wolfson_pipeline_audit().unwrap();
        assert!(r.passed());
        assert_eq!(r.find("psi(4,8)").unwrap().status, Status::Pass);
    }

    #[test]
    fn parse_cases() {
        assert_eq!("k7".parse::<LedgerCase>().unwrap(), LedgerCase::K(7));
        assert!("k10".parse::<LedgerCase>().is_err());
        assert_eq!("wolfson".parse::<LedgerCase>().unwrap().to_string(), "wolfson");
    }
}
