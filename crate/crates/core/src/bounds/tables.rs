//! Row generators for the `G`/`F` comparison tables.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::{f, g, BoundsError};
use crate::exact_core::{round_half_even, Natural, Rational};
use crate::report::{ser_display, ser_opt_pair};

/// One row of a bounds table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub m: u64,
    #[serde(serialize_with = "ser_display")]
    pub g_value: Natural,
    #[serde(serialize_with = "ser_display")]
    pub f_value: Natural,
    /// `F/G` rounded half-even to three decimals.
    pub ratio: String,
    /// `(d, k)` attaining the `G` minimum, when `G` was minimized.
    #[serde(serialize_with = "ser_opt_pair")]
    pub g_witness: Option<(u64, u64)>,
    /// `(d, k)` attaining the `F` minimum, when `F` was minimized.
    #[serde(serialize_with = "ser_opt_pair")]
    pub f_witness: Option<(u64, u64)>,
    pub g_plane: Option<String>,
    pub f_plane: Option<String>,
}

impl BoundsRow {
    pub fn exact_ratio(&self) -> Rational {
        Rational::new(BigInt::from(self.f_value.clone()), BigInt::from(self.g_value.clone()))
    }

    pub const CSV_HEADER: [&'static str; 8] = [
        "m",
        "G",
        "F",
        "ratio",
        "G_witness_d",
        "F_witness_d",
        "G_plane",
        "F_plane",
    ];

    pub fn csv_record(&self) -> [String; 8] {
        let d = |w: Option<(u64, u64)>| w.map(|(d, _)| d.to_string()).unwrap_or_default();
        [
            self.m.to_string(),
            self.g_value.to_string(),
            self.f_value.to_string(),
            self.ratio.clone(),
            d(self.g_witness),
            d(self.f_witness),
            self.g_plane.clone().unwrap_or_default(),
            self.f_plane.clone().unwrap_or_default(),
        ]
    }
}

/// `"(m-d-1)-plane on tau_{1,...,d}"`, listing indices in full up to `d = 4`.
pub fn plane_witness(d: u64) -> String {
    let indices = if d <= 4 {
        (1..=d).map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    } else {
        format!("1,…,{d}")
    };
    format!("(m−{})-plane on τ_{{{indices}}}", d + 1)
}

fn row(m: u64) -> Result<BoundsRow, BoundsError> {
    let gv = g(m)?;
    let fv = f(m)?;
    let ratio = Rational::new(BigInt::from(fv.value.clone()), BigInt::from(gv.value.clone()));
    Ok(BoundsRow {
        m,
        ratio: round_half_even(&ratio, 3),
        g_witness: gv.witness.map(|d| (d, m - d - 1)),
        f_witness: fv.witness.map(|d| (d, m - d - 1)),
        g_plane: gv.witness.map(plane_witness),
        f_plane: fv.witness.map(plane_witness),
        g_value: gv.value,
        f_value: fv.value,
    })
}

fn rows(from: u64, to: u64) -> Result<Vec<BoundsRow>, BoundsError> {
    if from < 1 || from > to {
        return Err(BoundsError::Domain(format!("bad table range {from}..={to}")));
    }
    (from..=to).into_par_iter().map(row).collect()
}

/// Rows of the upper-bound table for `m` in `from..=to`.
pub fn table1(from: u64, to: u64) -> Result<Vec<BoundsRow>, BoundsError> {
    rows(from, to)
}

/// Rows of the ratio table; identical row shape, witnesses always present for `m >= 15`.
pub fn table2(from: u64, to: u64) -> Result<Vec<BoundsRow>, BoundsError> {
    rows(from, to)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_strings() {
        assert_eq!(plane_witness(4), "(m−5)-plane on τ_{1,2,3,4}");
        assert_eq!(plane_witness(6), "(m−7)-plane on τ_{1,…,6}");
    }

    #[test]
    fn row_30() {
        let r = table2(30, 30).unwrap().remove(0);
        assert_eq!(r.ratio, "30.000");
        assert_eq!(r.g_plane.as_deref(), Some("(m−7)-plane on τ_{1,…,6}"));
        assert_eq!(r.f_plane.as_deref(), Some("(m−5)-plane on τ_{1,2,3,4}"));
    }

    #[test]
    fn row_10() {
        let r = table1(10, 10).unwrap().remove(0);
        assert_eq!(r.g_value, Natural::from(15121u32));
        assert_eq!(r.f_value, Natural::from(60481u32));
    }
}
