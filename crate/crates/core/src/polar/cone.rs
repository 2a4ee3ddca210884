//! Polar cones of systems, iterated cones and plane containment.

use serde::Serialize;
use thiserror::Error;

use super::IntersectionType;
use crate::poly::{Field, HPoly, PPoint, PolyError, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolarError {
    #[error("step {step}: point is not on the system (residual {residual:e})")]
    NotOnSystem { step: usize, residual: f64 },
    #[error("step {step}: point lies in the span of its predecessors")]
    InSpan { step: usize },
    #[error("system generators live in {expected} variables, got {got}")]
    Arity { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Generators `f_1..f_s` of a projective variety in `P^r`.
#[derive(Clone, Debug, PartialEq)]
pub struct HSystem<F: Field> {
    ambient: usize,
    polys: Vec<HPoly<F>>,
}

impl<F: Field> HSystem<F> {
    pub fn new(ambient: usize, polys: Vec<HPoly<F>>) -> Result<Self, PolarError> {
        if let Some(bad) = polys.iter().find(|p| p.nvars() != ambient + 1) {
            return Err(PolarError::Arity {
                expected: ambient + 1,
                got: bad.nvars(),
            });
        }
        Ok(Self { ambient, polys })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn polys(&self) -> &[HPoly<F>] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<HPoly<F>> {
        self.polys
    }

    pub fn intersection_type(&self) -> IntersectionType {
        IntersectionType::from_degrees(&self.polys.iter().map(HPoly::degree).collect::<Vec<_>>())
    }

    /// Largest scale-aware residual over the generators (zero for exact hits).
    pub fn max_residual(&self, v: &[F]) -> Result<f64, PolyError> {
        let mut worst = 0.0f64;
        for p in &self.polys {
            let r = match F::TAG {
                crate::poly::FieldTag::ExactRational => {
                    if p.evaluate(v)?.is_zero() {
                        0.0
                    } else {
                        p.residual(v)?.max(f64::MIN_POSITIVE)
                    }
                }
                crate::poly::FieldTag::ComplexDouble => p.residual(v)?,
            };
            worst = worst.max(r);
        }
        Ok(worst)
    }

    pub fn contains_point(&self, v: &[F], tol: f64) -> Result<bool, PolyError> {
        let r = self.max_residual(v)?;
        Ok(match F::TAG {
            crate::poly::FieldTag::ExactRational => r == 0.0,
            crate::poly::FieldTag::ComplexDouble => r <= tol,
        })
    }
}

/// The polar cone `C(V; P)`: all polars `t(k, f_i, P)` for `0 <= k < deg f_i`.
pub fn cone_system<F: Field>(v: &HSystem<F>, p: &PPoint<F>, tol: f64) -> Result<HSystem<F>, PolarError> {
    cone_step(v, p.coords(), tol, 0)
}

fn cone_step<F: Field>(v: &HSystem<F>, p: &[F], tol: f64, step: usize) -> Result<HSystem<F>, PolarError> {
    if p.len() != v.ambient + 1 {
        return Err(PolarError::Arity {
            expected: v.ambient + 1,
            got: p.len(),
        });
    }
    if !v.contains_point(p, tol)? {
        return Err(PolarError::NotOnSystem {
            step,
            residual: v.max_residual(p)?,
        });
    }
    let mut polys = Vec::new();
    for f in &v.polys {
        for k in 0..f.degree() {
            polys.push(f.polar(p, k)?);
        }
    }
    HSystem::new(v.ambient, polys)
}

/// One certified step of an iterated cone.
#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub index: usize,
    pub point: Vec<String>,
    /// Type of the system the point was required to lie on.
    pub system_type: String,
    pub residual: f64,
    pub on_cone: bool,
    pub independent: bool,
    /// The point also lies on every earlier system in the chain.
    pub nested: bool,
}

/// `V = C^0, C^1, ..., C^j` together with the points used.
#[derive(Clone, Debug)]
pub struct PolarChain<F: Field> {
    pub points: Vec<PPoint<F>>,
    /// `systems[l]` cuts out `C^l`; there is one more system than points.
    pub systems: Vec<HSystem<F>>,
    pub steps: Vec<StepRecord>,
}

impl<F: Field> PolarChain<F> {
    pub fn base(&self) -> &HSystem<F> {
        &self.systems[0]
    }

    pub fn last(&self) -> &HSystem<F> {
        self.systems.last().expect("chain has a base")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.steps).expect("step records serialize")
    }
}

/// Builds `C^j(V; P_0, .., P_{j-1})`, certifying that each `P_l` lies on
/// `C^l` and off the span of `P_0..P_{l-1}`.
pub fn iterated_cone<F: Field>(v: &HSystem<F>, points: &[PPoint<F>], tol: f64) -> Result<PolarChain<F>, PolarError> {
    let mut systems = vec![v.clone()];
    let mut steps = Vec::new();
    let mut coords: Vec<Vec<F>> = Vec::new();
    for (l, p) in points.iter().enumerate() {
        let cur = &systems[l];
        coords.push(p.coords().to_vec());
        if F::rank(&coords) != coords.len() {
            return Err(PolarError::InSpan { step: l });
        }
        let residual = cur.max_residual(p.coords())?;
        let next = cone_step(cur, p.coords(), tol, l)?;
        let mut nested = true;
        for s in &systems[..l] {
            nested &= s.contains_point(p.coords(), tol)?;
        }
        steps.push(StepRecord {
            index: l,
            point: p.coords().iter().map(Field::render).collect(),
            system_type: cur.intersection_type().to_string(),
            residual,
            on_cone: true,
            independent: true,
            nested,
        });
        systems.push(next);
    }
    Ok(PolarChain {
        points: points.to_vec(),
        systems,
        steps,
    })
}

/// Largest normalized coefficient of the restrictions of the generators to
/// the span of `points`. Zero exactly when the span lies on `V` (exact fields).
pub fn plane_residual<F: Field>(v: &HSystem<F>, points: &[PPoint<F>]) -> Result<f64, PolarError> {
    let coords: Vec<Vec<F>> = points.iter().map(|p| p.coords().to_vec()).collect();
    let vmax = coords.iter().flatten().map(Field::modulus).fold(0.0, f64::max);
    let mut worst = 0.0f64;
    for f in &v.polys {
        let r = f.restrict_to_span(&coords)?;
        if r.is_zero() {
            continue;
        }
        let scale = 1.0 + f.l1_norm() * vmax.powi(f.degree() as i32);
        worst = worst.max((r.l1_norm() / scale).max(f64::MIN_POSITIVE));
    }
    Ok(worst)
}

/// Whether the linear span of `points` lies on `V`.
pub fn contains_plane<F: Field>(v: &HSystem<F>, points: &[PPoint<F>], tol: f64) -> Result<bool, PolarError> {
    let r = plane_residual(v, points)?;
    Ok(match F::TAG {
        crate::poly::FieldTag::ExactRational => r == 0.0,
        crate::poly::FieldTag::ComplexDouble => r <= tol,
    })
}

/// Whether `P_0..P_k` is a `k`-polar point of `V`: the chain certifies, and
/// then `P_k` lies on the final cone `C^k`.
pub fn is_k_polar_point<F: Field>(v: &HSystem<F>, points: &[PPoint<F>], tol: f64) -> Result<bool, PolarError> {
    match iterated_cone(v, points, tol) {
        Ok(_) => Ok(true),
        Err(PolarError::NotOnSystem { .. } | PolarError::InSpan { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Default tolerance used for complex membership tests.
pub const MEMBERSHIP_TOL: f64 = DEFAULT_TOL;
