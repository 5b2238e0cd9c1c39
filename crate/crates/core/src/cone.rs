//! Projectors onto finitely generated max cones.
//!
//! For a cone `W = spann(G)` the projector `P_W(y) = G ⊗ γ*(G, y)` returns the
//! greatest element of `W` below `y`. Intersections are handled by cycling
//! through the individual projectors until nothing moves.

use crate::error::{Error, Result};
use crate::interval::IntervalBox;
use crate::one_sided::gamma_star_unchecked;
use crate::tropical::{Tolerance, TropMatrix, TropVector};
use crate::verdict::{Condition, Decision, Verdict};

/// Default log-domain stopping threshold for alternating projections.
pub const DEFAULT_EPS: f64 = 1e-11;
/// Default cap on full projection cycles.
pub const DEFAULT_MAX_CYCLES: usize = 10_000;

/// Number of consecutive cycles with an identical per-coordinate log change
/// after which steadily shrinking coordinates are sent to zero.
const DRIFT_CYCLES: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct ConeSpan {
    generators: TropMatrix,
}

impl ConeSpan {
    pub fn new(generators: TropMatrix) -> Self {
        Self { generators }
    }

    /// The cone `{0}` in dimension `n`.
    pub fn zero(n: usize) -> Self {
        Self {
            generators: TropMatrix::zeros(n, 0),
        }
    }

    pub fn generators(&self) -> &TropMatrix {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.rows()
    }

    pub fn project(&self, y: &TropVector) -> Result<TropVector> {
        if y.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: y.len(),
            });
        }
        Ok(TropVector::from_raw(self.project_raw(y.as_slice())))
    }

    pub(crate) fn project_raw(&self, y: &[f64]) -> Vec<f64> {
        let g = gamma_star_unchecked(&self.generators, y);
        self.generators.mat_vec_ext(&g)
    }

    pub fn contains(&self, y: &TropVector, tol: Tolerance) -> bool {
        y.len() == self.dim() && TropVector::from_raw(self.project_raw(y.as_slice())).approx_eq(y, tol)
    }
}

/// Greatest common point of all cones below `y`, by alternating projections.
///
/// Stops when a full cycle changes no coordinate by more than `eps` in the log
/// domain. Coordinates that keep shrinking by the same factor cycle after
/// cycle are heading to zero and are set to zero.
pub fn project_intersection(
    cones: &[ConeSpan],
    y: &TropVector,
    eps: f64,
    max_cycles: usize,
) -> Result<TropVector> {
    let first = cones
        .first()
        .ok_or_else(|| Error::Precondition("empty list of cones".into()))?;
    let n = first.dim();
    if let Some(c) = cones.iter().find(|c| c.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c.dim(),
        });
    }
    if y.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: y.len(),
        });
    }
    let mut z = y.as_slice().to_vec();
    let mut prev_change: Option<Vec<f64>> = None;
    let mut stable = 0;
    for _ in 0..max_cycles {
        let before = z.clone();
        for c in cones {
            z = c.project_raw(&z);
        }
        let change: Vec<f64> = z
            .iter()
            .zip(&before)
            .map(|(&a, &b)| if a == b { 0.0 } else if a == 0.0 { f64::NEG_INFINITY } else { a.ln() - b.ln() })
            .collect();
        if change.iter().all(|d| d.abs() <= eps) {
            return Ok(TropVector::from_raw(z));
        }
        let same = prev_change.as_ref().is_some_and(|p| {
            p.iter().zip(&change).all(|(a, b)| {
                (a.is_infinite() && b.is_infinite()) || (a - b).abs() <= 1e-9 * (1.0 + a.abs())
            })
        });
        stable = if same { stable + 1 } else { 0 };
        if stable >= DRIFT_CYCLES {
            for (zi, d) in z.iter_mut().zip(&change) {
                if *d < -eps {
                    *zi = 0.0;
                }
            }
            stable = 0;
            prev_change = None;
            continue;
        }
        prev_change = Some(change);
    }
    Err(Error::IterationLimit(max_cycles))
}

/// Outcome of a cone-meets-box test.
#[derive(Clone, Debug, PartialEq)]
pub enum Meet {
    /// A point of the intersection.
    Yes(TropVector),
    /// The intersection is empty; carries the projected upper corner.
    No(Vec<f64>),
    /// Neither could be certified.
    Unknown(Vec<f64>),
}

impl Meet {
    pub fn is_yes(&self) -> bool {
        matches!(self, Meet::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Meet::No(_))
    }
}

/// Relative shrink factors tried on open upper endpoints.
const OPEN_SHRINK: [f64; 4] = [1e-6, 1e-8, 1e-10, 1e-12];

/// Whether the intersection of `cones` meets `x`.
///
/// For a box whose finite upper endpoints are closed, the intersection meets
/// the box iff its greatest point below the upper corner lies in the box.
/// Unbounded coordinates are capped at a large surrogate; open finite upper
/// endpoints are approached from below, and if none of the approximations
/// enters the box while the closed corner still satisfies the lower bounds
/// the answer is [`Meet::Unknown`].
pub fn cones_meet_box(cones: &[ConeSpan], x: &IntervalBox, tol: Tolerance, eps: f64) -> Result<Meet> {
    let cap = surrogate_cap(cones, x);
    let r1 = meet_with_cap(cones, x, tol, eps, cap)?;
    if x.is_bounded() {
        return Ok(r1);
    }
    let r2 = meet_with_cap(cones, x, tol, eps, cap * 10.0)?;
    Ok(match (&r1, &r2) {
        (Meet::Yes(_), _) => r1,
        (_, Meet::Yes(_)) => r2,
        (Meet::No(_), Meet::No(_)) => r1,
        _ => Meet::Unknown(r1.corner().to_vec()),
    })
}

/// Stand-in for `+∞` upper endpoints: the largest finite datum times `10⁶`.
fn surrogate_cap(cones: &[ConeSpan], x: &IntervalBox) -> f64 {
    let mut m = x.max_finite_endpoint().max(1.0);
    for c in cones {
        m = m.max(c.generators().max_entry());
        if let Some(p) = c.generators().min_positive_entry() {
            m = m.max(1.0 / p);
        }
    }
    m * 1e6
}

impl Meet {
    fn corner(&self) -> &[f64] {
        match self {
            Meet::Yes(v) => v.as_slice(),
            Meet::No(c) | Meet::Unknown(c) => c,
        }
    }
}

fn meet_with_cap(cones: &[ConeSpan], x: &IntervalBox, tol: Tolerance, eps: f64, cap: f64) -> Result<Meet> {
    let upper: Vec<f64> = x.upper().iter().map(|&u| u.min(cap)).collect();
    let p = project_intersection(cones, &TropVector::from_raw(upper.clone()), eps, DEFAULT_MAX_CYCLES)?;
    let certified = |v: &TropVector| cones.iter().all(|c| c.contains(v, tol));
    if x.contains(&p, tol) && certified(&p) {
        return Ok(Meet::Yes(p));
    }
    if !x.above_lower(p.as_slice(), tol) {
        return Ok(Meet::No(p.into_inner()));
    }
    if !x.has_open_finite_upper() {
        // p satisfies the lower bounds and the (closed) uppers: only numerics can fail
        return Ok(Meet::Unknown(p.into_inner()));
    }
    for delta in OPEN_SHRINK {
        let shrunk: Vec<f64> = (0..x.len())
            .map(|i| {
                let iv = x.interval(i);
                if iv.upper_open && iv.upper.is_finite() {
                    iv.upper * (1.0 - delta)
                } else {
                    upper[i]
                }
            })
            .collect();
        let q = project_intersection(cones, &TropVector::from_raw(shrunk), eps, DEFAULT_MAX_CYCLES)?;
        if x.contains(&q, tol) && certified(&q) {
            return Ok(Meet::Yes(q));
        }
    }
    Ok(Meet::Unknown(p.into_inner()))
}

/// Whether `spann(C)` meets `X`, for boxes with closed finite upper endpoints.
pub fn box_meets_cone(c: &ConeSpan, x: &IntervalBox, tol: Tolerance) -> Result<Verdict> {
    if x.len() != c.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.dim(),
            found: x.len(),
        });
    }
    if x.has_open_finite_upper() {
        return Err(Error::UpperOpenUnsupported);
    }
    let meet = cones_meet_box(std::slice::from_ref(c), x, tol, DEFAULT_EPS)?;
    Ok(meet_verdict("cone meets box", meet))
}

pub(crate) fn meet_verdict(question: &str, meet: Meet) -> Verdict {
    match meet {
        Meet::Yes(w) => {
            let mut v = Verdict::new(question, Decision::Yes);
            v.push(
                Condition::new("projection_in_box", true)
                    .vector("projection", w.as_slice())
                    .note(if w.is_zero() {
                        "only the zero vector was certified"
                    } else {
                        ""
                    }),
            );
            v.with_witness(w)
        }
        Meet::No(p) => {
            let mut v = Verdict::new(question, Decision::No);
            v.push(Condition::new("projection_in_box", false).vector("projection", &p));
            v
        }
        Meet::Unknown(p) => {
            let mut v = Verdict::new(question, Decision::Inconclusive);
            v.push(
                Condition::new("projection_in_box", false)
                    .vector("projection", &p)
                    .note("limit of projections could not be certified"),
            );
            v
        }
    }
}
