//! Interval boxes and the deciders built on them.
//!
//! A box `X = X_1 × … × X_n` has per-coordinate endpoints `x̲_i <= x̄_i`, either
//! of which may be open; `x̄_i` may be `+∞`.
//!
//! Uniqueness in a box uses the following criterion. Let `J = {j : γ*_j ∈ X_j}`.
//! A solvable system has exactly one solution in `X` iff for every `i` such
//! that the sets `M_j`, `j ∈ J ∖ {i}`, still cover `supp(b)`, the set
//! `X_i ∩ [0, γ*_i]` is a single point.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cone::{cones_meet_box, ConeSpan, Meet, DEFAULT_EPS};
use crate::error::{Error, Result};
use crate::one_sided::{gamma_star_unchecked, m_sets_from};
use crate::spectral::{eigen_structure, in_eigencone, is_eigenvector, EigenStructure};
use crate::tropical::{Tolerance, TropMatrix, TropVector};
use crate::verdict::{ext_vec, Condition, Decision, Verdict};
use crate::NodeSet;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
    pub lower_open: bool,
    pub upper_open: bool,
}

impl Interval {
    pub fn new(lower: f64, upper: f64, lower_open: bool, upper_open: bool) -> Result<Self> {
        if !lower.is_finite() || lower < 0.0 {
            return Err(Error::InvalidBox(format!("lower endpoint {lower} must be finite and nonnegative")));
        }
        if upper.is_nan() || upper < lower {
            return Err(Error::InvalidBox(format!("upper endpoint {upper} below lower endpoint {lower}")));
        }
        let upper_open = upper_open || upper.is_infinite();
        if upper == lower && (lower_open || upper_open) {
            return Err(Error::InvalidBox(format!(
                "interval with endpoints {lower} = {upper} must be closed"
            )));
        }
        Ok(Self {
            lower,
            upper,
            lower_open,
            upper_open,
        })
    }

    pub fn closed(lower: f64, upper: f64) -> Result<Self> {
        Self::new(lower, upper, false, false)
    }

    pub fn point(v: f64) -> Result<Self> {
        Self::new(v, v, false, false)
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    /// Membership, comparing endpoints with `tol` (an open endpoint excludes
    /// everything approximately equal to it).
    pub fn contains(&self, t: f64, tol: Tolerance) -> bool {
        self.above_lower(t, tol) && self.below_upper(t, tol)
    }

    pub fn above_lower(&self, t: f64, tol: Tolerance) -> bool {
        if self.lower_open {
            tol.gt(t, self.lower)
        } else {
            tol.ge(t, self.lower)
        }
    }

    pub fn below_upper(&self, t: f64, tol: Tolerance) -> bool {
        if self.upper.is_infinite() {
            return t.is_finite();
        }
        if self.upper_open {
            tol.lt(t, self.upper)
        } else {
            tol.le(t, self.upper)
        }
    }

    /// Some point of `X_i ∩ [0, cap]`, preferring the largest attainable one.
    pub fn point_at_most(&self, cap: f64) -> Option<f64> {
        let (hi, hi_closed) = if cap < self.upper {
            (cap, true)
        } else {
            (self.upper, !self.upper_open)
        };
        if hi.is_infinite() {
            return Some(if self.lower_open { self.lower + 1.0 } else { self.lower });
        }
        if hi < self.lower || (hi == self.lower && (self.lower_open || !hi_closed)) {
            return None;
        }
        if hi_closed {
            Some(hi)
        } else {
            Some(0.5 * (self.lower + hi))
        }
    }

    /// Two distinct points of `X_i ∩ [0, cap]`, if it is not a single point.
    pub fn two_points_at_most(&self, cap: f64) -> Option<(f64, f64)> {
        let p = self.point_at_most(cap)?;
        if p.is_infinite() {
            return None;
        }
        let q = if !self.lower_open && self.lower < p {
            self.lower
        } else {
            0.5 * (self.lower + p)
        };
        if q < p && self.contains_exact(q) {
            Some((p, q))
        } else if self.contains_exact(p + 1.0) && p + 1.0 <= cap {
            Some((p, p + 1.0))
        } else {
            None
        }
    }

    fn contains_exact(&self, t: f64) -> bool {
        (if self.lower_open { t > self.lower } else { t >= self.lower })
            && (if self.upper_open { t < self.upper } else { t <= self.upper })
    }

    /// `X_i ∩ [0, cap]` is a single point.
    pub fn is_singleton_below(&self, cap: f64, tol: Tolerance) -> bool {
        !self.lower_open && tol.eq(self.lower, self.upper.min(cap))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lower_open { '(' } else { '[' };
        let r = if self.upper_open { ')' } else { ']' };
        if self.upper.is_infinite() {
            write!(f, "{l}{},∞{r}", self.lower)
        } else {
            write!(f, "{l}{},{}{r}", self.lower, self.upper)
        }
    }
}

/// A product of intervals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BoxSpec", into = "BoxSpec")]
pub struct IntervalBox {
    coords: Vec<Interval>,
}

/// Serialized form of a box: endpoint arrays (`"inf"` allowed as an upper
/// endpoint) and open flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxSpec {
    pub lower: Vec<f64>,
    #[serde(with = "ext_vec")]
    pub upper: Vec<f64>,
    #[serde(default)]
    pub lower_open: Option<Vec<bool>>,
    #[serde(default)]
    pub upper_open: Option<Vec<bool>>,
}

impl TryFrom<BoxSpec> for IntervalBox {
    type Error = Error;

    fn try_from(s: BoxSpec) -> Result<Self> {
        let n = s.lower.len();
        let lo = s.lower_open.unwrap_or_else(|| vec![false; n]);
        let uo = s.upper_open.unwrap_or_else(|| vec![false; n]);
        Self::from_parts(&s.lower, &s.upper, &lo, &uo)
    }
}

impl From<IntervalBox> for BoxSpec {
    fn from(b: IntervalBox) -> Self {
        Self {
            lower: b.lower(),
            upper: b.upper(),
            lower_open: Some(b.coords.iter().map(|c| c.lower_open).collect()),
            upper_open: Some(b.coords.iter().map(|c| c.upper_open).collect()),
        }
    }
}

impl IntervalBox {
    pub fn new(coords: Vec<Interval>) -> Self {
        Self { coords }
    }

    pub fn from_parts(lower: &[f64], upper: &[f64], lower_open: &[bool], upper_open: &[bool]) -> Result<Self> {
        let n = lower.len();
        for len in [upper.len(), lower_open.len(), upper_open.len()] {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, found: len });
            }
        }
        let coords = (0..n)
            .map(|i| Interval::new(lower[i], upper[i], lower_open[i], upper_open[i]))
            .collect::<Result<_>>()?;
        Ok(Self { coords })
    }

    pub fn closed(lower: &[f64], upper: &[f64]) -> Result<Self> {
        let f = vec![false; lower.len()];
        Self::from_parts(lower, upper, &f, &f)
    }

    pub fn point(x: &TropVector) -> Self {
        Self {
            coords: x.iter().map(|v| Interval::point(v).expect("finite")).collect(),
        }
    }

    /// The nonnegative orthant `[0, ∞)^n`.
    pub fn orthant(n: usize) -> Self {
        Self {
            coords: vec![Interval::new(0.0, f64::INFINITY, false, true).expect("valid"); n],
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn interval(&self, i: usize) -> &Interval {
        &self.coords[i]
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.coords
    }

    pub fn lower(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.lower).collect()
    }

    pub fn upper(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.upper).collect()
    }

    pub fn contains(&self, x: &TropVector, tol: Tolerance) -> bool {
        self.contains_ext(x.as_slice(), tol)
    }

    /// Membership of a vector that may carry `+∞`; such an entry belongs to
    /// `X_i` only when `X_i` is unbounded above.
    pub fn contains_ext(&self, x: &[f64], tol: Tolerance) -> bool {
        x.len() == self.len()
            && self.coords.iter().zip(x).all(|(c, &t)| {
                if t.is_infinite() {
                    c.upper.is_infinite()
                } else {
                    c.contains(t, tol)
                }
            })
    }

    /// Every entry satisfies its lower constraint.
    pub fn above_lower(&self, x: &[f64], tol: Tolerance) -> bool {
        x.len() == self.len() && self.coords.iter().zip(x).all(|(c, &t)| c.above_lower(t, tol))
    }

    /// `X↑`: every upper endpoint replaced by `+∞`.
    pub fn up_closure(&self) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .map(|c| Interval {
                    upper: f64::INFINITY,
                    upper_open: true,
                    ..*c
                })
                .collect(),
        }
    }

    /// `c(x̲)`: coordinates whose lower endpoint is attained.
    pub fn lower_closed_set(&self) -> NodeSet {
        (0..self.len()).filter(|&i| !self.coords[i].lower_open).collect()
    }

    /// `o(x̲)`.
    pub fn lower_open_set(&self) -> NodeSet {
        (0..self.len()).filter(|&i| self.coords[i].lower_open).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.coords
            .iter()
            .all(|c| !c.lower_open && (c.upper.is_infinite() || !c.upper_open))
    }

    pub fn is_bounded(&self) -> bool {
        self.coords.iter().all(|c| c.upper.is_finite())
    }

    pub fn has_open_finite_upper(&self) -> bool {
        self.coords.iter().any(|c| c.upper_open && c.upper.is_finite())
    }

    pub fn is_lower_open(&self) -> bool {
        self.coords.iter().all(|c| c.lower_open)
    }

    /// `X^{(i}`: the lower endpoint at `i` made strict.
    pub fn with_lower_open(&self, i: usize) -> Result<Self> {
        let mut out = self.clone();
        let c = &mut out.coords[i];
        if c.is_point() {
            return Err(Error::InvalidBox(format!("coordinate {i} is a single point")));
        }
        c.lower_open = true;
        Ok(out)
    }

    pub(crate) fn max_finite_endpoint(&self) -> f64 {
        self.coords
            .iter()
            .flat_map(|c| [c.lower, c.upper])
            .filter(|v| v.is_finite())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, "×")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Knobs shared by the deciders.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub tol: Tolerance,
    /// Log-domain stopping threshold for alternating projections.
    pub eps: f64,
    pub seed: u64,
    /// Random eigenvectors tried when a certificate needs a replacement witness.
    pub samples: usize,
    /// Orbit length for attraction tests.
    pub orbit_steps: usize,
    /// Starting points for orbit evidence.
    pub orbit_starts: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            eps: DEFAULT_EPS,
            seed: 42,
            samples: 2000,
            orbit_steps: 200,
            orbit_starts: 200,
        }
    }
}

fn check_system(a: &TropMatrix, b: &TropVector, x: &IntervalBox) -> Result<()> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    if a.cols() != x.len() {
        return Err(Error::DimensionMismatch { expected: a.cols(), found: x.len() });
    }
    Ok(())
}

/// Residuation data of `A ⊗ y = b` relative to a box.
struct BoxSystem {
    gamma: Vec<f64>,
    m: Vec<NodeSet>,
    support: NodeSet,
    /// `γ* ∈ X↑`.
    in_up: bool,
    /// `J = {j : γ*_j ∈ X_j}`.
    j_x: NodeSet,
}

impl BoxSystem {
    fn new(a: &TropMatrix, b: &TropVector, x: &IntervalBox, tol: Tolerance) -> Self {
        let gamma = gamma_star_unchecked(a, b.as_slice());
        let m = m_sets_from(a, b.as_slice(), &gamma, tol);
        let in_up = x.up_closure().contains_ext(&gamma, tol);
        let j_x = (0..gamma.len())
            .filter(|&j| gamma[j].is_finite() && x.interval(j).contains(gamma[j], tol))
            .collect();
        Self {
            gamma,
            m,
            support: b.support(),
            in_up,
            j_x,
        }
    }

    fn covers_without(&self, skip: Option<usize>) -> bool {
        let mut u = NodeSet::new();
        for &j in &self.j_x {
            if Some(j) != skip {
                u.extend(self.m[j].iter().copied());
            }
        }
        u == self.support
    }

    fn solvable(&self) -> bool {
        self.in_up && self.covers_without(None)
    }

    /// A solution: `γ*` on `J` minus `skip`, the largest available point elsewhere,
    /// and `value` at `skip`.
    fn solution(&self, x: &IntervalBox, skip: Option<(usize, f64)>) -> Option<Vec<f64>> {
        (0..self.gamma.len())
            .map(|j| match skip {
                Some((i, v)) if i == j => Some(v),
                _ if self.j_x.contains(&j) => Some(self.gamma[j]),
                _ => x.interval(j).point_at_most(self.gamma[j]),
            })
            .collect()
    }
}

fn verified(a: &TropMatrix, b: &TropVector, x: &IntervalBox, y: Vec<f64>, tol: Tolerance) -> Option<TropVector> {
    let y = TropVector::new(y).ok()?;
    (x.contains(&y, tol) && a.mat_vec(&y).ok()?.approx_eq(b, tol)).then_some(y)
}

/// Does `A ⊗ y = b` have a solution in `X`?
pub fn solvable_in_box(a: &TropMatrix, b: &TropVector, x: &IntervalBox, tol: Tolerance) -> Result<Verdict> {
    check_system(a, b, x)?;
    let sys = BoxSystem::new(a, b, x, tol);
    Ok(solvable_verdict(a, b, x, &sys, tol))
}

fn solvable_verdict(a: &TropMatrix, b: &TropVector, x: &IntervalBox, sys: &BoxSystem, tol: Tolerance) -> Verdict {
    let covered = sys.covers_without(None);
    let mut v = Verdict::new("system solvable in box", Decision::from_bool(sys.in_up && covered));
    v.push(Condition::new("gamma_star_in_up_closure", sys.in_up).vector("gamma_star", &sys.gamma));
    v.push(
        Condition::new("box_columns_cover_support", covered)
            .set("columns_in_box", &sys.j_x)
            .sets("m_sets", &sys.m)
            .set("support_b", &sys.support),
    );
    if v.is_yes() {
        match sys.solution(x, None).and_then(|y| verified(a, b, x, y, tol)) {
            Some(y) => v.witness = Some(y),
            None => v.decision = Decision::Inconclusive,
        }
    }
    v
}

/// Does `A ⊗ y = b` have exactly one solution in `X`? Requires solvability.
///
/// A "no" carries two distinct solutions as witness and alternative.
pub fn unique_in_box(a: &TropMatrix, b: &TropVector, x: &IntervalBox, tol: Tolerance) -> Result<Verdict> {
    check_system(a, b, x)?;
    let sys = BoxSystem::new(a, b, x, tol);
    if !sys.solvable() {
        return Err(Error::NotSolvableInBox);
    }
    let solvable = solvable_verdict(a, b, x, &sys, tol);
    let mut v = Verdict::new("solution in box is unique", Decision::Yes);
    v.witness = solvable.witness.clone();
    v.certificate = solvable.certificate;
    for i in 0..sys.gamma.len() {
        let removable = sys.covers_without(Some(i));
        let single = x.interval(i).is_singleton_below(sys.gamma[i], tol);
        let holds = !removable || single;
        v.push(
            Condition::new(format!("column_{i}_fixed"), holds)
                .note(if removable {
                    "other box columns cover supp(b); X_i below gamma*_i must be a point"
                } else {
                    "column needed for every covering"
                })
                .scalar("gamma_star", sys.gamma[i])
                .scalar("lower", x.interval(i).lower)
                .scalar("upper", x.interval(i).upper),
        );
        if holds || v.decision == Decision::No {
            continue;
        }
        let pair = x.interval(i).two_points_at_most(sys.gamma[i]).and_then(|(p, q)| {
            let y1 = verified(a, b, x, sys.solution(x, Some((i, p)))?, tol)?;
            let y2 = verified(a, b, x, sys.solution(x, Some((i, q)))?, tol)?;
            Some((y1, y2))
        });
        match pair {
            Some((y1, y2)) => {
                v.decision = Decision::No;
                v.witness = Some(y1);
                v.alternative = Some(y2);
            }
            None => v.decision = Decision::Inconclusive,
        }
    }
    Ok(v)
}

/// Is `x` the only solution in `X` of `A ⊗ y = λ x`?
pub fn is_x_simple_image_eigenvector(
    a: &TropMatrix,
    lambda: f64,
    x: &TropVector,
    bx: &IntervalBox,
    tol: Tolerance,
) -> Result<Verdict> {
    a.require_square()?;
    if x.len() != a.rows() || bx.len() != x.len() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: x.len() });
    }
    if !is_eigenvector(a, x, lambda, tol) || !bx.contains(x, tol) {
        return Err(Error::NotAnEigenvectorInBox);
    }
    let b = x.scale(lambda);
    let mut v = unique_in_box(a, &b, bx, tol)?;
    v.question = "X-simple image eigenvector".into();
    if v.is_no() {
        let (y1, y2) = (v.witness.take().unwrap(), v.alternative.take().unwrap());
        let alt = if y1.approx_eq(x, tol) { y2 } else { y1 };
        v.alternative = Some(alt);
    }
    v.witness = Some(x.clone());
    Ok(v)
}

/// The auxiliary objects attached to coordinate `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedBoxes {
    /// `x̄` with coordinate `l` replaced by `x̲_l`.
    pub upper_l: Vec<f64>,
    /// `{x ∈ X : x_l = x̲_l, λ x_j > a_jl x̲_l for every j with a_jl ≠ 0}`, or
    /// `None` when empty.
    pub fixed_at_l: Option<IntervalBox>,
    /// `X^{(l}`: `X` with the lower endpoint at `l` made strict (`None` if `X_l` is a point).
    pub open_at_l: Option<IntervalBox>,
}

pub fn derived_boxes(a: &TropMatrix, lambda: f64, x: &IntervalBox, l: usize) -> Result<DerivedBoxes> {
    let n = a.require_square()?;
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.len() });
    }
    if l >= n {
        return Err(Error::IndexOutOfRange { index: l, dim: n });
    }
    let lo = x.interval(l).lower;
    let mut upper_l = x.upper();
    upper_l[l] = lo;
    Ok(DerivedBoxes {
        upper_l,
        fixed_at_l: fixed_box(a, lambda, x, l),
        open_at_l: x.with_lower_open(l).ok(),
    })
}

fn fixed_box(a: &TropMatrix, lambda: f64, x: &IntervalBox, l: usize) -> Option<IntervalBox> {
    let n = x.len();
    let base = x.interval(l);
    if base.lower_open {
        return None;
    }
    let lo = base.lower;
    if a.get(l, l) != 0.0 && (lo == 0.0 || a.get(l, l) >= lambda) {
        return None;
    }
    let mut coords = x.intervals().to_vec();
    coords[l] = Interval::point(lo).ok()?;
    for j in 0..n {
        if j == l || a.get(j, l) == 0.0 {
            continue;
        }
        let t = a.get(j, l) * lo / lambda;
        let c = coords[j];
        let (lower, lower_open) = if t >= c.lower { (t, true) } else { (c.lower, c.lower_open) };
        coords[j] = Interval::new(lower, c.upper, lower_open, c.upper_open).ok()?;
    }
    Some(IntervalBox::new(coords))
}

fn surrogate_for(a: &TropMatrix, lambda: f64, x: &IntervalBox) -> f64 {
    let mut m = x.max_finite_endpoint().max(1.0).max(a.max_entry()).max(lambda).max(1.0 / lambda);
    if let Some(p) = a.min_positive_entry() {
        m = m.max(1.0 / p);
    }
    m
}

/// Nonzero eigenvectors in `X`, found by projecting the upper corner and by
/// random generator combinations scaled into the box.
pub(crate) fn sample_eigenvectors_in_box(
    es: &EigenStructure,
    x: &IntervalBox,
    count: usize,
    rng: &mut ChaCha8Rng,
    tol: Tolerance,
) -> Vec<TropVector> {
    let k = es.generator_count();
    let n = x.len();
    let mut out = Vec::new();
    for _ in 0..count {
        let coef: Vec<f64> = (0..k)
            .map(|_| if rng.gen_bool(0.2) { 0.0 } else { 10f64.powf(rng.gen_range(-2.0..2.0)) })
            .collect();
        let mut v = vec![0.0f64; n];
        for (s, &c) in coef.iter().enumerate() {
            for (i, vi) in v.iter_mut().enumerate() {
                *vi = vi.max(c * es.generating.get(i, s));
            }
        }
        if v.iter().all(|&t| t == 0.0) {
            continue;
        }
        for alpha in scalings_into(x, &v, rng) {
            let y = TropVector::from_raw(v.iter().map(|t| t * alpha).collect());
            if x.contains(&y, tol) {
                out.push(y);
            }
        }
    }
    out
}

/// Scalars `α` (a few per feasible range) with `α v ∈ X`.
fn scalings_into(x: &IntervalBox, v: &[f64], rng: &mut ChaCha8Rng) -> Vec<f64> {
    let (mut lo, mut hi) = (0.0f64, f64::INFINITY);
    let (mut lo_open, mut hi_open) = (false, true);
    for (c, &t) in x.intervals().iter().zip(v) {
        if t == 0.0 {
            if c.lower > 0.0 || c.lower_open {
                return Vec::new();
            }
            continue;
        }
        let (l, u) = (c.lower / t, c.upper / t);
        if l > lo || (l == lo && c.lower_open) {
            lo = l;
            lo_open = c.lower_open;
        }
        if u < hi || (u == hi && c.upper_open) {
            hi = u;
            hi_open = c.upper_open;
        }
    }
    if hi < lo || (hi == lo && (lo_open || hi_open)) {
        return Vec::new();
    }
    let mut out = Vec::new();
    if !lo_open && lo > 0.0 {
        out.push(lo);
    }
    if !hi_open && hi.is_finite() {
        out.push(hi);
    }
    if hi.is_finite() {
        let t: f64 = rng.gen_range(0.0..1.0);
        out.push(lo + t * (hi - lo));
        out.push(lo + (hi - lo) * 1e-7);
        out.push(hi - (hi - lo) * 1e-7);
    } else {
        out.push(lo.max(1e-300) * (1.0 + rng.gen_range(0.0..10.0)));
    }
    out.retain(|&a| a > 0.0 && a.is_finite());
    out
}

/// Outcome of looking for a confirmed non-simple eigenvector.
fn confirm_non_simple(
    a: &TropMatrix,
    lambda: f64,
    x: &IntervalBox,
    candidates: impl IntoIterator<Item = TropVector>,
    tol: Tolerance,
) -> Option<Verdict> {
    for z in candidates {
        if let Ok(v) = is_x_simple_image_eigenvector(a, lambda, &z, x, tol) {
            if v.is_no() {
                return Some(v);
            }
        }
    }
    None
}

fn eigencone_meets(es: &EigenStructure, x: &IntervalBox, settings: &Settings) -> Result<Meet> {
    let g = ConeSpan::new(es.generating.clone());
    let meet = cones_meet_box(&[g], x, settings.tol, settings.eps)?;
    Ok(match meet {
        Meet::Yes(w) if w.is_zero() => Meet::No(w.into_inner()),
        other => other,
    })
}

fn finish_no(mut v: Verdict, confirmed: Verdict) -> Verdict {
    v.decision = Decision::No;
    v.witness = confirmed.witness;
    v.alternative = confirmed.alternative;
    v.push(
        Condition::new("witness_not_simple", true)
            .note("the witness eigenvector has a second solution in the box"),
    );
    v
}

/// Does every nonzero eigenvector in `X` for `λ` satisfy: `x` is the only
/// solution in `X` of `A ⊗ y = λ x`?
///
/// Evaluates, for every `i`, whether `spann(A^{(i)}) ∩ V(A,λ)` meets `X^{(i}`
/// and, for every `l ∈ c(x̲) ∖ N_c` with `x̲_l < x̄_l`, whether `V(A,λ)` meets the
/// box fixed at `x̲_l`. All empty means yes. When one of them is nonempty the
/// point found is checked for a second solution; if none can be exhibited
/// (directly or among sampled eigenvectors) the verdict is inconclusive.
pub fn has_x_simple_eigencone(a: &TropMatrix, lambda: f64, x: &IntervalBox, settings: &Settings) -> Result<Verdict> {
    let n = a.require_square()?;
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.len() });
    }
    let tol = settings.tol;
    let es = eigen_structure(a, lambda, tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut v = Verdict::new("X-simple image eigencone", Decision::Yes);

    let meet = eigencone_meets(&es, x, settings)?;
    match &meet {
        Meet::No(_) => return Err(Error::EmptyEigenconeInBox),
        Meet::Yes(w) => v.push(Condition::new("eigencone_meets_box", true).vector("point", w.as_slice())),
        Meet::Unknown(p) => {
            if sample_eigenvectors_in_box(&es, x, settings.samples, &mut rng, tol).is_empty() {
                v.decision = Decision::Inconclusive;
                v.push(
                    Condition::new("eigencone_meets_box", false)
                        .vector("projection", p)
                        .note("could not certify a nonzero eigenvector in the box"),
                );
                return Ok(v);
            }
            v.push(Condition::new("eigencone_meets_box", true).note("found by sampling"));
        }
    }

    let g = ConeSpan::new(es.generating.clone());
    let mut offending: Vec<TropVector> = Vec::new();
    let mut unknown = false;
    for i in 0..n {
        let id = format!("removable_column_{i}_misses_box");
        let Ok(xi) = x.with_lower_open(i) else {
            v.push(Condition::new(id, true).note("X_i is a single point"));
            continue;
        };
        let wi = ConeSpan::new(a.column_deleted(i)?);
        let m = cones_meet_box(&[wi, g.clone()], &xi, tol, settings.eps)?;
        record(&mut v, id, &m, &mut offending, &mut unknown);
    }
    let closed = x.lower_closed_set();
    for &l in closed.difference(es.critical_nodes()) {
        let c = x.interval(l);
        if !(c.lower < c.upper) {
            continue;
        }
        let id = format!("fixed_coordinate_{l}_misses_eigencone");
        match fixed_box(a, lambda, x, l) {
            None => v.push(Condition::new(id, true).note("fixed box is empty")),
            Some(bl) => {
                let m = cones_meet_box(std::slice::from_ref(&g), &bl, tol, settings.eps)?;
                record(&mut v, id, &m, &mut offending, &mut unknown);
            }
        }
    }

    if offending.is_empty() && !unknown {
        v.witness = match meet {
            Meet::Yes(w) => Some(w),
            _ => None,
        };
        return Ok(v);
    }
    if let Some(c) = confirm_non_simple(a, lambda, x, offending.iter().cloned(), tol) {
        return Ok(finish_no(v, c));
    }
    let sampled = sample_eigenvectors_in_box(&es, x, settings.samples, &mut rng, tol);
    if let Some(c) = confirm_non_simple(a, lambda, x, sampled, tol) {
        return Ok(finish_no(v, c));
    }
    v.decision = Decision::Inconclusive;
    v.push(
        Condition::new("witness_not_simple", false)
            .note("criterion not met but no eigenvector with a second solution was found"),
    );
    Ok(v)
}

fn record(v: &mut Verdict, id: String, m: &Meet, offending: &mut Vec<TropVector>, unknown: &mut bool) {
    match m {
        Meet::No(p) => v.push(Condition::new(id, true).vector("projection", p)),
        Meet::Yes(w) => {
            v.push(Condition::new(id, false).vector("projection", w.as_slice()));
            offending.push(w.clone());
        }
        Meet::Unknown(p) => {
            *unknown = true;
            v.push(
                Condition::new(id, false)
                    .vector("projection", p)
                    .note("undecided at an open upper endpoint"),
            );
        }
    }
}

/// The same question for boxes whose lower endpoints are all open.
///
/// Then the answer is yes iff every node is critical, every critical
/// component is a cycle, and for every generator `s` the cone spanned by the
/// remaining generators misses `X`.
pub fn has_x_simple_eigencone_open(
    a: &TropMatrix,
    lambda: f64,
    x: &IntervalBox,
    settings: &Settings,
) -> Result<Verdict> {
    let n = a.require_square()?;
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.len() });
    }
    if !x.is_lower_open() {
        return Err(Error::NotLowerOpen);
    }
    let tol = settings.tol;
    let es = eigen_structure(a, lambda, tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut v = Verdict::new("X-simple image eigencone (lower-open box)", Decision::Yes);

    let meet = eigencone_meets(&es, x, settings)?;
    let mut offending: Vec<TropVector> = Vec::new();
    match &meet {
        Meet::No(_) => return Err(Error::EmptyEigenconeInBox),
        Meet::Yes(w) => {
            v.push(Condition::new("eigencone_meets_box", true).vector("point", w.as_slice()));
        }
        Meet::Unknown(p) => {
            let s = sample_eigenvectors_in_box(&es, x, settings.samples, &mut rng, tol);
            if s.is_empty() {
                v.decision = Decision::Inconclusive;
                v.push(
                    Condition::new("eigencone_meets_box", false)
                        .vector("projection", p)
                        .note("could not certify a nonzero eigenvector in the box"),
                );
                return Ok(v);
            }
            v.push(Condition::new("eigencone_meets_box", true).note("found by sampling"));
        }
    }

    let all_critical = es.critical_nodes().len() == n;
    let cycles = es.components_are_cycles();
    v.push(Condition::new("all_nodes_critical", all_critical).set("critical_nodes", es.critical_nodes()));
    v.push(Condition::new("critical_components_are_cycles", cycles).sets("components", &es.crit_components));

    let mut unknown = false;
    if all_critical && cycles {
        for s in 0..es.generator_count() {
            let gs = ConeSpan::new(es.generating.column_deleted(s)?);
            let m = cones_meet_box(&[gs], x, tol, settings.eps)?;
            record(&mut v, format!("generators_without_{s}_miss_box"), &m, &mut offending, &mut unknown);
        }
        if offending.is_empty() && !unknown {
            if let Meet::Yes(w) = meet {
                v.witness = Some(w);
            }
            return Ok(v);
        }
    }
    let mut candidates = offending;
    if let Meet::Yes(w) = meet {
        candidates.push(w);
    }
    if let Some(c) = confirm_non_simple(a, lambda, x, candidates, tol) {
        return Ok(finish_no(v, c));
    }
    let sampled = sample_eigenvectors_in_box(&es, x, settings.samples, &mut rng, tol);
    if let Some(c) = confirm_non_simple(a, lambda, x, sampled, tol) {
        return Ok(finish_no(v, c));
    }
    v.decision = Decision::Inconclusive;
    v.push(
        Condition::new("witness_not_simple", false)
            .note("criterion not met but no eigenvector with a second solution was found"),
    );
    Ok(v)
}

/// Is `A ⊗ X ⊆ X`?
///
/// For closed boxes this is `x̲ <= A ⊗ x̲` and `A ⊗ x̄ <= x̄`. Open endpoints are
/// handled exactly: an open lower endpoint may be met with equality when the
/// infimum of `(A ⊗ x)_i` over the box is not attained, and symmetrically above.
pub fn is_invariant(a: &TropMatrix, x: &IntervalBox, tol: Tolerance) -> Result<Verdict> {
    let n = a.require_square()?;
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.len() });
    }
    let lo = x.lower();
    let hi = x.upper();
    let alo = a.mat_vec_ext(&lo);
    let ahi = a.mat_vec_ext(&hi);
    let mut v = Verdict::new("box is invariant", Decision::Yes);
    if !x.is_closed() {
        v.push(Condition::new("by_extension", true).note("open endpoints handled by attainment analysis"));
    }
    for i in 0..n {
        let c = x.interval(i);
        let lower_ok = if tol.gt(alo[i], lo[i]) {
            true
        } else if tol.eq(alo[i], lo[i]) {
            // equality: fine if x̲_i is attained, or if the infimum is never attained
            !c.lower_open
                || (0..n).any(|j| {
                    a.get(i, j) > 0.0 && tol.eq(a.get(i, j) * lo[j], alo[i]) && x.interval(j).lower_open
                })
        } else {
            false
        };
        let upper_ok = if c.upper.is_infinite() {
            true
        } else if ahi[i].is_infinite() {
            false
        } else if tol.lt(ahi[i], hi[i]) {
            true
        } else if tol.eq(ahi[i], hi[i]) {
            !c.upper_open
                || (0..n).all(|j| {
                    let w = a.get(i, j);
                    w == 0.0 || !tol.eq(w * hi[j], ahi[i]) || x.interval(j).upper_open
                })
        } else {
            false
        };
        v.push(
            Condition::new(format!("row_{i}_lower"), lower_ok)
                .scalar("a_times_lower", alo[i])
                .scalar("lower", lo[i]),
        );
        v.push(
            Condition::new(format!("row_{i}_upper"), upper_ok)
                .scalar("a_times_upper", ahi[i])
                .scalar("upper", hi[i]),
        );
        if !(lower_ok && upper_ok) {
            v.decision = Decision::No;
        }
    }
    Ok(v)
}

/// Smallest `t <= steps` with `A^t ⊗ x ∈ V(A, λ)` (the zero vector counts).
pub fn attraction_test(a: &TropMatrix, lambda: f64, x: &TropVector, steps: usize, tol: Tolerance) -> Option<usize> {
    let mut y = x.clone();
    for t in 0..=steps {
        if in_eigencone(a, &y, lambda, tol) {
            return Some(t);
        }
        if t == steps {
            break;
        }
        y = a.mat_vec(&y).ok()?;
        let m = y.max_entry();
        if m > 0.0 {
            y = y.scale(1.0 / m);
        }
    }
    None
}

/// A random point of `X`, avoiding open endpoints.
pub fn sample_box_point(x: &IntervalBox, rng: &mut impl Rng, cap: f64) -> TropVector {
    TropVector::from_raw(
        x.intervals()
            .iter()
            .map(|c| {
                if c.is_point() {
                    return c.lower;
                }
                let hi = if c.upper.is_finite() { c.upper } else { c.lower.max(1.0) * cap };
                match rng.gen_range(0..6) {
                    0 if !c.lower_open => c.lower,
                    1 if !c.upper_open => hi,
                    _ => {
                        let t: f64 = rng.gen_range(1e-6..1.0 - 1e-6);
                        c.lower + t * (hi - c.lower)
                    }
                }
            })
            .collect(),
    )
}

/// Points of `X` taken into `V(A,λ)` by `A` although not eigenvectors: a
/// nonzero `y ∈ X` with `A ⊗ y = 0`.
fn zero_image_point(a: &TropMatrix, x: &IntervalBox, tol: Tolerance) -> Option<TropVector> {
    let n = x.len();
    let zero_cols: Vec<usize> = (0..n).filter(|&j| a.is_zero_column(j)).collect();
    if zero_cols.is_empty() {
        return None;
    }
    let mut y = vec![0.0; n];
    for j in 0..n {
        let c = x.interval(j);
        if zero_cols.contains(&j) {
            y[j] = c.point_at_most(f64::INFINITY)?;
        } else if !c.contains(0.0, tol) {
            return None;
        }
    }
    let y = TropVector::from_raw(y);
    (!y.is_zero() && x.contains(&y, tol)).then_some(y)
}

/// Is every point of `X` that is eventually mapped into `V(A, λ)` already in it?
///
/// No when the eigencone is not `X`-simple (a second solution of
/// `A ⊗ y = λ x` reaches `V` in one step), or when `A` kills a nonzero point
/// of `X`. Yes when it is `X`-simple and `X` is invariant. Otherwise the
/// verdict is inconclusive unless a sampled orbit produces a counterexample.
pub fn weak_x_robustness(a: &TropMatrix, lambda: f64, x: &IntervalBox, settings: &Settings) -> Result<Verdict> {
    let n = a.require_square()?;
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.len() });
    }
    let tol = settings.tol;
    eigen_structure(a, lambda, tol)?;
    let mut v = Verdict::new("weakly (X, lambda)-robust", Decision::Yes);

    if let Some(y) = zero_image_point(a, x, tol) {
        v.decision = Decision::No;
        v.push(
            Condition::new("no_nonzero_point_with_zero_image", false).vector("point", y.as_slice()),
        );
        return Ok(v.with_witness(y));
    }
    v.push(Condition::new("no_nonzero_point_with_zero_image", true));

    let simple = match has_x_simple_eigencone(a, lambda, x, settings) {
        Ok(s) => Some(s),
        Err(Error::EmptyEigenconeInBox) => None,
        Err(e) => return Err(e),
    };
    let simple_decision = simple.as_ref().map(|s| s.decision);
    match &simple {
        Some(s) => v.push(Condition::new("x_simple_eigencone", s.is_yes()).text("decision", format!("{:?}", s.decision))),
        None => v.push(Condition::new("x_simple_eigencone", true).note("no nonzero eigenvector in the box")),
    }
    if let Some(s) = &simple {
        if s.is_no() {
            let y = s.alternative.clone().expect("no verdict carries a second solution");
            v.decision = Decision::No;
            v.push(
                Condition::new("second_solution_attracted", true)
                    .vector("eigenvector", s.witness.as_ref().map(|w| w.as_slice()).unwrap_or(&[]))
                    .note("A maps the witness onto lambda times the eigenvector"),
            );
            return Ok(v.with_witness(y));
        }
    }
    let inv = is_invariant(a, x, tol)?;
    v.push(Condition::new("box_invariant", inv.is_yes()));
    let simple_yes = simple_decision.is_none_or(|d| d == Decision::Yes);
    if simple_yes && inv.is_yes() {
        return Ok(v);
    }

    // orbit evidence
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let cap = surrogate_for(a, lambda, x);
    for _ in 0..settings.orbit_starts {
        let y = sample_box_point(x, &mut rng, cap);
        if let Some(t) = attraction_test(a, lambda, &y, settings.orbit_steps, tol) {
            if t > 0 {
                v.decision = Decision::No;
                v.push(Condition::new("orbit_counterexample", true).scalar("steps", t as f64));
                return Ok(v.with_witness(y));
            }
        }
    }
    v.decision = Decision::Inconclusive;
    v.push(
        Condition::new("orbit_counterexample", false)
            .scalar("starts", settings.orbit_starts as f64)
            .scalar("steps", settings.orbit_steps as f64)
            .note("no sampled orbit entered the eigencone from outside"),
    );
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> TropMatrix {
        TropMatrix::from_rows(rows).unwrap()
    }

    fn v(x: &[f64]) -> TropVector {
        TropVector::new(x.to_vec()).unwrap()
    }

    fn set(v: &[usize]) -> NodeSet {
        v.iter().copied().collect()
    }

    const TOL: Tolerance = Tolerance { rel: 1e-9 };

    fn closed(lo: &[f64], hi: &[f64]) -> IntervalBox {
        IntervalBox::closed(lo, hi).unwrap()
    }

    fn lower_open(lo: &[f64], hi: &[f64]) -> IntervalBox {
        let t = vec![true; lo.len()];
        let f = vec![false; lo.len()];
        IntervalBox::from_parts(lo, hi, &t, &f).unwrap()
    }

    fn sym() -> TropMatrix {
        m(&[&[1.0, 0.5], &[0.5, 1.0]])
    }

    #[test]
    fn worked_box_example() {
        let x = IntervalBox::from_parts(
            &[1.0, 3.0, 7.0],
            &[2.0, 5.0, 9.0],
            &[false, false, true],
            &[false, true, false],
        )
        .unwrap();
        assert_eq!(x.lower(), vec![1.0, 3.0, 7.0]);
        assert_eq!(x.lower_closed_set(), set(&[0, 1]));
        assert_eq!(x.up_closure().to_string(), "[1,∞)×[3,∞)×(7,∞)");
        assert!(!x.contains(&v(&[1.0, 3.0, 7.0]), TOL));
        assert!(x.contains(&v(&[1.0, 3.0, 8.0]), TOL));
        assert!(!x.contains(&v(&[1.0, 5.0, 8.0]), TOL));
    }

    #[test]
    fn box_validation() {
        assert!(Interval::new(2.0, 1.0, false, false).is_err());
        assert!(Interval::new(1.0, 1.0, true, false).is_err());
        assert!(Interval::new(-1.0, 1.0, false, false).is_err());
        assert!(Interval::new(1.0, f64::INFINITY, false, false).unwrap().upper_open);
    }

    #[test]
    fn solvable_in_box_examples() {
        let a = sym();
        let r = solvable_in_box(&a, &v(&[2.0, 1.0]), &closed(&[1.0, 1.0], &[2.0, 2.0]), TOL).unwrap();
        assert!(r.is_yes());
        assert_eq!(r.witness.unwrap(), v(&[2.0, 1.0]));
        let r = solvable_in_box(&a, &v(&[2.0, 1.0]), &closed(&[0.1, 0.1], &[0.5, 0.5]), TOL).unwrap();
        assert!(r.is_no());
        let p = v(&[0.3, 0.7]);
        let b = a.mat_vec(&p).unwrap();
        let r = solvable_in_box(&a, &b, &IntervalBox::point(&p), TOL).unwrap();
        assert!(r.is_yes());
        assert!(r.witness.unwrap().approx_eq(&p, TOL));
    }

    #[test]
    fn unique_in_box_examples() {
        let a = sym();
        let b = v(&[2.0, 1.0]);
        assert!(unique_in_box(&a, &b, &closed(&[1.0, 1.0], &[2.0, 2.0]), TOL).unwrap().is_yes());
        let r = unique_in_box(&a, &b, &closed(&[0.9, 0.9], &[2.0, 2.0]), TOL).unwrap();
        assert!(r.is_no());
        let (y1, y2) = (r.witness.unwrap(), r.alternative.unwrap());
        assert!(!y1.approx_eq(&y2, TOL));
        for y in [y1, y2] {
            assert!(a.mat_vec(&y).unwrap().approx_eq(&b, TOL));
        }
        assert!(unique_in_box(&a, &v(&[1.0, 1.0]), &closed(&[0.5, 0.5], &[3.0, 3.0]), TOL).unwrap().is_yes());
        assert_eq!(
            unique_in_box(&a, &b, &closed(&[0.1, 0.1], &[0.5, 0.5]), TOL),
            Err(Error::NotSolvableInBox)
        );
    }

    #[test]
    fn degenerate_coordinate_outside_gamma_keeps_uniqueness() {
        // A = [1 1], b = 1, X = [0.5,1] × {0.5}: the only solution is (1, 0.5)
        let a = m(&[&[1.0, 1.0], &[0.0, 0.0]]);
        let x = closed(&[0.5, 0.5], &[1.0, 0.5]);
        let r = unique_in_box(&a, &v(&[1.0, 0.0]), &x, TOL).unwrap();
        assert!(r.is_yes());
    }

    #[test]
    fn x_simple_eigenvector_examples() {
        let a = sym();
        let r = is_x_simple_image_eigenvector(&a, 1.0, &v(&[2.0, 1.0]), &closed(&[1.0, 1.0], &[2.0, 2.0]), TOL).unwrap();
        assert!(r.is_yes());
        let r = is_x_simple_image_eigenvector(&a, 1.0, &v(&[1.0, 2.0]), &closed(&[0.9, 0.9], &[2.0, 2.0]), TOL).unwrap();
        assert!(r.is_no());
        let y = r.alternative.unwrap();
        assert!(y.get(0) < 1.0 && y.get(0) >= 0.9 && y.get(1) == 2.0);
        let r = is_x_simple_image_eigenvector(&a, 1.0, &v(&[1.0, 1.0]), &closed(&[0.1, 0.1], &[5.0, 5.0]), TOL).unwrap();
        assert!(r.is_yes());
        assert_eq!(
            is_x_simple_image_eigenvector(&a, 1.0, &v(&[1.0, 3.0]), &closed(&[0.1, 0.1], &[5.0, 5.0]), TOL),
            Err(Error::NotAnEigenvectorInBox)
        );
    }

    #[test]
    fn derived_boxes_examples() {
        let a = sym();
        let x = closed(&[1.0, 1.0], &[2.0, 2.0]);
        let d = derived_boxes(&a, 1.0, &x, 1).unwrap();
        assert_eq!(d.upper_l, vec![2.0, 1.0]);
        assert!(d.open_at_l.unwrap().interval(1).lower_open);
        let d = derived_boxes(&a, 1.0, &x, 0).unwrap();
        assert!(d.fixed_at_l.is_none());
        // a_ll < λ: nonempty, with strict lower bounds pushed up
        let b = m(&[&[0.5, 0.0], &[3.0, 1.0]]);
        let d = derived_boxes(&b, 1.0, &closed(&[1.0, 1.0], &[2.0, 5.0]), 0).unwrap();
        let f = d.fixed_at_l.unwrap();
        assert!(f.interval(0).is_point());
        assert_eq!((f.interval(1).lower, f.interval(1).lower_open), (3.0, true));
    }

    #[test]
    fn eigencone_decider_examples() {
        let a = sym();
        let s = Settings::default();
        let r = has_x_simple_eigencone(&a, 1.0, &closed(&[1.0, 1.0], &[2.0, 2.0]), &s).unwrap();
        assert!(r.is_yes(), "{r:?}");
        let r = has_x_simple_eigencone(&a, 1.0, &closed(&[0.9, 0.9], &[2.0, 2.0]), &s).unwrap();
        assert!(r.is_no());
        let w = r.witness.unwrap();
        assert!(is_eigenvector(&a, &w, 1.0, TOL));
        let r = has_x_simple_eigencone(&a, 1.0, &IntervalBox::point(&v(&[1.0, 1.0])), &s).unwrap();
        assert!(r.is_yes());
        assert_eq!(
            has_x_simple_eigencone(&a, 1.0, &closed(&[5.0, 0.1], &[6.0, 0.2]), &s),
            Err(Error::EmptyEigenconeInBox)
        );
    }

    #[test]
    fn open_decider_examples() {
        let a = sym();
        let s = Settings::default();
        let r = has_x_simple_eigencone_open(&a, 1.0, &lower_open(&[1.0, 1.0], &[2.0, 2.0]), &s).unwrap();
        assert!(r.is_yes(), "{r:?}");
        let p0 = r.condition("generators_without_0_miss_box").unwrap();
        let p1 = r.condition("generators_without_1_miss_box").unwrap();
        use crate::verdict::{Ext, Value};
        assert_eq!(p0.get("projection"), Some(&Value::Vector(vec![Ext(1.0), Ext(2.0)])));
        assert_eq!(p1.get("projection"), Some(&Value::Vector(vec![Ext(2.0), Ext(1.0)])));

        let r = has_x_simple_eigencone_open(&a, 1.0, &lower_open(&[0.9, 0.9], &[2.0, 2.0]), &s).unwrap();
        assert!(r.is_no());

        let full = m(&[&[2.0, 2.0], &[2.0, 2.0]]);
        let r = has_x_simple_eigencone_open(&full, 2.0, &lower_open(&[0.5, 0.5], &[2.0, 2.0]), &s).unwrap();
        assert!(r.is_no());
        assert!(!r.condition("critical_components_are_cycles").unwrap().holds);

        assert_eq!(
            has_x_simple_eigencone_open(&a, 1.0, &closed(&[1.0, 1.0], &[2.0, 2.0]), &s),
            Err(Error::NotLowerOpen)
        );
    }

    #[test]
    fn invariance_examples() {
        assert!(is_invariant(&sym(), &closed(&[1.0, 1.0], &[2.0, 2.0]), TOL).unwrap().is_yes());
        assert!(is_invariant(&m(&[&[2.0, 3.0], &[1.0, 2.0]]), &closed(&[1.0, 1.0], &[2.0, 2.0]), TOL)
            .unwrap()
            .is_no());
        assert!(is_invariant(&m(&[&[2.0, 3.0], &[1.0, 2.0]]), &IntervalBox::orthant(2), TOL).unwrap().is_yes());
        // identity on an open box: every point maps to itself
        let x = lower_open(&[1.0, 1.0], &[2.0, 2.0]);
        assert!(is_invariant(&TropMatrix::identity(2), &x, TOL).unwrap().is_yes());
        // an open lower endpoint met with an attained infimum
        let x = IntervalBox::from_parts(&[1.0, 1.0], &[2.0, 2.0], &[true, false], &[false, false]).unwrap();
        let shift = m(&[&[0.0, 1.0], &[0.0, 1.0]]);
        assert!(is_invariant(&shift, &x, TOL).unwrap().is_no());
    }

    #[test]
    fn robustness_examples() {
        let a = sym();
        let s = Settings::default();
        let r = weak_x_robustness(&a, 1.0, &closed(&[1.0, 1.0], &[2.0, 2.0]), &s).unwrap();
        assert!(r.is_yes(), "{r:?}");
        let r = weak_x_robustness(&a, 1.0, &closed(&[0.9, 0.9], &[2.0, 2.0]), &s).unwrap();
        assert!(r.is_no());
        let y = r.witness.unwrap();
        assert_eq!(attraction_test(&a, 1.0, &y, 10, TOL), Some(1));
        let p = IntervalBox::point(&v(&[1.0, 1.0]));
        assert!(weak_x_robustness(&a, 1.0, &p, &s).unwrap().is_yes());
    }

    #[test]
    fn attraction_examples() {
        let a = sym();
        assert_eq!(attraction_test(&a, 1.0, &v(&[1.0, 1.0]), 5, TOL), Some(0));
        assert_eq!(attraction_test(&a, 1.0, &v(&[0.95, 2.0]), 5, TOL), Some(1));
        let b = m(&[&[2.0, 3.0], &[1.0, 2.0]]);
        assert_eq!(attraction_test(&b, 2.0, &v(&[1.0, 1.0]), 5, TOL), Some(1));
    }

    #[test]
    fn box_json_uses_inf() {
        let x = IntervalBox::orthant(1);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"lower":[0.0],"upper":["inf"],"lower_open":[false],"upper_open":[true]}"#);
        let back: IntervalBox = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
