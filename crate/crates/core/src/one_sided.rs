//! One-sided systems `A ⊗ x = b` via residuation.
//!
//! `γ*(A, b)` is the greatest `x` with `A ⊗ x <= b`. A vector `x` solves the
//! system iff `x <= γ*` and the columns where `x` is tight cover `supp(b)`
//! through the sets `M_j`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tropical::{Tolerance, TropMatrix, TropVector};
use crate::verdict::ext_vec;
use crate::NodeSet;

/// Default cap on the number of minimal coverings enumerated.
pub const DEFAULT_COVERING_LIMIT: usize = 1_000_000;

fn check_rows(a: &TropMatrix, b: &TropVector) -> Result<()> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    Ok(())
}

/// `γ*_j = min_{i: a_ij > 0} b_i / a_ij`, `+∞` for a zero column.
pub fn gamma_star(a: &TropMatrix, b: &TropVector) -> Result<Vec<f64>> {
    check_rows(a, b)?;
    Ok(gamma_star_unchecked(a, b.as_slice()))
}

pub(crate) fn gamma_star_unchecked(a: &TropMatrix, b: &[f64]) -> Vec<f64> {
    (0..a.cols())
        .map(|j| {
            (0..a.rows())
                .filter(|&i| a.get(i, j) > 0.0)
                .map(|i| b[i] / a.get(i, j))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// `M_j = {i : a_ij γ*_j = b_i ≠ 0}`.
pub fn m_sets(a: &TropMatrix, b: &TropVector, tol: Tolerance) -> Result<Vec<NodeSet>> {
    let g = gamma_star(a, b)?;
    Ok(m_sets_from(a, b.as_slice(), &g, tol))
}

pub(crate) fn m_sets_from(a: &TropMatrix, b: &[f64], gamma: &[f64], tol: Tolerance) -> Vec<NodeSet> {
    (0..a.cols())
        .map(|j| {
            if gamma[j].is_infinite() {
                return NodeSet::new();
            }
            (0..a.rows())
                .filter(|&i| b[i] > 0.0 && tol.eq(a.get(i, j) * gamma[j], b[i]))
                .collect()
        })
        .collect()
}

/// `A ⊗ γ*(A, b)`, the greatest vector of `spann(A)` below `b`.
pub fn principal_image(a: &TropMatrix, b: &TropVector) -> Result<TropVector> {
    let g = gamma_star(a, b)?;
    Ok(TropVector::from_raw(a.mat_vec_ext(&g)))
}

/// Whether `b` lies in the column span of `a`.
pub fn in_span(a: &TropMatrix, b: &TropVector, tol: Tolerance) -> Result<bool> {
    Ok(principal_image(a, b)?.approx_eq(b, tol))
}

fn union_of<'a>(sets: impl Iterator<Item = &'a NodeSet>) -> NodeSet {
    let mut out = NodeSet::new();
    for s in sets {
        out.extend(s.iter().copied());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemAnalysis {
    #[serde(with = "ext_vec")]
    pub gamma_star: Vec<f64>,
    pub m_sets: Vec<NodeSet>,
    pub support_b: NodeSet,
    pub solvable: bool,
    pub unique: bool,
}

impl SystemAnalysis {
    /// Columns `i` with `γ*_i ≠ 0` whose deletion still leaves a covering;
    /// each one gives a second solution.
    pub fn removable_columns(&self) -> Vec<usize> {
        if !self.solvable {
            return Vec::new();
        }
        (0..self.gamma_star.len())
            .filter(|&i| self.gamma_star[i] != 0.0 && self.covers_without(i))
            .collect()
    }

    pub fn covers_without(&self, i: usize) -> bool {
        let u = union_of(
            self.m_sets
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, s)| s),
        );
        u == self.support_b
    }
}

pub fn analyze(a: &TropMatrix, b: &TropVector, tol: Tolerance) -> Result<SystemAnalysis> {
    let gamma = gamma_star(a, b)?;
    let m = m_sets_from(a, b.as_slice(), &gamma, tol);
    let support_b = b.support();
    let solvable = union_of(m.iter()) == support_b;
    let mut out = SystemAnalysis {
        gamma_star: gamma,
        m_sets: m,
        support_b,
        solvable,
        unique: false,
    };
    out.unique = solvable && out.removable_columns().is_empty();
    Ok(out)
}

/// True iff `A ⊗ x = b` has exactly one solution.
pub fn in_simple_image(a: &TropMatrix, b: &TropVector, tol: Tolerance) -> Result<bool> {
    let s = analyze(a, b, tol)?;
    Ok(s.solvable && s.unique)
}

/// `A^{(i)}`: the matrix with column `i` removed.
pub fn column_deleted(a: &TropMatrix, i: usize) -> Result<TropMatrix> {
    a.column_deleted(i)
}

/// The full solution set as a union over minimal coverings `N'` of the boxes
/// `{x : x_j = γ*_j (j ∈ N'), x_j <= γ*_j otherwise}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionDescription {
    #[serde(with = "ext_vec")]
    pub gamma_star: Vec<f64>,
    pub m_sets: Vec<NodeSet>,
    pub support_b: NodeSet,
    pub minimal_coverings: Vec<NodeSet>,
}

impl SolutionDescription {
    /// Membership in the solution set: `x <= γ*` and the tight columns cover `supp(b)`.
    pub fn contains(&self, x: &TropVector, tol: Tolerance) -> bool {
        if x.len() != self.gamma_star.len() {
            return false;
        }
        let mut covered = NodeSet::new();
        for (j, xj) in x.iter().enumerate() {
            let g = self.gamma_star[j];
            if !tol.le(xj, g) {
                return false;
            }
            if tol.eq(xj, g) {
                covered.extend(self.m_sets[j].iter().copied());
            }
        }
        covered == self.support_b
    }

    /// A solution in the box of covering `k`: `γ*` on the covering, `fill` elsewhere
    /// (clamped to `γ*`).
    pub fn solution_for(&self, k: usize, fill: f64) -> TropVector {
        let cov = &self.minimal_coverings[k];
        TropVector::from_raw(
            self.gamma_star
                .iter()
                .enumerate()
                .map(|(j, &g)| if cov.contains(&j) { g } else { fill.min(g) })
                .collect(),
        )
    }
}

/// Enumerates all inclusion-minimal coverings of `supp(b)` by the sets `M_j`.
pub fn solution_description(
    a: &TropMatrix,
    b: &TropVector,
    tol: Tolerance,
    limit: usize,
) -> Result<SolutionDescription> {
    let s = analyze(a, b, tol)?;
    if !s.solvable {
        return Err(Error::Unsolvable);
    }
    let coverings = minimal_coverings(&s.m_sets, &s.support_b, limit)?;
    Ok(SolutionDescription {
        gamma_star: s.gamma_star,
        m_sets: s.m_sets,
        support_b: s.support_b,
        minimal_coverings: coverings,
    })
}

/// Depth-first search branching on the smallest uncovered element. A partial
/// selection is abandoned once some chosen set has no private element, since
/// adding more sets cannot restore minimality.
pub fn minimal_coverings(sets: &[NodeSet], target: &NodeSet, limit: usize) -> Result<Vec<NodeSet>> {
    let mut found: BTreeSet<NodeSet> = BTreeSet::new();
    let mut chosen: Vec<usize> = Vec::new();
    search(sets, target, &mut chosen, &mut found, limit)?;
    Ok(found.into_iter().collect())
}

fn has_private_elements(sets: &[NodeSet], chosen: &[usize], target: &NodeSet) -> bool {
    chosen.iter().all(|&c| {
        sets[c].iter().any(|e| {
            target.contains(e)
                && chosen
                    .iter()
                    .all(|&d| d == c || !sets[d].contains(e))
        })
    })
}

fn search(
    sets: &[NodeSet],
    target: &NodeSet,
    chosen: &mut Vec<usize>,
    found: &mut BTreeSet<NodeSet>,
    limit: usize,
) -> Result<()> {
    let covered = union_of(chosen.iter().map(|&c| &sets[c]));
    let Some(&e) = target.iter().find(|e| !covered.contains(e)) else {
        found.insert(chosen.iter().copied().collect());
        if found.len() > limit {
            return Err(Error::CoveringLimitExceeded(limit));
        }
        return Ok(());
    };
    for j in 0..sets.len() {
        if !sets[j].contains(&e) || chosen.contains(&j) {
            continue;
        }
        chosen.push(j);
        if has_private_elements(sets, chosen, target) {
            search(sets, target, chosen, found, limit)?;
        }
        chosen.pop();
    }
    Ok(())
}
