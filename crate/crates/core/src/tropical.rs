//! The max-times semiring on nonnegative reals.
//!
//! `a ⊕ b = max(a, b)` and `a ⊗ b = a · b`. Zero is the additive identity and
//! is absorbing for `⊗`. Comparisons go through [`Tolerance`], which compares
//! positive numbers in the log domain and treats zero exactly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::NodeSet;

/// Default relative tolerance for log-domain comparisons.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Relative tolerance: `a ≈ b` iff both are zero, both are `+∞`, or
/// `|ln a - ln b| <= rel`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: DEFAULT_REL_TOL,
        }
    }
}

impl Tolerance {
    pub const fn new(rel: f64) -> Self {
        Self { rel }
    }

    pub fn eq(self, a: f64, b: f64) -> bool {
        if a == b {
            return true;
        }
        if a <= 0.0 || b <= 0.0 || a.is_infinite() || b.is_infinite() {
            return false;
        }
        (a.ln() - b.ln()).abs() <= self.rel
    }

    pub fn le(self, a: f64, b: f64) -> bool {
        a <= b || self.eq(a, b)
    }

    pub fn lt(self, a: f64, b: f64) -> bool {
        a < b && !self.eq(a, b)
    }

    pub fn ge(self, a: f64, b: f64) -> bool {
        self.le(b, a)
    }

    pub fn gt(self, a: f64, b: f64) -> bool {
        self.lt(b, a)
    }
}

/// `a ⊗ b` on the extended half-line with `0 · ∞ = 0`.
#[inline]
pub fn ext_mul(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

fn check_entries(values: &[f64]) -> Result<()> {
    for (index, &value) in values.iter().enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidEntry { index, value });
        }
    }
    Ok(())
}

/// A finite nonnegative vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TropVector(Vec<f64>);

impl TropVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        check_entries(&entries)?;
        Ok(Self(entries))
    }

    pub(crate) fn from_raw(entries: Vec<f64>) -> Self {
        debug_assert!(entries.iter().all(|v| v.is_finite() && *v >= 0.0));
        Self(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    /// Unit vector `e_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().copied()
    }

    pub fn support(&self) -> NodeSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0.0)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&v| v > 0.0)
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self(self.0.iter().map(|v| v * alpha).collect())
    }

    /// Componentwise maximum.
    pub fn oplus(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a.max(*b)).collect())
    }

    pub fn max_entry(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        self.len() == other.len() && self.iter().zip(other.iter()).all(|(a, b)| tol.eq(a, b))
    }

    pub fn approx_le(&self, other: &Self, tol: Tolerance) -> bool {
        self.len() == other.len() && self.iter().zip(other.iter()).all(|(a, b)| tol.le(a, b))
    }
}

impl fmt::Display for TropVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A dense nonnegative matrix, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TropMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl TropMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        check_entries(&data)?;
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[TropVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for i in 0..rows {
                m.set(i, j, c.get(i));
            }
        }
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn diag(x: &TropVector) -> Self {
        let mut m = Self::zeros(x.len(), x.len());
        for i in 0..x.len() {
            m.set(i, i, x.get(i));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> TropVector {
        TropVector((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn columns(&self) -> Vec<TropVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero_column(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j) == 0.0)
    }

    pub fn max_entry(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }

    pub fn min_positive_entry(&self) -> Option<f64> {
        self.data
            .iter()
            .copied()
            .filter(|&v| v > 0.0)
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.min(v))))
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * alpha).collect(),
        }
    }

    pub fn oplus(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.max(*b))
                .collect(),
        })
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| tol.eq(*a, *b))
    }

    /// `A ⊗ x`, `(A ⊗ x)_i = max_j a_ij x_j`.
    pub fn mat_vec(&self, x: &TropVector) -> Result<TropVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok(TropVector(self.apply(x.as_slice())))
    }

    pub(crate) fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0.0f64, |acc, (a, b)| acc.max(a * b))
            })
            .collect()
    }

    /// `A ⊗ x` where `x` may carry `+∞` entries; uses `0 · ∞ = 0`.
    pub fn mat_vec_ext(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "dimension mismatch in mat_vec_ext");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0.0f64, |acc, (a, b)| acc.max(ext_mul(*a, *b)))
            })
            .collect()
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * other.get(k, j);
                    if v > out.get(i, j) {
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// `A^{⊗k}` for `k >= 1`, by repeated squaring.
    pub fn power(&self, k: usize) -> Result<Self> {
        self.require_square()?;
        if k == 0 {
            return Err(Error::Precondition("matrix power requires k >= 1".into()));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul_unchecked(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(result.expect("k >= 1"))
    }

    /// `A⁺ = A ⊕ A² ⊕ …`; entry `(i, j)` is the heaviest path weight from `i` to `j`.
    ///
    /// Requires every cycle mean to be at most 1. Computed by squaring
    /// `I ⊕ A` until it covers all path lengths up to `n`, then one multiply by `A`.
    pub fn kleene_plus(&self, tol: Tolerance) -> Result<Self> {
        self.require_square()?;
        let mcgm = crate::spectral::mcgm(self)?;
        if !tol.le(mcgm, 1.0) {
            return Err(Error::Divergent { mcgm });
        }
        Ok(self.kleene_plus_unchecked())
    }

    pub(crate) fn kleene_plus_unchecked(&self) -> Self {
        let n = self.rows;
        let mut star = self.oplus(&Self::identity(n)).expect("square");
        let mut covered = 1;
        while covered < n {
            star = star.mul_unchecked(&star);
            covered *= 2;
        }
        self.mul_unchecked(&star)
    }

    /// `I ⊕ A⁺`.
    pub fn kleene_star(&self, tol: Tolerance) -> Result<Self> {
        let plus = self.kleene_plus(tol)?;
        plus.oplus(&Self::identity(self.rows))
    }

    /// Diagonal similarity `diag(x)⁻¹ · A · diag(x)`.
    pub fn similarity_scale(&self, x: &TropVector) -> Result<Self> {
        let n = self.require_square()?;
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
        if !x.is_positive() {
            return Err(Error::NonPositiveScaling);
        }
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(i, j) * x.get(j) / x.get(i));
            }
        }
        Ok(out)
    }

    /// The matrix with column `i` removed.
    pub fn column_deleted(&self, i: usize) -> Result<Self> {
        if i >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.cols,
            });
        }
        let keep: Vec<usize> = (0..self.cols).filter(|&j| j != i).collect();
        Ok(self.select_columns(&keep))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    /// Principal submatrix on `nodes` (in increasing order).
    pub fn principal_submatrix(&self, nodes: &NodeSet) -> Self {
        let idx: Vec<usize> = nodes.iter().copied().collect();
        let mut out = Self::zeros(idx.len(), idx.len());
        for (ii, &i) in idx.iter().enumerate() {
            for (jj, &j) in idx.iter().enumerate() {
                out.set(ii, jj, self.get(i, j));
            }
        }
        out
    }
}

impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", TropVector(self.row(i).to_vec()))?;
        }
        write!(f, "]")
    }
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

    const TOL: Tolerance = Tolerance { rel: 1e-12 };

    #[test]
    fn mat_vec_examples() {
        let a = m(&[&[2.0, 3.0], &[1.0, 2.0]]);
        assert!(a.mat_vec(&v(&[1.0, 0.5])).unwrap().approx_eq(&v(&[2.0, 1.0]), TOL));
        assert!(a.mat_vec(&v(&[1.5, 1.0])).unwrap().approx_eq(&v(&[3.0, 2.0]), TOL));
        let b = v(&[0.3, 0.0, 7.0]);
        assert_eq!(TropMatrix::identity(3).mat_vec(&b).unwrap(), b);
        assert!(matches!(
            a.mat_vec(&v(&[1.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn powers() {
        let a = m(&[&[0.0, 0.5], &[0.5, 0.0]]);
        assert_eq!(a.power(1).unwrap(), a);
        assert!(a
            .power(2)
            .unwrap()
            .approx_eq(&m(&[&[0.25, 0.0], &[0.0, 0.25]]), TOL));
        assert_eq!(TropMatrix::identity(4).power(7).unwrap(), TropMatrix::identity(4));
        assert!(a.power(0).is_err());
        // A^5 via squaring equals repeated products
        let b = m(&[&[0.3, 2.0, 0.0], &[0.1, 0.7, 1.1], &[0.9, 0.0, 0.4]]);
        let mut slow = b.clone();
        for _ in 1..5 {
            slow = slow.mat_mul(&b).unwrap();
        }
        assert!(b.power(5).unwrap().approx_eq(&slow, TOL));
    }

    #[test]
    fn kleene_plus_examples() {
        let a = m(&[&[0.0, 0.5], &[0.5, 0.0]]);
        assert!(a
            .kleene_plus(Tolerance::default())
            .unwrap()
            .approx_eq(&m(&[&[0.25, 0.5], &[0.5, 0.25]]), TOL));
        let b = m(&[&[1.0, 1.5], &[0.5, 1.0]]);
        assert!(b.kleene_plus(Tolerance::default()).unwrap().approx_eq(&b, TOL));
        assert!(matches!(
            m(&[&[2.0]]).kleene_plus(Tolerance::default()),
            Err(Error::Divergent { .. })
        ));
    }

    #[test]
    fn similarity_scaling() {
        let a = m(&[&[2.0, 3.0], &[1.0, 2.0]]);
        assert_eq!(a.similarity_scale(&TropVector::ones(2)).unwrap(), a);
        let s = a.similarity_scale(&v(&[2.5, 1.5])).unwrap();
        assert!(s.approx_eq(&m(&[&[2.0, 1.8], &[5.0 / 3.0, 2.0]]), TOL));
        // eigenvector transport: (1.5, 1) -> (0.6, 2/3)
        let y = v(&[0.6, 2.0 / 3.0]);
        assert!(s.mat_vec(&y).unwrap().approx_eq(&y.scale(2.0), TOL));
        assert!(matches!(
            a.similarity_scale(&v(&[1.0, 0.0])),
            Err(Error::NonPositiveScaling)
        ));
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(TropMatrix::from_rows(&[[1.0, -1.0]]).is_err());
        assert!(TropVector::new(vec![f64::INFINITY]).is_err());
        assert!(TropVector::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn ext_arithmetic_honors_zero_times_infinity() {
        let a = m(&[&[1.0, 0.0], &[2.0, 0.0]]);
        let out = a.mat_vec_ext(&[0.5, f64::INFINITY]);
        assert_eq!(out, vec![0.5, 1.0]);
    }

    #[test]
    fn column_deletion() {
        let a = m(&[&[2.0, 3.0], &[1.0, 2.0]]);
        assert_eq!(a.column_deleted(1).unwrap(), m(&[&[2.0], &[1.0]]));
        assert_eq!(
            TropMatrix::identity(2).column_deleted(0).unwrap(),
            m(&[&[0.0], &[1.0]])
        );
        assert!(a.column_deleted(2).is_err());
    }
}
