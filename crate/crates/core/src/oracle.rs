//! Brute-force reference implementations.
//!
//! Everything here is deliberately naive and shares no algorithmic code with
//! the rest of the crate: only matrix and vector arithmetic are reused. The
//! functions are exponential and guarded by size cutoffs.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::interval::IntervalBox;
use crate::tropical::{Tolerance, TropMatrix, TropVector};
use crate::NodeSet;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    /// Grid points per free coefficient.
    pub resolution: usize,
    /// Random coefficient vectors used when the full grid is too large.
    pub samples: usize,
    pub seed: u64,
    pub tol: Tolerance,
    /// Largest `n` for subset enumeration.
    pub support_cutoff: usize,
    /// Largest `n` for eigencone sweeps.
    pub eigencone_cutoff: usize,
    /// Largest `n` for solution counting in a box.
    pub unique_cutoff: usize,
    /// Interior points per coordinate when counting solutions.
    pub interior_points: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            resolution: 25,
            samples: 4000,
            seed: 7,
            tol: Tolerance::default(),
            support_cutoff: 5,
            eigencone_cutoff: 6,
            unique_cutoff: 4,
            interior_points: 3,
        }
    }
}

fn cutoff(size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::SizeCutoff { size, cutoff: limit })
    } else {
        Ok(())
    }
}

/// All elementary cycles of `digr(A)`, each listed from its smallest node.
pub fn cycles(a: &TropMatrix) -> Vec<Vec<usize>> {
    let n = a.rows();
    let mut out = Vec::new();
    for s in 0..n {
        let mut path = vec![s];
        let mut used = vec![false; n];
        used[s] = true;
        extend(a, s, &mut path, &mut used, &mut out);
    }
    out
}

fn extend(a: &TropMatrix, s: usize, path: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let last = *path.last().unwrap();
    for j in s..a.rows() {
        if a.get(last, j) == 0.0 {
            continue;
        }
        if j == s {
            out.push(path.clone());
        } else if !used[j] {
            used[j] = true;
            path.push(j);
            extend(a, s, path, used, out);
            path.pop();
            used[j] = false;
        }
    }
}

/// Geometric mean of the weights along a cycle.
pub fn cycle_mean(a: &TropMatrix, cycle: &[usize]) -> f64 {
    let k = cycle.len();
    let log: f64 = (0..k).map(|t| a.get(cycle[t], cycle[(t + 1) % k]).ln()).sum();
    (log / k as f64).exp()
}

/// Maximum cycle geometric mean by enumerating every elementary cycle.
pub fn brute_mcgm(a: &TropMatrix) -> f64 {
    cycles(a)
        .iter()
        .map(|c| cycle_mean(a, c))
        .fold(0.0, f64::max)
}

/// `A⁺` by Floyd-Warshall; `None` if some cycle is heavier than 1.
pub fn brute_kleene_plus(a: &TropMatrix, tol: Tolerance) -> Option<TropMatrix> {
    if !tol.le(brute_mcgm(a), 1.0) {
        return None;
    }
    let n = a.rows();
    let mut d = a.to_rows();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] * d[k][j];
                if via > d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    TropMatrix::from_rows(&d).ok()
}

fn submatrix(a: &TropMatrix, s: &[usize]) -> TropMatrix {
    let rows: Vec<Vec<f64>> = s.iter().map(|&i| s.iter().map(|&j| a.get(i, j)).collect()).collect();
    TropMatrix::from_rows(&rows).unwrap_or_else(|_| TropMatrix::zeros(0, 0))
}

/// Greatest-support eigenvector of the principal submatrix on `s` for `λ`
/// (as a full-length vector), if the submatrix has a positive one.
fn positive_eigenvector_on(a: &TropMatrix, s: &[usize], lambda: f64, tol: Tolerance) -> Option<TropVector> {
    let sub = submatrix(a, s);
    if !tol.eq(brute_mcgm(&sub), lambda) {
        return None;
    }
    let plus = brute_kleene_plus(&sub.scale(1.0 / lambda), tol)?;
    let k = s.len();
    let mut x = vec![0.0; a.rows()];
    for c in 0..k {
        if tol.eq(plus.get(c, c), 1.0) {
            for r in 0..k {
                x[s[r]] = f64::max(x[s[r]], plus.get(r, c));
            }
        }
    }
    if s.iter().any(|&i| x[i] == 0.0) {
        return None;
    }
    let x = TropVector::new(x).ok()?;
    a.mat_vec(&x).ok()?.approx_eq(&x.scale(lambda), tol).then_some(x)
}

/// Every support of an eigenvector for `λ`, over all predecessor-closed subsets.
pub fn brute_support_enum(a: &TropMatrix, lambda: f64, cfg: &OracleConfig) -> Result<Vec<NodeSet>> {
    let n = a.require_square()?;
    cutoff(n, cfg.support_cutoff)?;
    let mut out = Vec::new();
    if !(lambda > 0.0) {
        return Ok(out);
    }
    for mask in 1u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let closed = (0..n)
            .filter(|i| mask >> i & 1 == 0)
            .all(|i| s.iter().all(|&j| a.get(i, j) == 0.0));
        if closed && positive_eigenvector_on(a, &s, lambda, cfg.tol).is_some() {
            out.push(s.into_iter().collect());
        }
    }
    Ok(out)
}

/// Union of all eigenvector supports.
pub fn brute_max_support(a: &TropMatrix, lambda: f64, cfg: &OracleConfig) -> Result<NodeSet> {
    Ok(brute_support_enum(a, lambda, cfg)?
        .into_iter()
        .flatten()
        .collect())
}

/// Generators of `V(A, λ)`: the columns of `(A_λ)⁺` at every critical node,
/// where `A_λ` keeps the columns in the maximal support.
pub fn brute_generators(a: &TropMatrix, lambda: f64, cfg: &OracleConfig) -> Result<Vec<TropVector>> {
    let n = a.rows();
    let support = brute_max_support(a, lambda, cfg)?;
    if support.is_empty() {
        return Ok(Vec::new());
    }
    let mut b = vec![vec![0.0; n]; n];
    for (i, row) in b.iter_mut().enumerate() {
        for &j in &support {
            row[j] = a.get(i, j) / lambda;
        }
    }
    let b = TropMatrix::from_rows(&b)?;
    let Some(plus) = brute_kleene_plus(&b, cfg.tol) else {
        return Ok(Vec::new());
    };
    Ok((0..n)
        .filter(|&c| support.contains(&c) && cfg.tol.eq(plus.get(c, c), 1.0))
        .map(|c| plus.column(c))
        .collect())
}

fn combine(gens: &[TropVector], coef: &[f64], n: usize) -> TropVector {
    let mut x = vec![0.0f64; n];
    for (g, &c) in gens.iter().zip(coef) {
        for (xi, gi) in x.iter_mut().zip(g.iter()) {
            *xi = xi.max(c * gi);
        }
    }
    TropVector::from_raw(x)
}

fn grid(res: usize) -> Vec<f64> {
    let mut g = vec![0.0];
    for t in 0..res {
        let e = -2.0 + 4.0 * t as f64 / (res.max(2) - 1) as f64;
        g.push(10f64.powf(e));
    }
    g
}

/// Coefficient vectors: the full grid when small, random draws otherwise,
/// plus variants where two generators tie at some coordinate.
fn coefficient_vectors(gens: &[TropVector], cfg: &OracleConfig) -> Vec<Vec<f64>> {
    let k = gens.len();
    let g = grid(cfg.resolution);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out: Vec<Vec<f64>> = Vec::new();
    let full = (g.len() as f64).powi(k as i32);
    if full <= cfg.samples as f64 * 4.0 {
        let mut idx = vec![0usize; k];
        loop {
            out.push(idx.iter().map(|&t| g[t]).collect());
            let mut p = 0;
            while p < k {
                idx[p] += 1;
                if idx[p] < g.len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p == k {
                break;
            }
        }
    } else {
        for _ in 0..cfg.samples {
            out.push((0..k).map(|_| g[rng.gen_range(0..g.len())]).collect());
        }
    }
    let n = gens.first().map_or(0, |v| v.len());
    let base = out.len();
    for t in 0..base.min(cfg.samples) {
        if k < 2 || n == 0 {
            break;
        }
        let mut c = out[rng.gen_range(0..base)].clone();
        let (s, u) = (rng.gen_range(0..k), rng.gen_range(0..k));
        let r = rng.gen_range(0..n);
        if s != u && gens[s].get(r) > 0.0 && gens[u].get(r) > 0.0 && c[u] > 0.0 {
            c[s] = c[u] * gens[u].get(r) / gens[s].get(r);
            out.push(c);
        }
        let _ = t;
    }
    out
}

/// Eigenvectors for `λ` obtained as max-combinations of the generators,
/// each verified directly. Zero is excluded.
pub fn brute_eigencone(a: &TropMatrix, lambda: f64, cfg: &OracleConfig) -> Result<Vec<TropVector>> {
    let n = a.require_square()?;
    cutoff(n, cfg.eigencone_cutoff)?;
    let gens = brute_generators(a, lambda, cfg)?;
    let mut out = Vec::new();
    for c in coefficient_vectors(&gens, cfg) {
        let x = combine(&gens, &c, n);
        if !x.is_zero() && a.mat_vec(&x)?.approx_eq(&x.scale(lambda), cfg.tol) {
            out.push(x);
        }
    }
    Ok(out)
}

fn in_interval(lo: f64, hi: f64, lo_open: bool, hi_open: bool, t: f64, tol: Tolerance) -> bool {
    let above = if lo_open { tol.gt(t, lo) } else { tol.ge(t, lo) };
    let below = hi.is_infinite() || if hi_open { tol.lt(t, hi) } else { tol.le(t, hi) };
    t.is_finite() && above && below
}

fn in_box(x: &IntervalBox, y: &[f64], tol: Tolerance) -> bool {
    x.intervals()
        .iter()
        .zip(y)
        .all(|(c, &t)| in_interval(c.lower, c.upper, c.lower_open, c.upper_open, t, tol))
}

/// Eigenvectors scaled into `X`: for every vector of the sweep, a handful of
/// multiples landing in the box (endpoints of the feasible scaling range,
/// points just inside open ends, and interior points).
pub fn eigenvectors_in_box(a: &TropMatrix, lambda: f64, x: &IntervalBox, cfg: &OracleConfig) -> Result<Vec<TropVector>> {
    let raw = brute_eigencone(a, lambda, cfg)?;
    let mut out = Vec::new();
    for v in raw {
        let mut lo = 0.0f64;
        let mut hi = f64::INFINITY;
        let mut feasible = true;
        for (c, t) in x.intervals().iter().zip(v.iter()) {
            if t == 0.0 {
                feasible &= !c.lower_open && c.lower == 0.0;
            } else {
                lo = lo.max(c.lower / t);
                hi = hi.min(c.upper / t);
            }
        }
        if !feasible || hi < lo {
            continue;
        }
        let mut alphas = vec![lo, lo * (1.0 + 1e-7), 0.5 * (lo + hi), hi * (1.0 - 1e-7), hi];
        if hi.is_infinite() {
            alphas = vec![lo, lo * (1.0 + 1e-7), lo.max(1e-3) * 2.0, lo.max(1e-3) * 10.0];
        }
        for alpha in alphas {
            if !(alpha > 0.0 && alpha.is_finite()) {
                continue;
            }
            let y: Vec<f64> = v.iter().map(|t| t * alpha).collect();
            if in_box(x, &y, cfg.tol) {
                out.push(TropVector::from_raw(y));
            }
        }
    }
    Ok(out)
}

/// Solutions of `A ⊗ y = b` in `X`, found by trying every combination of
/// per-coordinate candidates (the residuated value, closed endpoints below
/// it, and interior points). Stops after two distinct solutions.
pub fn brute_solutions_in_box(a: &TropMatrix, b: &TropVector, x: &IntervalBox, cfg: &OracleConfig) -> Result<Vec<TropVector>> {
    let n = a.cols();
    cutoff(n, cfg.unique_cutoff)?;
    let tol = cfg.tol;
    let mut cands: Vec<Vec<f64>> = Vec::with_capacity(n);
    for j in 0..n {
        let g = (0..a.rows())
            .filter(|&i| a.get(i, j) > 0.0)
            .map(|i| b.get(i) / a.get(i, j))
            .fold(f64::INFINITY, f64::min);
        let c = x.interval(j);
        let mut cj: Vec<f64> = Vec::new();
        if g.is_finite() && in_interval(c.lower, c.upper, c.lower_open, c.upper_open, g, tol) {
            cj.push(g);
        }
        if !c.lower_open && c.lower <= g {
            cj.push(c.lower);
        }
        if !c.upper_open && c.upper.is_finite() && c.upper <= g {
            cj.push(c.upper);
        }
        let top = c.upper.min(g);
        let top = if top.is_infinite() { c.lower + 10.0 } else { top };
        if top > c.lower {
            let k = cfg.interior_points;
            for t in 1..=k {
                cj.push(c.lower + (top - c.lower) * t as f64 / (k + 1) as f64);
            }
        }
        cj.retain(|&t| in_interval(c.lower, c.upper, c.lower_open, c.upper_open, t, tol) && t <= g);
        cj.sort_by(f64::total_cmp);
        cj.dedup();
        if cj.is_empty() {
            return Ok(Vec::new());
        }
        cands.push(cj);
    }
    let mut found: Vec<TropVector> = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let y = TropVector::from_raw((0..n).map(|j| cands[j][idx[j]]).collect());
        if a.mat_vec(&y)?.approx_eq(b, tol) && !found.iter().any(|f| f.approx_eq(&y, tol)) {
            found.push(y);
            if found.len() >= 2 {
                return Ok(found);
            }
        }
        let mut p = 0;
        while p < n {
            idx[p] += 1;
            if idx[p] < cands[p].len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
        if p == n {
            return Ok(found);
        }
    }
}

/// Number of solutions found in the box, saturating at 2.
pub fn brute_unique_in_box(a: &TropMatrix, b: &TropVector, x: &IntervalBox, cfg: &OracleConfig) -> Result<usize> {
    Ok(brute_solutions_in_box(a, b, x, cfg)?.len())
}

/// Result of sweeping the eigenvectors in a box.
#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub checked: usize,
    /// An eigenvector `x` and a different solution `y ∈ X` of `A ⊗ y = λ x`.
    pub counterexample: Option<(TropVector, TropVector)>,
}

/// Looks for an eigenvector in `X` that is not the only solution in `X` of
/// `A ⊗ y = λ x`.
pub fn brute_x_simple(a: &TropMatrix, lambda: f64, x: &IntervalBox, cfg: &OracleConfig) -> Result<Sweep> {
    let vs = eigenvectors_in_box(a, lambda, x, cfg)?;
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut checked = 0;
    for v in vs {
        let key: Vec<u64> = v.iter().map(|t| (t * 1e6).round() as u64).collect();
        if !seen.insert(key) {
            continue;
        }
        checked += 1;
        let sols = brute_solutions_in_box(a, &v.scale(lambda), x, cfg)?;
        if sols.len() >= 2 {
            let other = sols.into_iter().find(|s| !s.approx_eq(&v, cfg.tol)).expect("two distinct");
            return Ok(Sweep {
                checked,
                counterexample: Some((v, other)),
            });
        }
    }
    Ok(Sweep {
        checked,
        counterexample: None,
    })
}

/// Eigenvectors `x` for which `A ⊗ y = λ x` has `x` as its only solution.
pub fn brute_simple_image_eigenvectors(a: &TropMatrix, lambda: f64, cfg: &OracleConfig) -> Result<Vec<TropVector>> {
    let n = a.rows();
    let orthant = IntervalBox::orthant(n);
    let mut out = Vec::new();
    for v in brute_eigencone(a, lambda, cfg)? {
        if brute_unique_in_box(a, &v.scale(lambda), &orthant, cfg)? == 1 {
            out.push(v);
        }
    }
    Ok(out)
}

/// A digraph given by its edge list is one elementary cycle through all `n` nodes.
pub fn brute_is_single_cycle(n: usize, edges: &BTreeSet<(usize, usize)>) -> bool {
    if n == 0 || edges.len() != n {
        return false;
    }
    let mut next = vec![usize::MAX; n];
    for &(i, j) in edges {
        if next[i] != usize::MAX {
            return false;
        }
        next[i] = j;
    }
    let mut v = 0;
    let mut seen = vec![false; n];
    for _ in 0..n {
        if v == usize::MAX || seen[v] {
            return false;
        }
        seen[v] = true;
        v = next[v];
    }
    v == 0
}

/// Whether `A ⊗ y = b` is solvable, by trying the residuated vector directly.
pub fn brute_solvable(a: &TropMatrix, b: &TropVector, tol: Tolerance) -> bool {
    let g: Vec<f64> = (0..a.cols())
        .map(|j| {
            (0..a.rows())
                .filter(|&i| a.get(i, j) > 0.0)
                .map(|i| b.get(i) / a.get(i, j))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let ag = a.mat_vec_ext(&g);
    ag.iter().zip(b.iter()).all(|(&p, q)| tol.eq(p, q))
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

    #[test]
    fn cycle_enumeration() {
        let a = m(&[&[0.0, 3.0], &[12.0, 0.0]]);
        assert_eq!(cycles(&a), vec![vec![0, 1]]);
        assert!((brute_mcgm(&a) - 6.0).abs() < 1e-12);
        assert_eq!(cycles(&TropMatrix::from_rows(&[[1.0; 3]; 3]).unwrap()).len(), 8);
    }

    #[test]
    fn support_enum_examples() {
        let cfg = OracleConfig::default();
        let a = m(&[&[2.0, 0.0], &[1.0, 1.0]]);
        assert_eq!(brute_support_enum(&a, 1.0, &cfg).unwrap(), vec![set(&[1])]);
        assert_eq!(brute_support_enum(&a, 2.0, &cfg).unwrap(), vec![set(&[0, 1])]);
        let all = brute_support_enum(&TropMatrix::identity(3), 1.0, &cfg).unwrap();
        assert_eq!(all.len(), 7);
    }

    #[test]
    fn eigencone_sweep_examples() {
        let cfg = OracleConfig::default();
        let a = m(&[&[2.0, 3.0], &[1.0, 2.0]]);
        let xs = brute_eigencone(&a, 2.0, &cfg).unwrap();
        assert!(!xs.is_empty());
        let tol = Tolerance::new(1e-9);
        assert!(xs.iter().all(|x| a.mat_vec(x).unwrap().approx_eq(&x.scale(2.0), tol)));
        assert!(xs.iter().any(|x| x.approx_eq(&v(&[1.0, 0.5]), tol)));
        assert!(xs.iter().any(|x| x.approx_eq(&v(&[1.5, 1.0]), tol)));
        // ratios stay within the cone spanned by the generators
        assert!(xs.iter().all(|x| {
            let r = x.get(1) / x.get(0);
            (0.5 - 1e-9..=2.0 / 3.0 + 1e-9).contains(&r)
        }));
    }

    #[test]
    fn unique_in_box_counts() {
        let cfg = OracleConfig::default();
        let a = m(&[&[1.0, 0.5], &[0.5, 1.0]]);
        let b = v(&[2.0, 1.0]);
        let x = IntervalBox::closed(&[1.0, 1.0], &[2.0, 2.0]).unwrap();
        assert_eq!(brute_unique_in_box(&a, &b, &x, &cfg).unwrap(), 1);
        let x = IntervalBox::closed(&[0.9, 0.9], &[2.0, 2.0]).unwrap();
        assert_eq!(brute_unique_in_box(&a, &b, &x, &cfg).unwrap(), 2);
        assert_eq!(brute_unique_in_box(&a, &v(&[1.0, 0.1]), &x, &cfg).unwrap(), 0);
    }

    #[test]
    fn single_cycle_check() {
        let c3: BTreeSet<_> = [(0, 1), (1, 2), (2, 0)].into_iter().collect();
        assert!(brute_is_single_cycle(3, &c3));
        let mut more = c3.clone();
        more.insert((0, 2));
        assert!(!brute_is_single_cycle(3, &more));
        let two: BTreeSet<_> = [(0, 0), (1, 1)].into_iter().collect();
        assert!(!brute_is_single_cycle(2, &two));
    }
}
