//! Eigenvalues, eigencones, critical graphs and visualization scaling.

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::one_sided::{in_simple_image, in_span};
use crate::tropical::{Tolerance, TropMatrix, TropVector};
use crate::verdict::{Condition, Decision, Verdict};
use crate::NodeSet;

/// Maximum cycle geometric mean `λ(A)`; zero when `digr(A)` is acyclic.
///
/// Karp's algorithm in the log domain. Every node starts with `D_0 = 0`,
/// which is the same as adding a zero-weight super source.
pub fn mcgm(a: &TropMatrix) -> Result<f64> {
    let n = a.require_square()?;
    let all: Vec<usize> = (0..n).collect();
    Ok(mcgm_on(a, &all))
}

/// `λ` of the principal submatrix on `nodes`.
pub fn mcgm_restricted(a: &TropMatrix, nodes: &NodeSet) -> Result<f64> {
    let n = a.require_square()?;
    if let Some(&bad) = nodes.iter().find(|&&v| v >= n) {
        return Err(Error::IndexOutOfRange { index: bad, dim: n });
    }
    let idx: Vec<usize> = nodes.iter().copied().collect();
    Ok(mcgm_on(a, &idx))
}

pub(crate) fn mcgm_on(a: &TropMatrix, idx: &[usize]) -> f64 {
    let n = idx.len();
    if n == 0 {
        return 0.0;
    }
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for (u, &i) in idx.iter().enumerate() {
        for (v, &j) in idx.iter().enumerate() {
            let w = a.get(i, j);
            if w > 0.0 {
                edges.push((u, v, w.ln()));
            }
        }
    }
    if edges.is_empty() {
        return 0.0;
    }
    let neg = f64::NEG_INFINITY;
    // d[k][v]: heaviest walk of exactly k edges ending at v
    let mut d = vec![vec![neg; n]; n + 1];
    d[0].iter_mut().for_each(|x| *x = 0.0);
    for k in 1..=n {
        let (prev, cur) = d.split_at_mut(k);
        let prev = &prev[k - 1];
        let cur = &mut cur[0];
        for &(u, v, w) in &edges {
            if prev[u] > neg {
                let c = prev[u] + w;
                if c > cur[v] {
                    cur[v] = c;
                }
            }
        }
    }
    let mut best = neg;
    for v in 0..n {
        if d[n][v] == neg {
            continue;
        }
        let mut worst = f64::INFINITY;
        for k in 0..n {
            if d[k][v] > neg {
                worst = worst.min((d[n][v] - d[k][v]) / (n - k) as f64);
            }
        }
        best = best.max(worst);
    }
    if best == neg {
        0.0
    } else {
        best.exp()
    }
}

/// Whether `A ⊗ x = λ x` for some nonzero `x` with `λ = 0`, i.e. `A` has a zero column.
pub fn has_zero_eigenvalue(a: &TropMatrix) -> Result<bool> {
    let n = a.require_square()?;
    Ok((0..n).any(|j| a.is_zero_column(j)))
}

/// The positive eigenvalues of `A`, in decreasing order.
pub fn eigenvalues(a: &TropMatrix, tol: Tolerance) -> Result<Vec<f64>> {
    a.require_square()?;
    let d = Digraph::from_matrix(a)?;
    let mut cands = vec![mcgm(a)?];
    for comp in d.scc().components {
        if d.is_nontrivial_component(&comp) {
            cands.push(mcgm_restricted(a, &comp)?);
        }
    }
    cands.retain(|&l| l > 0.0);
    cands.sort_by(|x, y| y.total_cmp(x));
    let mut out: Vec<f64> = Vec::new();
    for l in cands {
        if out.last().is_some_and(|&p| tol.eq(p, l)) {
            continue;
        }
        if !max_support(a, l, tol)?.is_empty() {
            out.push(l);
        }
    }
    Ok(out)
}

/// `N^λ`, the support of a maximal-support eigenvector; empty iff `λ ∉ Λ(A)`.
///
/// Forced-removal fixpoint: a node cannot be in the support if it lies on a
/// cycle heavier than `λ`, if it has no path to a cycle of mean `λ` inside the
/// current set, or if it is the head of an edge from a removed node.
pub fn max_support(a: &TropMatrix, lambda: f64, tol: Tolerance) -> Result<NodeSet> {
    let n = a.require_square()?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Ok(NodeSet::new());
    }
    let full = Digraph::from_matrix(a)?;
    let mut s: NodeSet = (0..n).collect();
    loop {
        let before = s.len();
        let d = full.restrict_unchecked(&s);
        let mut targets = NodeSet::new();
        for comp in d.scc().components {
            if !d.is_nontrivial_component(&comp) {
                continue;
            }
            let m = mcgm_on(a, &comp.iter().copied().collect::<Vec<_>>());
            if tol.gt(m, lambda) {
                for v in &comp {
                    s.remove(v);
                }
            } else if tol.eq(m, lambda) {
                targets.extend(comp.iter().copied());
            }
        }
        let targets: NodeSet = targets.intersection(&s).copied().collect();
        let d = full.restrict_unchecked(&s);
        s = d.can_reach(&targets);
        let removed: NodeSet = (0..n).filter(|v| !s.contains(v)).collect();
        let downstream = full.reachable_from(&removed);
        s.retain(|v| !downstream.contains(v));
        if s.len() == before {
            return Ok(s);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenStructure {
    pub lambda: f64,
    pub n_lambda: NodeSet,
    pub crit: Digraph,
    pub crit_components: Vec<NodeSet>,
    /// Smallest node of each critical component.
    pub representatives: Vec<usize>,
    pub a_lambda: TropMatrix,
    pub a_lambda_plus: TropMatrix,
    /// `G_{A,λ}`: columns of `A_λ⁺` at the representatives.
    pub generating: TropMatrix,
}

impl EigenStructure {
    /// `N_c(A, λ)`: nodes of the critical graph.
    pub fn critical_nodes(&self) -> &NodeSet {
        self.crit.nodes()
    }

    pub fn generator_count(&self) -> usize {
        self.generating.cols()
    }

    pub fn generator(&self, s: usize) -> TropVector {
        self.generating.column(s)
    }

    /// Every critical component is an elementary cycle.
    pub fn components_are_cycles(&self) -> bool {
        self.crit_components.iter().all(|c| {
            self.crit
                .restrict_unchecked(c)
                .is_single_cycle()
        })
    }

    /// `crit(A, λ)` restricted to `nodes`.
    pub fn crit_restricted(&self, nodes: &NodeSet) -> Digraph {
        self.crit.restrict_unchecked(nodes)
    }
}

pub fn eigen_structure(a: &TropMatrix, lambda: f64, tol: Tolerance) -> Result<EigenStructure> {
    let n = a.require_square()?;
    let n_lambda = max_support(a, lambda, tol)?;
    if n_lambda.is_empty() {
        return Err(Error::NotAnEigenvalue(lambda));
    }
    let mut a_lambda = TropMatrix::zeros(n, n);
    for i in 0..n {
        for &j in &n_lambda {
            a_lambda.set(i, j, a.get(i, j) / lambda);
        }
    }
    let a_lambda_plus = a_lambda.kleene_plus(tol)?;
    let mut edges = Vec::new();
    let mut crit_nodes = NodeSet::new();
    for &i in &n_lambda {
        for &j in &n_lambda {
            let w = a_lambda.get(i, j);
            if w == 0.0 {
                continue;
            }
            let back = if i == j { 1.0 } else { a_lambda_plus.get(j, i) };
            if tol.eq(w * back, 1.0) {
                edges.push((i, j, a.get(i, j)));
                crit_nodes.insert(i);
                crit_nodes.insert(j);
            }
        }
    }
    let crit = Digraph::new(crit_nodes, edges)?;
    let crit_components = crit.scc().components;
    let representatives: Vec<usize> = crit_components
        .iter()
        .map(|c| *c.iter().next().expect("nonempty component"))
        .collect();
    let generating = a_lambda_plus.select_columns(&representatives);
    Ok(EigenStructure {
        lambda,
        n_lambda,
        crit,
        crit_components,
        representatives,
        a_lambda,
        a_lambda_plus,
        generating,
    })
}

/// `A ⊗ x ≈ λ x` with `x ≠ 0`.
pub fn is_eigenvector(a: &TropMatrix, x: &TropVector, lambda: f64, tol: Tolerance) -> bool {
    !x.is_zero() && in_eigencone(a, x, lambda, tol)
}

/// `A ⊗ x ≈ λ x`; the zero vector counts.
pub fn in_eigencone(a: &TropMatrix, x: &TropVector, lambda: f64, tol: Tolerance) -> bool {
    match a.mat_vec(x) {
        Ok(ax) => ax.approx_eq(&x.scale(lambda), tol),
        Err(_) => false,
    }
}

/// `Sat(A, x, λ)`: edges with `a_ij x_j = λ x_i ≠ 0`.
pub fn saturation_graph(a: &TropMatrix, x: &TropVector, lambda: f64, tol: Tolerance) -> Result<Digraph> {
    let n = a.require_square()?;
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    if !is_eigenvector(a, x, lambda, tol) {
        return Err(Error::NotAnEigenvector(lambda));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = a.get(i, j) * x.get(j);
            if lhs > 0.0 && tol.eq(lhs, lambda * x.get(i)) {
                edges.push((i, j, a.get(i, j)));
            }
        }
    }
    Digraph::new((0..n).collect(), edges)
}

/// Diagonal scaling `x` such that `diag(x)⁻¹ A diag(x)` has all entries
/// `<= λ(A)`, with equality exactly on critical edges.
///
/// `x` is the ordinary sum of the columns of `(A/λ(A))*`.
pub fn strict_visualization(a: &TropMatrix, tol: Tolerance) -> Result<(TropVector, TropMatrix)> {
    let n = a.require_square()?;
    let lambda = mcgm(a)?;
    if lambda == 0.0 {
        return Err(Error::NoPositiveSubeigenvector);
    }
    let b = a.scale(1.0 / lambda);
    let star = b.kleene_plus_unchecked().oplus(&TropMatrix::identity(n))?;
    let x = TropVector::from_raw((0..n).map(|i| star.row(i).iter().sum()).collect());
    let scaled = a.similarity_scale(&x)?;
    for i in 0..n {
        for j in 0..n {
            let w = b.get(i, j);
            if w == 0.0 {
                continue;
            }
            let critical = tol.eq(w * star.get(j, i), 1.0);
            let s = scaled.get(i, j);
            if !tol.le(s, lambda) || tol.eq(s, lambda) != critical {
                return Err(Error::StrictnessFailed(i, j));
            }
        }
    }
    Ok((x, scaled))
}

/// Is there a simple image vector in `V(A, λ)`?
///
/// Candidate supports are unions of generator supports. A candidate `N'`
/// qualifies when every node outside it has a nonzero entry in its column
/// from another node outside it, every node of `N'` is critical, and every
/// critical component inside `N'` is an elementary cycle. The witness is the
/// visualization scaling vector of `A_{N'N'}`, extended by zeros and
/// re-checked against the system `A ⊗ y = λ x`.
pub fn simple_image_eigenvector_exists(a: &TropMatrix, lambda: f64, tol: Tolerance) -> Result<Verdict> {
    let n = a.require_square()?;
    let es = eigen_structure(a, lambda, tol)?;
    let k = es.generator_count();
    const MAX_GENERATORS: usize = 24;
    let supports: Vec<NodeSet> = (0..k).map(|s| es.generator(s).support()).collect();
    // generators whose supports can take part in a qualifying N'
    let allowed: Vec<usize> = (0..k)
        .filter(|&s| {
            supports[s].is_subset(es.critical_nodes())
                && es
                    .crit_components
                    .iter()
                    .filter(|c| c.is_subset(&supports[s]))
                    .all(|c| es.crit.restrict_unchecked(c).is_single_cycle())
        })
        .collect();
    if allowed.len() > MAX_GENERATORS {
        return Err(Error::SizeCutoff {
            size: allowed.len(),
            cutoff: MAX_GENERATORS,
        });
    }
    let mut verdict = Verdict::new("simple image eigenvector exists", Decision::No);
    verdict.push(
        Condition::new("generators", true)
            .scalar("lambda", lambda)
            .sets("generator_supports", &supports)
            .set("critical_nodes", es.critical_nodes())
            .set(
                "eligible_generators",
                &allowed.iter().copied().collect(),
            ),
    );
    let mut seen = std::collections::BTreeSet::new();
    let mut structural = false;
    for mask in 1u64..(1u64 << allowed.len()) {
        let mut np = NodeSet::new();
        for (bit, &s) in allowed.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                np.extend(supports[s].iter().copied());
            }
        }
        if !seen.insert(np.clone()) {
            continue;
        }
        let outside: Vec<usize> = (0..n).filter(|i| !np.contains(i)).collect();
        let ok_ii = outside
            .iter()
            .all(|&i| outside.iter().any(|&l| a.get(l, i) != 0.0));
        if !ok_ii {
            verdict.push(
                Condition::new("outside_columns_reach_outside", false).set("support", &np),
            );
            continue;
        }
        structural = true;
        let sub = a.principal_submatrix(&np);
        let witness = strict_visualization(&sub, tol).ok().and_then(|(xs, _)| {
            let mut x = vec![0.0; n];
            for (v, &i) in xs.iter().zip(&np) {
                x[i] = v;
            }
            let x = TropVector::from_raw(x);
            let ok = is_eigenvector(a, &x, lambda, tol)
                && in_simple_image(a, &x.scale(lambda), tol).unwrap_or(false);
            ok.then_some(x)
        });
        match witness {
            Some(x) => {
                verdict.push(
                    Condition::new("candidate_support", true)
                        .set("support", &np)
                        .note("conditions hold and the witness is the unique solution of A x = lambda x"),
                );
                verdict.decision = Decision::Yes;
                verdict.witness = Some(x);
                return Ok(verdict);
            }
            None => verdict.push(
                Condition::new("candidate_support", false)
                    .set("support", &np)
                    .note("conditions hold but the witness failed verification"),
            ),
        }
    }
    if structural {
        verdict.decision = Decision::Inconclusive;
    }
    Ok(verdict)
}

/// Both sides of the column/generator deletion equivalence for a positive eigenvector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeletionCheck {
    /// Some `i` with `x ∈ spann(A^{(i)})`.
    pub column: Option<usize>,
    /// Some `s` with `x ∈ spann(G^{(s)})`.
    pub generator: Option<usize>,
}

impl DeletionCheck {
    pub fn agrees(&self) -> bool {
        self.column.is_some() == self.generator.is_some()
    }
}

/// Requires every node critical, every critical component a cycle, and `x`
/// a positive eigenvector.
pub fn generator_deletion_equivalence_check(
    a: &TropMatrix,
    lambda: f64,
    x: &TropVector,
    tol: Tolerance,
) -> Result<DeletionCheck> {
    let n = a.require_square()?;
    let es = eigen_structure(a, lambda, tol)?;
    if es.critical_nodes().len() != n {
        return Err(Error::Precondition("not every node is critical".into()));
    }
    if !es.components_are_cycles() {
        return Err(Error::Precondition(
            "critical components are not all cycles".into(),
        ));
    }
    if x.len() != n || !x.is_positive() || !is_eigenvector(a, x, lambda, tol) {
        return Err(Error::Precondition("x is not a positive eigenvector".into()));
    }
    let mut column = None;
    for i in 0..n {
        if in_span(&a.column_deleted(i)?, x, tol)? {
            column = Some(i);
            break;
        }
    }
    let mut generator = None;
    for s in 0..es.generator_count() {
        if in_span(&es.generating.column_deleted(s)?, x, tol)? {
            generator = Some(s);
            break;
        }
    }
    Ok(DeletionCheck { column, generator })
}
