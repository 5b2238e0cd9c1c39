// Random instance generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use tropeig::{IntervalBox, Tolerance, TropMatrix, TropVector};

pub const TOL: Tolerance = Tolerance::new(1e-9);

/// Log-uniform in `[10^-span, 10^span]`.
pub fn log_uniform(rng: &mut impl Rng, span: f64) -> f64 {
    10f64.powf(rng.gen_range(-span..=span))
}

/// `rows × cols` matrix, each entry zero with probability `p_zero`.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, p_zero: f64) -> TropMatrix {
    let data: Vec<Vec<f64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if rng.gen_bool(p_zero) { 0.0 } else { log_uniform(rng, 1.0) })
                .collect()
        })
        .collect();
    TropMatrix::from_rows(&data).unwrap()
}

pub fn random_vector(rng: &mut impl Rng, n: usize, p_zero: f64) -> TropVector {
    TropVector::new(
        (0..n)
            .map(|_| if rng.gen_bool(p_zero) { 0.0 } else { log_uniform(rng, 1.0) })
            .collect(),
    )
    .unwrap()
}

/// Block lower-triangular matrix with at least two diagonal blocks, under a
/// random relabelling of the nodes.
pub fn random_reducible(rng: &mut impl Rng, n: usize) -> TropMatrix {
    assert!(n >= 2);
    let blocks = rng.gen_range(2..=n);
    let mut block_of: Vec<usize> = (0..n).map(|i| if i < blocks { i } else { rng.gen_range(0..blocks) }).collect();
    block_of.shuffle(rng);
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let allowed = block_of[i] >= block_of[j];
            let p = if block_of[i] == block_of[j] { 0.7 } else { 0.4 };
            if allowed && rng.gen_bool(p) {
                rows[i][j] = log_uniform(rng, 1.0);
            }
        }
    }
    TropMatrix::from_rows(&rows).unwrap()
}

/// A matrix whose critical graph (for `λ = 1`) is a disjoint union of cycles
/// covering every node, followed by a random diagonal similarity.
pub fn cyclic_critical(rng: &mut impl Rng, n: usize) -> TropMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut rows = vec![vec![0.0; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            if perm[i] == j {
                *e = 1.0;
            } else if rng.gen_bool(0.5) {
                *e = rng.gen_range(0.05..0.9);
            }
        }
    }
    let d: Vec<f64> = (0..n).map(|_| log_uniform(rng, 0.5)).collect();
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e *= d[j] / d[i];
        }
    }
    TropMatrix::from_rows(&rows).unwrap()
}

/// Random strongly connected digraph: a Hamiltonian cycle plus random edges.
pub fn random_sc_edges(rng: &mut impl Rng, n: usize, p_extra: f64) -> BTreeSet<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges: BTreeSet<(usize, usize)> = (0..n).map(|k| (perm[k], perm[(k + 1) % n])).collect();
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(p_extra) {
                edges.insert((i, j));
            }
        }
    }
    edges
}

/// Closed box around `x` with non-degenerate coordinates.
pub fn closed_box_around(rng: &mut impl Rng, x: &TropVector) -> IntervalBox {
    let (lo, hi): (Vec<f64>, Vec<f64>) = x
        .iter()
        .map(|t| {
            if t == 0.0 {
                (0.0, rng.gen_range(0.1..2.0))
            } else {
                (t * rng.gen_range(0.3..1.0), t * rng.gen_range(1.0..3.0))
            }
        })
        .unzip();
    IntervalBox::closed(&lo, &hi).unwrap()
}

/// Box with all lower endpoints open around a positive `x`.
pub fn lower_open_box_around(rng: &mut impl Rng, x: &TropVector) -> IntervalBox {
    let n = x.len();
    let lo: Vec<f64> = x.iter().map(|t| t * rng.gen_range(0.3..0.99)).collect();
    let hi: Vec<f64> = x.iter().map(|t| t * rng.gen_range(1.0..3.0)).collect();
    IntervalBox::from_parts(&lo, &hi, &vec![true; n], &vec![false; n]).unwrap()
}

/// Direct check of `A ⊗ x = λ x`.
pub fn eigen_direct(a: &TropMatrix, x: &TropVector, lambda: f64) -> bool {
    let n = x.len();
    (0..n).all(|i| {
        let lhs = (0..n).map(|j| a.get(i, j) * x.get(j)).fold(0.0, f64::max);
        TOL.eq(lhs, lambda * x.get(i))
    })
}
