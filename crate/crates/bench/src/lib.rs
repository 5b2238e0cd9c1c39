//! Seeded instance generators for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropeig::{IntervalBox, TropMatrix};

/// `n × n` matrix with log-uniform entries in `[0.1, 10]`, each zero with
/// probability `p_zero`.
pub fn random_matrix(n: usize, p_zero: f64, seed: u64) -> TropMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.gen_bool(p_zero) {
                        0.0
                    } else {
                        10f64.powf(rng.gen_range(-1.0..1.0))
                    }
                })
                .collect()
        })
        .collect();
    TropMatrix::from_rows(&rows).expect("entries are finite and nonnegative")
}

/// Closed box `[x/2, 2x]` around the eigenvector obtained as the max of all
/// generators for the principal eigenvalue.
pub fn box_around_eigenvector(a: &TropMatrix) -> (f64, IntervalBox) {
    let tol = tropeig::Tolerance::default();
    let lambda = tropeig::spectral::mcgm(a).expect("square");
    let es = tropeig::spectral::eigen_structure(a, lambda, tol).expect("principal eigenvalue");
    let x = (0..es.generator_count())
        .map(|s| es.generator(s))
        .reduce(|p, q| p.oplus(&q))
        .expect("at least one generator");
    let lo: Vec<f64> = x.iter().map(|t| t / 2.0).collect();
    let hi: Vec<f64> = x.iter().map(|t| if t == 0.0 { 1.0 } else { t * 2.0 }).collect();
    (lambda, IntervalBox::closed(&lo, &hi).expect("lower below upper"))
}
