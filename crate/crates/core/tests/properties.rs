mod common;

use common::TOL;
use proptest::prelude::*;
use tropeig::cone::{self, ConeSpan};
use tropeig::interval;
use tropeig::one_sided;
use tropeig::oracle;
use tropeig::spectral;
use tropeig::{Condition, Decision, IntervalBox, NodeSet, TropMatrix, TropVector, Verdict};

fn entry() -> impl Strategy<Value = f64> {
    prop_oneof![1 => Just(0.0), 3 => (-2.0f64..2.0).prop_map(|e| 10f64.powf(e))]
}

fn positive() -> impl Strategy<Value = f64> {
    (-1.5f64..1.5).prop_map(|e| 10f64.powf(e))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = TropMatrix> {
    prop::collection::vec(entry(), rows * cols).prop_map(move |d| TropMatrix::new(rows, cols, d).unwrap())
}

fn square(max: usize) -> impl Strategy<Value = TropMatrix> {
    (1..=max).prop_flat_map(|n| matrix(n, n))
}

fn vector(n: usize) -> impl Strategy<Value = TropVector> {
    prop::collection::vec(entry(), n).prop_map(|v| TropVector::new(v).unwrap())
}

fn system(max: usize) -> impl Strategy<Value = (TropMatrix, TropVector)> {
    (1..=max, 1..=max).prop_flat_map(|(m, n)| (matrix(m, n), vector(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matrix_product_is_associative(n in 1usize..5, seed in any::<u64>()) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let a = common::random_matrix(&mut rng, n, n, 0.3);
        let b = common::random_matrix(&mut rng, n, n, 0.3);
        let c = common::random_matrix(&mut rng, n, n, 0.3);
        let left = a.mat_mul(&b).unwrap().mat_mul(&c).unwrap();
        let right = a.mat_mul(&b.mat_mul(&c).unwrap()).unwrap();
        prop_assert!(left.approx_eq(&right, TOL));
    }

    #[test]
    fn residuation_is_a_subsolution((a, b) in system(6)) {
        let g = one_sided::gamma_star(&a, &b).unwrap();
        let ag = a.mat_vec_ext(&g);
        prop_assert!(ag.iter().zip(b.iter()).all(|(&p, q)| TOL.le(p, q)));
        // the principal image is the greatest point of the span below b
        let p = one_sided::principal_image(&a, &b).unwrap();
        prop_assert!(p.approx_le(&b, TOL));
        prop_assert_eq!(one_sided::in_span(&a, &b, TOL).unwrap(), p.approx_eq(&b, TOL));
    }

    #[test]
    fn image_vectors_are_solvable((a, x) in (1usize..6, 1usize..6).prop_flat_map(|(m, n)| (matrix(m, n), vector(n)))) {
        let b = a.mat_vec(&x).unwrap();
        let s = one_sided::analyze(&a, &b, TOL).unwrap();
        prop_assert!(s.solvable);
        let desc = one_sided::solution_description(&a, &b, TOL, 1_000_000).unwrap();
        prop_assert!(desc.contains(&x, TOL));
        for cov in &desc.minimal_coverings {
            // minimality: dropping any column uncovers supp(b)
            for &j in cov {
                let rest: NodeSet = cov.iter().copied().filter(|&k| k != j)
                    .flat_map(|k| desc.m_sets[k].iter().copied()).collect();
                prop_assert!(rest != desc.support_b);
            }
        }
    }

    #[test]
    fn mcgm_matches_cycle_enumeration(a in square(6)) {
        let m = spectral::mcgm(&a).unwrap();
        let o = oracle::brute_mcgm(&a);
        prop_assert!(TOL.eq(m, o), "{} vs {}", m, o);
        let ev = spectral::eigenvalues(&a, TOL).unwrap();
        match ev.first() {
            Some(&top) => prop_assert!(TOL.eq(top, m)),
            None => prop_assert_eq!(m, 0.0),
        }
        prop_assert!(ev.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn mcgm_is_homogeneous(a in square(5), alpha in positive()) {
        let m = spectral::mcgm(&a).unwrap();
        prop_assert!(TOL.eq(spectral::mcgm(&a.scale(alpha)).unwrap(), alpha * m));
    }

    #[test]
    fn kleene_plus_matches_floyd_warshall(a in square(6)) {
        let m = spectral::mcgm(&a).unwrap();
        let b = if m > 0.0 { a.scale(1.0 / m) } else { a.clone() };
        let fast = b.kleene_plus(TOL).unwrap();
        let slow = oracle::brute_kleene_plus(&b, TOL).unwrap();
        prop_assert!(fast.approx_eq(&slow, TOL));
    }

    #[test]
    fn generators_are_eigenvectors(a in square(5)) {
        for lambda in spectral::eigenvalues(&a, TOL).unwrap().into_iter().filter(|&l| l > 0.0) {
            let es = spectral::eigen_structure(&a, lambda, TOL).unwrap();
            prop_assert!(es.generator_count() >= 1);
            for s in 0..es.generator_count() {
                let g = es.generator(s);
                prop_assert!(spectral::is_eigenvector(&a, &g, lambda, TOL));
                prop_assert!(g.support().is_subset(&es.n_lambda));
            }
        }
    }

    #[test]
    fn diagonal_scaling_preserves_eigenvalues(a in square(5), d in prop::collection::vec(positive(), 5)) {
        let n = a.rows();
        let d = TropVector::new(d[..n].to_vec()).unwrap();
        let b = a.similarity_scale(&d).unwrap();
        let (l1, l2) = (spectral::eigenvalues(&a, TOL).unwrap(), spectral::eigenvalues(&b, TOL).unwrap());
        prop_assert_eq!(l1.len(), l2.len());
        prop_assert!(l1.iter().zip(&l2).all(|(&x, &y)| TOL.eq(x, y)));
    }

    #[test]
    fn visualization_bounds_entries(a in square(5)) {
        if let Ok((x, v)) = spectral::strict_visualization(&a, TOL) {
            let lambda = spectral::mcgm(&a).unwrap();
            prop_assert!(x.is_positive());
            prop_assert!(TOL.le(v.max_entry(), lambda));
        }
    }

    #[test]
    fn projection_is_idempotent_and_below(g in (1usize..5, 1usize..4).prop_flat_map(|(n, k)| (matrix(n, k), prop::collection::vec(positive(), n)))) {
        let (gm, y) = g;
        let c = ConeSpan::new(gm);
        let y = TropVector::new(y).unwrap();
        let p = c.project(&y).unwrap();
        prop_assert!(p.approx_le(&y, TOL));
        prop_assert!(c.contains(&p, TOL));
        prop_assert!(c.project(&p).unwrap().approx_eq(&p, TOL));
    }

    #[test]
    fn intersection_lies_in_every_cone(n in 1usize..4, gens in prop::collection::vec(positive(), 18), y in prop::collection::vec(positive(), 3)) {
        let c1 = ConeSpan::new(TropMatrix::new(n, 3, gens[..3 * n].to_vec()).unwrap());
        let c2 = ConeSpan::new(TropMatrix::new(n, 3, gens[9..9 + 3 * n].to_vec()).unwrap());
        let y = TropVector::new(y[..n].to_vec()).unwrap();
        let z = cone::project_intersection(&[c1.clone(), c2.clone()], &y, cone::DEFAULT_EPS, cone::DEFAULT_MAX_CYCLES).unwrap();
        let loose = tropeig::Tolerance::new(1e-6);
        prop_assert!(z.approx_le(&y, loose));
        prop_assert!(c1.contains(&z, loose) && c2.contains(&z, loose));
    }

    #[test]
    fn orthant_uniqueness_matches_simple_image((a, x) in (1usize..5, 1usize..5).prop_flat_map(|(m, n)| (matrix(m, n), vector(n)))) {
        let b = a.mat_vec(&x).unwrap();
        let n = a.cols();
        let v = interval::unique_in_box(&a, &b, &IntervalBox::orthant(n), TOL).unwrap();
        prop_assert_eq!(v.is_yes(), one_sided::in_simple_image(&a, &b, TOL).unwrap());
    }

    #[test]
    fn box_uniqueness_matches_oracle((a, x) in (1usize..4, 1usize..4).prop_flat_map(|(m, n)| (matrix(m, n), vector(n))),
                                      lo in prop::collection::vec(0.2f64..1.0, 3), hi in prop::collection::vec(1.0f64..3.0, 3)) {
        let n = a.cols();
        let b = a.mat_vec(&x).unwrap();
        let lower: Vec<f64> = (0..n).map(|j| x.get(j) * lo[j]).collect();
        let upper: Vec<f64> = (0..n).map(|j| if x.get(j) == 0.0 { hi[j] } else { x.get(j) * hi[j] }).collect();
        let bx = IntervalBox::closed(&lower, &upper).unwrap();
        let v = interval::unique_in_box(&a, &b, &bx, TOL).unwrap();
        let count = oracle::brute_unique_in_box(&a, &b, &bx, &oracle::OracleConfig::default()).unwrap();
        prop_assert!(count >= 1);
        prop_assert_eq!(v.decision, Decision::from_bool(count == 1));
    }

    #[test]
    fn invariant_boxes_map_into_themselves(a in square(4), seed in any::<u64>()) {
        let n = a.rows();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let x = common::random_vector(&mut rng, n, 0.0);
        let bx = common::closed_box_around(&mut rng, &x);
        let inv = interval::is_invariant(&a, &bx, TOL).unwrap();
        if inv.is_yes() {
            for _ in 0..20 {
                let y = interval::sample_box_point(&bx, &mut rng, 10.0);
                prop_assert!(bx.contains(&a.mat_vec(&y).unwrap(), tropeig::Tolerance::new(1e-9)));
            }
        }
    }

    #[test]
    fn verdict_json_round_trip(v in prop::collection::vec(prop_oneof![Just(f64::INFINITY), positive(), Just(0.0)], 0..5),
                               holds in any::<bool>()) {
        let mut verdict = Verdict::new("q", Decision::from_bool(holds));
        verdict.push(Condition::new("c", holds).vector("v", &v).scalar("s", 1.25).note("n"));
        verdict = verdict.with_witness(TropVector::ones(2));
        let text = serde_json::to_string(&verdict).unwrap();
        let back: Verdict = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn box_json_round_trip(lo in prop::collection::vec(0.0f64..5.0, 1..4), open in any::<bool>(), unbounded in any::<bool>()) {
        let n = lo.len();
        let hi: Vec<f64> = lo.iter().map(|&l| if unbounded { f64::INFINITY } else { l + 1.0 }).collect();
        let bx = IntervalBox::from_parts(&lo, &hi, &vec![open; n], &vec![false; n]).unwrap();
        let text = serde_json::to_string(&bx).unwrap();
        let back: IntervalBox = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &bx);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
