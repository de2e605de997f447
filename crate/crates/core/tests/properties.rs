mod common;

use common::{oracle_perm_poly, oracle_permanent, oracle_shifted_permanent, oracle_sigma_max, relative_error};
use num_complex::Complex64;
use photonperm::apps::{
    boost_epsilon, boost_row_scan, dense_subgraph_complete, permanental_polynomial, poly_distinguish, Backend,
    MatrixFamily, Verdict, POINT_RANGE,
};
use photonperm::encoder::{decompose_mesh, encode};
use photonperm::focksim::{full_distribution, hoeffding_interval, Sampler, BatchConfig, StoppingRule};
use photonperm::graphlib::{classical_isomorphic, erdos_renyi, invert_permutation, Graph};
use photonperm::harness::digest_bytes;
use photonperm::numkernel::random::{random_complex_matrix, random_nonnegative_matrix};
use photonperm::numkernel::{permanent_exact, ComplexMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn complex_matrix(max_n: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_complex_matrix(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn real_matrix(max_n: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-2.0f64..2.0, n), n)
            .prop_map(|rows| ComplexMatrix::from_real_rows(&rows).unwrap())
    })
}

fn nonnegative_matrix(min_n: usize, max_n: usize) -> impl Strategy<Value = ComplexMatrix> {
    (min_n..=max_n, any::<u64>())
        .prop_map(|(n, seed)| random_nonnegative_matrix(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, 0.2f64..0.9, any::<u64>()).prop_map(|(n, p, seed)| erdos_renyi(n, p, seed).unwrap())
}

fn graph_and_permutation(min_n: usize, max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(min_n, max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ryser_matches_permutation_expansion(a in complex_matrix(6)) {
        let got = permanent_exact(&a).unwrap();
        let want = oracle_permanent(&a);
        prop_assert!((got - want).norm() <= 1e-9 * want.norm().max(1.0));
    }

    #[test]
    fn dilation_is_unitary_and_encodes_the_block(a in complex_matrix(6)) {
        let c = encode(&a).unwrap();
        prop_assert!(c.unitary.unitarity_error() <= 1e-10);
        prop_assert!(c.encoded_block().scale_real(c.scale).max_abs_diff(&a) <= 1e-9);
        prop_assert!((c.scale - oracle_sigma_max(&a)).abs() <= 1e-8 * c.scale.max(1.0));
    }

    #[test]
    fn mesh_recomposes_the_unitary(a in complex_matrix(4)) {
        let u = encode(&a).unwrap().unitary;
        let mesh = decompose_mesh(&u).unwrap();
        prop_assert!(mesh.recompose().max_abs_diff(&u) <= 1e-9);
    }

    #[test]
    fn output_distribution_sums_to_one(a in complex_matrix(3)) {
        let c = encode(&a).unwrap();
        let d = full_distribution(&c, &c.standard_pattern()).unwrap();
        prop_assert!((d.total() - 1.0).abs() <= 1e-9);
        prop_assert!(d.probabilities().iter().all(|&p| p >= -1e-15));
    }

    #[test]
    fn sampler_counts_cover_every_shot(
        weights in prop::collection::vec(0.0f64..1.0, 1..12),
        shots in 0u64..20_000,
        seed in any::<u64>(),
    ) {
        prop_assume!(weights.iter().sum::<f64>() > 0.0);
        let total: f64 = weights.iter().sum();
        let probs: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let sampler = Sampler::from_probabilities(&probs, BatchConfig { batch_size: 1000, wave: 4 }).unwrap();
        let counts = sampler.counts(shots, seed);
        prop_assert_eq!(counts.iter().sum::<u64>(), shots);
        for (c, p) in counts.iter().zip(&probs) {
            if *p == 0.0 {
                prop_assert_eq!(*c, 0);
            }
        }
        prop_assert_eq!(counts, sampler.counts(shots, seed));
    }

    #[test]
    fn postselection_stops_on_the_target(target in 1u64..300, seed in any::<u64>()) {
        let sampler = Sampler::from_probabilities(&[0.2, 0.5, 0.3], BatchConfig { batch_size: 256, wave: 4 }).unwrap();
        let run = sampler.postselect(0, StoppingRule::postselected(target), seed).unwrap();
        prop_assert_eq!(run.hits, target);
    }

    #[test]
    fn hoeffding_interval_contains_the_frequency(p in 0.0f64..=1.0, n in 1u64..10_000_000) {
        let (lo, hi) = hoeffding_interval(p, n, 0.95).unwrap();
        prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
    }

    #[test]
    fn row_scaling_transports_the_permanent(a in real_matrix(5), row in 0usize..5, w in 0.2f64..6.0) {
        let n = a.rows();
        let c = row % n;
        let scan = boost_row_scan(&a, c, &[1.0, w]).unwrap();
        let per = oracle_permanent(&a).norm();
        let p = &scan.points[1];
        let lhs = p.probability * p.sigma_max.powi(2 * n as i32);
        prop_assert!(relative_error(lhs, w * w * per * per) <= 1e-8);
    }

    #[test]
    fn boosting_implies_the_necessary_condition(a in nonnegative_matrix(2, 6), row in 0usize..6) {
        let c = row % a.rows();
        let grid: Vec<f64> = (0..24).map(|i| 1.0 + 0.25 * f64::from(i)).collect();
        let scan = boost_row_scan(&a, c, &grid).unwrap();
        for p in &scan.points {
            if p.ratio.is_some_and(|r| r > 1.0) {
                prop_assert!(p.necessary_condition, "w = {}", p.w);
            }
        }
    }

    #[test]
    fn singular_value_bounds_hold(a in nonnegative_matrix(2, 6), row in 0usize..6, w in 0.5f64..6.0) {
        let c = row % a.rows();
        let scan = boost_row_scan(&a, c, &[w]).unwrap();
        let tol = 1e-9;
        prop_assert!(scan.sigma_bounds.0 <= scan.stats.sigma_max + tol);
        prop_assert!(scan.stats.sigma_max <= scan.sigma_bounds.1 + tol);
        let p = &scan.points[0];
        prop_assert!(p.sigma_bounds.0 <= p.sigma_max + tol && p.sigma_max <= p.sigma_bounds.1 + tol);
    }

    #[test]
    fn shift_bounds_and_growth_hold(a in nonnegative_matrix(2, 5), eps in 0.0f64..3.0) {
        let scan = boost_epsilon(&a, &[0.0, eps]).unwrap();
        let base = oracle_permanent(&a).re;
        let p = &scan.points[1];
        let tol = 1e-9 * p.permanent.max(1.0);
        prop_assert!(p.permanent + tol >= base);
        prop_assert!(p.sigma_bounds.0 <= p.sigma_max + 1e-9 && p.sigma_max <= p.sigma_bounds.1 + 1e-9);
        prop_assert!(p.permanent_bounds.0 <= p.permanent + tol && p.permanent <= p.permanent_bounds.1 + tol);
    }

    #[test]
    fn polynomial_reproduces_fresh_points(
        g in graph(1, 5),
        seed in any::<u64>(),
        xs in prop::collection::vec(POINT_RANGE.0..POINT_RANGE.1, 5),
    ) {
        for family in [MatrixFamily::Adjacency, MatrixFamily::Laplacian] {
            let r = permanental_polynomial(&g, family, Backend::Exact, None, seed).unwrap();
            let m = family.matrix(&g);
            for (got, want) in r.coefficients.iter().zip(oracle_perm_poly(&m)) {
                prop_assert!(relative_error(*got, want) <= 1e-6);
            }
            for &x in &xs {
                let want = oracle_shifted_permanent(&m, x);
                prop_assert!((r.evaluate(x) - want).abs() <= 1e-6 * want.abs().max(1.0));
            }
        }
    }

    #[test]
    fn relabeled_graphs_are_never_distinguished((g, pi) in graph_and_permutation(2, 6), seed in any::<u64>()) {
        let h = g.relabel(&pi).unwrap();
        for family in [MatrixFamily::Laplacian, MatrixFamily::Adjacency] {
            let r = poly_distinguish(&g, &h, family, Backend::Exact, 3, seed).unwrap();
            prop_assert_eq!(r.verdict, Verdict::Undistinguished);
        }
        let found = classical_isomorphic(&g, &h).unwrap().expect("relabeling is an isomorphism");
        prop_assert_eq!(g.adjacency().permute_symmetric(&found), h.adjacency());
    }

    #[test]
    fn relabeling_round_trips((g, pi) in graph_and_permutation(1, 8)) {
        let inverse = invert_permutation(&pi, g.n()).unwrap();
        let back = g.relabel(&pi).unwrap().relabel(&inverse).unwrap();
        prop_assert_eq!(back.adjacency(), g.adjacency());
    }

    #[test]
    fn ranking_follows_candidate_permanents(g in graph(4, 7), anchor in 0usize..7) {
        let anchor = anchor % g.n();
        let r = dense_subgraph_complete(&g, 3, &[anchor], Backend::Exact).unwrap();
        let sq: Vec<f64> = r.order.iter().map(|&i| {
            let c = &r.candidates[i];
            oracle_permanent(&g.adjacency().select(c, c)).norm_sqr()
        }).collect();
        prop_assert!(sq.windows(2).all(|w| w[0] + 1e-9 >= w[1]));
    }

    #[test]
    fn graph_json_round_trips(g in graph(1, 9)) {
        prop_assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g.clone());
        prop_assert_eq!(Graph::from_adjacency_csv(&g.to_adjacency_csv()).unwrap().adjacency(), g.adjacency());
    }

    #[test]
    fn digest_changes_iff_content_changes(a in prop::collection::vec(any::<u8>(), 0..64), b in prop::collection::vec(any::<u8>(), 0..64)) {
        prop_assert_eq!(digest_bytes(&a) == digest_bytes(&b), a == b);
    }
}

#[test]
fn identity_shift_recovers_the_identity_permanent() {
    let id = ComplexMatrix::identity(3);
    let r = photonperm::apps::recover_permanent_from_epsilon(&id, None, Backend::Exact, 1).unwrap();
    assert!((r.permanent - 1.0).abs() <= 1e-9);
    let z = Complex64::new(0.0, 0.0);
    assert_eq!(oracle_permanent(&ComplexMatrix::from_vec(1, 1, vec![z]).unwrap()), z);
}
