use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use qcorr_core::random::{hilbert_schmidt_state, pure_state};
use qcorr_core::{
    bloch_decompose, evolve_tripartite, fano_compose, ghs_params, partial_trace, reduce_ab1, validate_state,
    von_neumann_entropy, DensityMatrix, GisinParams,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn fano_round_trip_on_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let rho = hilbert_schmidt_state(&mut rng, &["A", "B"]);
        assert!(validate_state(&rho).passed);
        let f = bloch_decompose(&rho).unwrap();
        assert!(f.v().norm() <= 1.0 + 1e-10 && f.w().norm() <= 1.0 + 1e-10);
        let back = fano_compose(&f);
        assert!(max_abs_diff(back.entries(), rho.entries()) <= 1e-12);
    }
}

#[test]
fn partial_trace_chains_through_region_one() {
    for &(g, alpha, d) in &[(1.0, 0.785, 0.5), (0.3, 0.2, 0.99), (0.0, 1.5, 0.0)] {
        let p = GisinParams::new(g, alpha).unwrap();
        let q = ghs_params(1.0, d, 0.5).unwrap();
        let via_full = partial_trace(&evolve_tripartite(&p, &q), &[0]).unwrap();
        let via_pair = partial_trace(&reduce_ab1(&p, &q), &[0]).unwrap();
        assert!(max_abs_diff(via_full.entries(), via_pair.entries()) <= 1e-12);
    }
}

#[test]
fn partial_trace_preserves_trace_of_three_qubit_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let rho = hilbert_schmidt_state(&mut rng, &["A", "B_I", "B_II"]);
        for keep in [vec![0], vec![2], vec![0, 1], vec![1, 2], vec![2, 0]] {
            let r = partial_trace(&rho, &keep).unwrap();
            assert!((r.trace().re - 1.0).abs() <= 1e-14);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn entropy_within_bounds(seed in any::<u64>(), three in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labels: &[&str] = if three { &["A", "B", "C"] } else { &["A", "B"] };
        let rho = hilbert_schmidt_state(&mut rng, labels);
        let s = von_neumann_entropy(&rho).unwrap();
        prop_assert!(s >= 0.0);
        prop_assert!(s <= (rho.dim() as f64).log2() + 1e-12);
    }

    #[test]
    fn projectors_have_zero_entropy(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = pure_state(&mut rng, &["A", "B"]);
        prop_assert!(von_neumann_entropy(&rho).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = hilbert_schmidt_state(&mut rng, &["A", "B"]);
        let back = DensityMatrix::from_json(&rho.to_json()).unwrap();
        prop_assert_eq!(back, rho);
    }
}
