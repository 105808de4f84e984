use opsys_core::instances::random_diagonal_system;
use opsys_core::random::SeededRng;
use opsys_core::{
    diagonal_route, find_clique_or_anticlique, phase1_vector_search, random_system, CVector, Kind, SearchParams,
    Tolerance,
};
use proptest::prelude::*;

fn trichotomy_holds(k: usize, n: usize, trials: u64) {
    let tol = Tolerance::default();
    for seed in 0..trials {
        let d = 1 + SeededRng::derive(seed, 77).below(n);
        let v = random_diagonal_system(n, d, seed).unwrap();
        let cert = diagonal_route(&v, k, seed, &tol).unwrap();
        assert_ne!(cert.kind, Kind::Neither, "k = {k}, n = {n}, d = {d}, seed = {seed}: {:?}", cert.trace);
        let again = cert.recheck(&v).unwrap();
        assert_eq!((again.kind, again.compressed_dim), (cert.kind, cert.compressed_dim));
    }
}

#[test]
fn diagonal_route_never_neither_k2() {
    trichotomy_holds(2, 7, 500);
}

#[test]
fn diagonal_route_never_neither_k3() {
    trichotomy_holds(3, 25, 500);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn phase1_compression_is_diagonal(seed in any::<u64>(), n in 6usize..14, d in 2usize..4) {
        let tol = Tolerance::default();
        let v = random_system(n, d, seed).unwrap();
        let mut found: Vec<CVector> = Vec::new();
        while let Some(x) = phase1_vector_search(&v, &found, n + 1, seed, &tol) {
            found.push(x);
        }
        prop_assert!(!found.is_empty());
        for a in v.basis() {
            for (i, x) in found.iter().enumerate() {
                let ax = a.apply(x);
                for (j, y) in found.iter().enumerate() {
                    if i != j {
                        prop_assert!(ax.inner(y).norm() <= 1e-9, "entry ({i}, {j})");
                    }
                }
            }
        }
    }

    #[test]
    fn search_certificates_recheck(seed in any::<u64>(), n in 3usize..9, d in 1usize..6, k in 2usize..4) {
        let tol = Tolerance::default();
        let k = k.min(n);
        let v = random_system(n, d.min(n * n), seed).unwrap();
        let params = SearchParams { seed, ..SearchParams::desk_scale(k) };
        let cert = find_clique_or_anticlique(&v, k, &params, &tol).unwrap();
        if cert.is_success() {
            let again = cert.recheck(&v).unwrap();
            prop_assert_eq!(again.kind, cert.kind);
            prop_assert_eq!(again.compressed_dim, cert.compressed_dim);
        }
    }

    #[test]
    fn larger_retry_budget_keeps_success(seed in any::<u64>(), n in 3usize..8, d in 1usize..6) {
        let tol = Tolerance::default();
        let v = random_system(n, d.min(n * n), seed).unwrap();
        let small = SearchParams { seed, retry_budget: 1, ..SearchParams::desk_scale(2) };
        let large = SearchParams { retry_budget: 4, ..small };
        let a = find_clique_or_anticlique(&v, 2, &small, &tol).unwrap();
        let b = find_clique_or_anticlique(&v, 2, &large, &tol).unwrap();
        if a.is_success() {
            prop_assert_eq!(b.kind, a.kind);
            prop_assert_eq!(b.projection, a.projection);
        }
    }
}
