mod common;

use std::collections::BTreeSet;

use common::*;
use okada::fibonacci::{chain_count, enumerate_yfs};
use okada::half::{enumerate_diagrams, enumerate_half};
use okada::{triangular_factorization, Permutation};

#[test]
fn diagrams_match_brute_force() {
    for n in 0..=6 {
        let oracle = brute_force_diagrams(n);
        assert_eq!(oracle.len(), factorial(n), "oracle count, rank {n}");
        assert_eq!(enumerate_diagrams(n), oracle, "rank {n}");
        assert!(oracle.iter().all(|d| d.is_valid()));
    }
}

#[test]
fn halves_match_brute_force() {
    for n in 0..=6 {
        let oracle = brute_force_halves(n);
        let ours: BTreeSet<_> = enumerate_half(n, None).unwrap().into_iter().collect();
        assert_eq!(ours, oracle, "rank {n}");
        for s in enumerate_yfs(n) {
            let cell = enumerate_half(n, Some(&s)).unwrap();
            let from_oracle = oracle.iter().filter(|h| h.prop_lab() == s).count();
            assert_eq!(cell.len(), from_oracle, "{s}");
            assert_eq!(cell.len() as u64, chain_count(&s), "{s}");
        }
    }
}

#[test]
fn sum_of_squared_cell_sizes() {
    for n in 0..=8 {
        let total: u64 = enumerate_yfs(n).iter().map(|s| chain_count(s).pow(2)).sum();
        assert_eq!(total as usize, factorial(n), "rank {n}");
    }
}

#[test]
fn normal_forms_by_breadth_first_search() {
    for n in 1..=6 {
        assert_eq!(bfs_normal_forms(n), factorial(n), "rank {n}");
    }
}

#[test]
fn factorization_oracle_pins_implementation() {
    for n in 0..=5 {
        let oracle = factorization_oracle(n, free_weight);
        for (sigma, found) in &oracle {
            assert_eq!(found.len(), 1, "{sigma}: {found:?}");
            let f = triangular_factorization(sigma).unwrap();
            assert_eq!((f.rho.clone(), f.tau.clone()), found[0], "{sigma}");
        }
    }
}

#[test]
fn factorization_with_cardinality_weight_fails_on_identity() {
    let oracle = factorization_oracle(3, card_weight);
    assert!(oracle[&Permutation::identity(3)].is_empty());
}
