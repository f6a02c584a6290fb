mod common;

use proptest::prelude::*;
use qsqc::{
    enumerate_errors, error_count, psi_map, rref, Gf2Subspace, NormMode, QuotientSpace, SympVector,
};

fn vector(n: usize) -> impl Strategy<Value = SympVector> {
    let mask = (1u64 << n) - 1;
    (any::<u64>(), any::<u64>()).prop_map(move |(a, b)| SympVector::from_masks(n, a & mask, b & mask))
}

fn sized_vectors() -> impl Strategy<Value = (usize, Vec<SympVector>)> {
    (1usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(vector(n), 0..=2 * n)))
}

fn subspace_and_vectors() -> impl Strategy<Value = (Gf2Subspace, Vec<SympVector>)> {
    (1usize..=6).prop_flat_map(|n| {
        (
            prop::collection::vec(vector(n), 0..=n + 2),
            prop::collection::vec(vector(n), 3),
        )
            .prop_map(move |(rows, vs)| (Gf2Subspace::span(n, &rows).unwrap(), vs))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn duality_is_an_involution((n, rows) in sized_vectors()) {
        let s = Gf2Subspace::span(n, &rows).unwrap();
        prop_assert_eq!(s.symplectic_dual().symplectic_dual(), s);
    }

    #[test]
    fn rank_nullity((n, rows) in sized_vectors()) {
        let s = Gf2Subspace::span(n, &rows).unwrap();
        prop_assert_eq!(s.dim() + s.symplectic_dual().dim(), 2 * n);
        for r in s.basis() {
            for w in s.symplectic_dual().basis() {
                prop_assert!(!r.sym(w));
            }
        }
    }

    #[test]
    fn rref_is_idempotent((n, rows) in sized_vectors()) {
        let once = rref(n, &rows).unwrap_or_else(|_| Gf2Subspace::zero(n));
        let twice = rref(n, once.basis()).unwrap_or_else(|_| Gf2Subspace::zero(n));
        prop_assert_eq!(once.basis(), twice.basis());
        for r in &rows {
            prop_assert!(once.contains(r).unwrap());
        }
    }

    #[test]
    fn symplectic_form_is_bilinear_and_alternating((u, v, w) in (1usize..=8).prop_flat_map(|n| (vector(n), vector(n), vector(n)))) {
        prop_assert_eq!((&u + &v).sym(&w), u.sym(&w) ^ v.sym(&w));
        prop_assert_eq!(u.sym(&v), v.sym(&u));
        prop_assert!(!u.sym(&u));
    }

    #[test]
    fn psi_preserves_weight_and_addition((u, v) in (1usize..=10).prop_flat_map(|n| (vector(n), vector(n)))) {
        prop_assert_eq!(psi_map(&u).hamming_weight(), u.quantum_weight());
        prop_assert_eq!(psi_map(&(&u + &v)), &psi_map(&u) + &psi_map(&v));
        prop_assert_eq!(psi_map(&u).trace_inner(&psi_map(&v)), u.sym(&v));
    }

    #[test]
    fn quotient_norm_axioms((h, vs) in subspace_and_vectors()) {
        let space = QuotientSpace::new(h.clone(), NormMode::Quantum);
        let c: Vec<_> = vs.iter().map(|v| space.canonicalize(v).unwrap()).collect();
        let (x, y, z) = (&c[0], &c[1], &c[2]);
        prop_assert_eq!(x.min_norm() == 0, x.is_zero());
        prop_assert!(x.min_norm() <= x.proj_norm());
        prop_assert!((x + y).min_norm() <= x.min_norm() + y.min_norm());
        prop_assert_eq!(x.distance(y).unwrap(), y.distance(x).unwrap());
        prop_assert_eq!((x + z).distance(&(y + z)).unwrap(), x.distance(y).unwrap());
        // canonical forms depend only on the coset
        if let Some(r) = h.basis().first() {
            prop_assert_eq!(&space.canonicalize(&(&vs[0] + r)).unwrap(), x);
        }
    }
}

#[test]
fn norm_axioms_exhaustive_for_small_quotients() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for n in 1..=4 {
        for rows in 0..=n {
            let h = common::random_self_orthogonal(&mut rng, n, rows).symplectic_dual();
            let space = QuotientSpace::new(h, NormMode::Quantum);
            assert!(space.dim() <= 8);
            let cosets = space.cosets().unwrap();
            for x in &cosets {
                assert_eq!(x.min_norm() == 0, x.is_zero());
                for y in &cosets {
                    assert!((x + y).min_norm() <= x.min_norm() + y.min_norm());
                    for z in &cosets {
                        assert_eq!((x + z).distance(&(y + z)).unwrap(), x.distance(y).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn error_enumeration_matches_closed_form() {
    for n in 1..=12 {
        for t in 0..=4 {
            let all: Vec<SympVector> = enumerate_errors(n, t).collect();
            assert_eq!(all.len() as u128, error_count(n, t), "n={n} t={t}");
            assert!(all.windows(2).all(|w| w[0].quantum_weight() <= w[1].quantum_weight()));
            assert!(all.iter().all(|v| v.quantum_weight() <= t));
            let unique: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(unique.len(), all.len());
        }
    }
}
