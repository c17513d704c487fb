mod common;

use common::*;
use proptest::prelude::*;
use tcqeve_core::pauli::{PauliLcu, PauliString};

fn phase(k: u32) -> num_complex::Complex64 {
    [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][(k & 3) as usize]
}

fn word(n: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('I'), Just('X'), Just('Y'), Just('Z')], n)
        .prop_map(|v| v.into_iter().collect())
}

proptest! {
    #[test]
    fn product_matches_matrix_product((a, b) in (1usize..=5).prop_flat_map(|n| (word(n), word(n)))) {
        let pa: PauliString = a.parse().unwrap();
        let pb: PauliString = b.parse().unwrap();
        let (k, p) = pa.mul(&pb);
        let lhs = pauli_matrix(&pa) * pauli_matrix(&pb);
        let rhs = pauli_matrix(&p) * phase(k);
        prop_assert!(max_entry_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn basis_action_matches_matrix_column(w in (1usize..=6).prop_flat_map(word), b in any::<u64>()) {
        let p: PauliString = w.parse().unwrap();
        let n = p.n_qubits();
        let b = b & ((1u64 << n) - 1);
        let (k, out) = p.apply_to_basis(b);
        let m = pauli_matrix(&p);
        for row in 0..(1usize << n) {
            let want = if row as u64 == out { phase(k) } else { c(0.0, 0.0) };
            prop_assert!((m[(row, b as usize)] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn display_parse_round_trip(w in (1usize..=64).prop_flat_map(word)) {
        let p: PauliString = w.parse().unwrap();
        prop_assert_eq!(p.to_string(), w);
    }

    #[test]
    fn dump_round_trip(seed in any::<u64>(), n in 1usize..=8, terms in 0usize..20) {
        let mut r = rng(seed);
        let lcu = random_lcu(n, terms, &mut r, false);
        let back = PauliLcu::<f64>::from_dump(&lcu.to_dump()).unwrap();
        prop_assert_eq!(back, lcu);
    }

    #[test]
    fn truncation_keeps_exactly_large_terms(seed in any::<u64>(), mu in 1u32..12) {
        let mut r = rng(seed);
        let lcu = random_lcu(4, 30, &mut r, false);
        let t = lcu.truncate(mu);
        let thr = lcu.alpha() * 0.5f64.powi(mu as i32);
        for term in lcu.terms() {
            let kept = t.lcu.terms().iter().any(|k| k.string == term.string);
            prop_assert_eq!(kept, term.coeff.norm() >= thr);
        }
        prop_assert!((t.lcu.alpha() + t.dropped_weight - lcu.alpha()).abs() < 1e-12);
        prop_assert!(t.dropped_weight <= t.dropped_terms as f64 * thr);
    }
}

#[test]
fn one_norm_excludes_identity() {
    let lcu = PauliLcu::from_terms(
        2,
        c(5.0, 0.0),
        vec![(c(0.5, 0.0), "ZI".parse().unwrap()), (c(0.0, -0.25), "XY".parse().unwrap()), (c(1.0, 0.0), "II".parse().unwrap())],
        0.0,
    )
    .unwrap();
    assert_eq!(lcu.alpha(), 0.75);
    assert_eq!(lcu.b0(), c(6.0, 0.0));
    assert_eq!(lcu.len(), 2);
}

#[test]
fn like_terms_combine_and_cancel() {
    let z: PauliString = "ZZ".parse().unwrap();
    let lcu = PauliLcu::from_terms(2, c(0.0, 0.0), vec![(c(0.5, 0.0), z), (c(-0.5, 0.0), z)], 1e-12).unwrap();
    assert!(lcu.is_empty());
}
