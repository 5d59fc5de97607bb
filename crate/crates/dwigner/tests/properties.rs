//! Randomized invariants over dimensions, indices, and displacement
//! labels.

use proptest::prelude::*;

use dwigner::linalg::{dft_matrix, DensityMatrix, StateVector};
use dwigner::lines::{sum_wigner_on_line, Line};
use dwigner::schwinger::{delta_mod, t_displacement};
use dwigner::wigner::{
    fold_to_fundamental, inner_product_from_grids, reconstruct_density, wigner_of_state,
};

fn dim() -> impl Strategy<Value = usize> {
    2usize..=8
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factory_states_have_unit_norm_and_normalized_grids(
        (n, i, j) in dim().prop_flat_map(|n| (Just(n), 0..n, 0..n)),
    ) {
        let state = if i == j {
            StateVector::computational(n, i).unwrap()
        } else {
            StateVector::superposition(n, i, j).unwrap()
        };
        prop_assert!((state.norm() - 1.0).abs() < 1e-12);
        let w = wigner_of_state(&state).unwrap();
        prop_assert!((w.total() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn momentum_states_match_dft_columns(
        (n, k0) in dim().prop_flat_map(|n| (Just(n), 0..n)),
    ) {
        let f = dft_matrix(n).unwrap();
        let s = StateVector::momentum(n, k0).unwrap();
        for row in 0..n {
            prop_assert!((f[(row, k0)] - s.amplitudes()[row]).norm() < 1e-14);
        }
    }

    #[test]
    fn displacements_are_unitary_for_any_integers(
        n in dim(), m in -100i64..100, k in -100i64..100,
    ) {
        let t = t_displacement(n, m, k).unwrap();
        prop_assert!(t.unitarity_error() < 1e-12);
        // labels only matter modulo 2N
        let t2 = t_displacement(n, m + 2 * n as i64, k - 2 * n as i64).unwrap();
        prop_assert!(t.max_abs_diff(&t2) < 1e-12);
    }

    #[test]
    fn delta_mod_is_periodic_indicator(x in -1000i64..1000, m in 1i64..64) {
        let d = delta_mod(x, m);
        prop_assert_eq!(d == 1, x.rem_euclid(m) == 0);
        prop_assert_eq!(delta_mod(x + m, m), d);
    }

    #[test]
    fn subgrid_symmetry_holds_on_superpositions(
        (n, i, j) in (3usize..=8).prop_flat_map(|n| (Just(n), 0..n, 0..n)),
    ) {
        prop_assume!(i != j);
        let w = wigner_of_state(&StateVector::superposition(n, i, j).unwrap()).unwrap();
        prop_assert!(fold_to_fundamental(&w).is_ok());
    }

    #[test]
    fn line_sums_of_basis_states_are_probabilities(
        (n, n0, n1, n2, n3) in dim().prop_flat_map(|n| {
            (Just(n), 0..n, 0..2 * n as i64, 0..2 * n as i64, 0..2 * n as i64)
        }),
    ) {
        prop_assume!((n1, n2) != (0, 0));
        let w = wigner_of_state(&StateVector::computational(n, n0).unwrap()).unwrap();
        let line = Line::new(n, n1, n2, n3).unwrap();
        let s = sum_wigner_on_line(&w, &line).unwrap();
        prop_assert!(s >= -1e-9, "line sum {s}");
        prop_assert!(s <= 1.0 + 1e-9, "line sum {s}");
    }

    #[test]
    fn pure_state_grids_reconstruct_and_have_unit_purity(
        (n, i, j) in (2usize..=5).prop_flat_map(|n| (Just(n), 0..n, 0..n)),
    ) {
        prop_assume!(i != j);
        let s = StateVector::superposition(n, i, j).unwrap();
        let rho = DensityMatrix::pure(&s);
        let w = wigner_of_state(&s).unwrap();
        let back = reconstruct_density(&w).unwrap();
        prop_assert!(back.matrix().frobenius_distance(rho.matrix()) < 1e-9);
        let purity = inner_product_from_grids(&w, &w).unwrap();
        prop_assert!((purity - 1.0).abs() < 1e-10);
    }
}
