use num_complex::Complex64;
use proptest::prelude::*;
use umeb_core::hsmat::{matrix_to_state, schmidt_number, state_to_matrix};
use umeb_core::{ComplexMatrix, MatrixSubspace, StateVector};

fn entry() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(entry(), rows * cols)
        .prop_map(move |v| ComplexMatrix::from_rows(rows, cols, v).unwrap())
}

fn dims() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=4, 1usize..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_product_is_conjugate_symmetric(
        (r, c) in dims(),
        seed_a in proptest::collection::vec(entry(), 16),
        seed_b in proptest::collection::vec(entry(), 16),
    ) {
        let a = ComplexMatrix::from_rows(r, c, seed_a[..r * c].to_vec()).unwrap();
        let b = ComplexMatrix::from_rows(r, c, seed_b[..r * c].to_vec()).unwrap();
        let ab = a.hs_inner(&b).unwrap();
        let ba = b.hs_inner(&a).unwrap();
        prop_assert!((ab - ba.conj()).norm() < 1e-12);
    }

    #[test]
    fn kron_norm_is_multiplicative(a in matrix(2, 3), b in matrix(3, 2)) {
        let k = a.kron(&b);
        prop_assert_eq!(k.rows(), 6);
        prop_assert_eq!(k.cols(), 6);
        let lhs = k.hs_norm();
        let rhs = a.hs_norm() * b.hs_norm();
        prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs));
    }

    #[test]
    fn kron_inner_products_factor(
        a in matrix(2, 2),
        b in matrix(2, 3),
        c in matrix(2, 2),
        d in matrix(2, 3),
    ) {
        let lhs = a.kron(&b).hs_inner(&c.kron(&d)).unwrap();
        let rhs = a.hs_inner(&c).unwrap() * b.hs_inner(&d).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn state_matrix_round_trip_preserves_inner_products(
        (r, c) in dims(),
        seed_a in proptest::collection::vec(entry(), 16),
        seed_b in proptest::collection::vec(entry(), 16),
    ) {
        let normalize = |v: &[Complex64]| -> Option<Vec<Complex64>> {
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            (norm > 1e-3).then(|| v.iter().map(|z| z / norm).collect())
        };
        let Some(amp_a) = normalize(&seed_a[..r * c]) else { return Ok(()); };
        let Some(amp_b) = normalize(&seed_b[..r * c]) else { return Ok(()); };
        let psi = StateVector::new(r, c, amp_a).unwrap();
        let chi = StateVector::new(r, c, amp_b).unwrap();
        let direct = psi.inner(&chi).unwrap();
        let via_matrices = state_to_matrix(&psi)
            .hs_inner(&state_to_matrix(&chi))
            .unwrap();
        prop_assert!((direct - via_matrices).norm() < 1e-12);

        let back = matrix_to_state(&state_to_matrix(&psi)).unwrap();
        prop_assert!((back.inner(&psi).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn product_states_have_schmidt_number_one(
        left in proptest::collection::vec(entry(), 3),
        right in proptest::collection::vec(entry(), 4),
    ) {
        let norm_l = left.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let norm_r = right.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(norm_l > 1e-3 && norm_r > 1e-3);
        let amps: Vec<Complex64> = left
            .iter()
            .flat_map(|l| right.iter().map(move |r| l * r / (norm_l * norm_r)))
            .collect();
        let psi = StateVector::new(3, 4, amps).unwrap();
        prop_assert_eq!(schmidt_number(&psi), 1);
    }

    #[test]
    fn complement_of_complement_spans_the_original(
        mats in proptest::collection::vec(matrix(2, 3), 1..=4),
    ) {
        let span = MatrixSubspace::orthonormalize(2, 3, &mats).unwrap();
        let comp = span.complement();
        prop_assert_eq!(span.dim() + comp.dim(), 6);
        let double = comp.complement();
        prop_assert_eq!(double.dim(), span.dim());
        for b in span.basis() {
            let r = double.residual(b).unwrap();
            prop_assert!(r.hs_norm() < 1e-9);
        }
        // The two subspaces are mutually orthogonal.
        for x in span.basis() {
            for y in comp.basis() {
                prop_assert!(x.hs_inner(y).unwrap().norm() < 1e-10);
            }
        }
    }
}
