use num_complex::Complex64;
use umeb_core::bases::{bravyi33, weyl_ub};
use umeb_core::construct::theorem2_truncate;
use umeb_core::equiv::{inequivalence_witness, pair_product_spectra, OrderClass};
use umeb_core::{BasisSet, Claim, ComplexMatrix, Error, Provenance};

const THETA: f64 = 2.636232143305636; // arccos(-7/8) in the upper half plane

fn weyl_subset(d: usize, count: usize) -> BasisSet {
    let w = weyl_ub(d).unwrap();
    BasisSet::new(
        d,
        d,
        w.members()[..count].to_vec(),
        w.labels()[..count].to_vec(),
        Provenance::new("subset", &[]),
        Claim::None,
    )
    .unwrap()
}

#[test]
fn six_member_family_diagonal_pair_has_infinite_order() {
    let profile = pair_product_spectra(&bravyi33()).unwrap();
    assert_eq!(profile.dim, 3);
    assert_eq!(profile.pairs.len(), 36);

    // Pair (0,0): (sqrt(3) u1)^2 has eigenvalues {e^{2i theta}, 1, 1};
    // cos(2 theta) = 2(49/64) - 1 = 17/32, which certifies infinite
    // order by the rational-cosine criterion.
    let p00 = &profile.pairs[0];
    assert_eq!((p00.i, p00.j), (0, 0));
    let expected = [2.0 * THETA - 2.0 * std::f64::consts::TAU / 2.0, 0.0, 0.0];
    for (phase, want) in p00.eigenphases.iter().zip(expected) {
        assert!((phase - want).abs() < 1e-9, "got {phase}, want {want}");
    }
    assert_eq!(
        p00.orders,
        vec![
            OrderClass::InfiniteByNiven,
            OrderClass::Finite(1),
            OrderClass::Finite(1)
        ]
    );
    assert!(profile.has_infinite_order());
}

#[test]
fn six_member_family_mixed_pair_phases() {
    // Pair (0,1): eigenphases {theta + phi - 2pi, 0, theta - phi} with
    // phi = arccos(5/8); the nonzero cosines are irrational, so those
    // phases stay unresolved while the middle one is order 1.
    let phi = (5.0f64 / 8.0).acos();
    let profile = pair_product_spectra(&bravyi33()).unwrap();
    let p01 = &profile.pairs[1];
    assert_eq!((p01.i, p01.j), (0, 1));
    let expected = [
        THETA + phi - 2.0 * std::f64::consts::PI,
        0.0,
        THETA - phi,
    ];
    for (phase, want) in p01.eigenphases.iter().zip(expected) {
        assert!((phase - want).abs() < 1e-9, "got {phase}, want {want}");
    }
    assert_eq!(
        p01.orders,
        vec![
            OrderClass::Unresolved,
            OrderClass::Finite(1),
            OrderClass::Unresolved
        ]
    );
}

#[test]
fn weyl_pair_products_all_have_small_finite_order() {
    let profile = pair_product_spectra(&weyl_ub(2).unwrap()).unwrap();
    assert_eq!(profile.pairs.len(), 16);
    assert!(!profile.has_infinite_order());
    for pair in &profile.pairs {
        for (phase, order) in pair.eigenphases.iter().zip(&pair.orders) {
            // Products of 2x2 Weyl members have eigenvalues in
            // {1, -1, i, -i}.
            let on_grid = [0.0, std::f64::consts::PI, std::f64::consts::FRAC_PI_2, -std::f64::consts::FRAC_PI_2]
                .iter()
                .any(|g| (phase - g).abs() < 1e-12);
            assert!(on_grid, "phase {phase}");
            match order {
                OrderClass::Finite(n) => assert!([1, 2, 4].contains(n)),
                other => panic!("expected finite order, got {other:?}"),
            }
        }
    }
}

#[test]
fn spectra_are_invariant_under_conjugation() {
    // Conjugating every member by a fixed unitary W conjugates every
    // pair product, so all eigenphase lists must match.
    let b = bravyi33();
    let f = ComplexMatrix::from_fn(3, 3, |r, c| {
        Complex64::from_polar(
            1.0 / 3f64.sqrt(),
            std::f64::consts::TAU * (r * c) as f64 / 3.0,
        )
    });
    let d = ComplexMatrix::from_fn(3, 3, |r, c| {
        if r == c {
            Complex64::from_polar(1.0, 0.7 * (r as f64 + 1.0))
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let w = f.matmul(&d).unwrap();
    assert!(w.is_scaled_unitary(1.0, 1e-12));
    let w_adj = w.adjoint();
    let conjugated: Vec<ComplexMatrix> = b
        .members()
        .iter()
        .map(|m| w.matmul(m).unwrap().matmul(&w_adj).unwrap())
        .collect();
    let cb = BasisSet::new(
        3,
        3,
        conjugated,
        b.labels().to_vec(),
        Provenance::new("conjugated", &[]),
        Claim::None,
    )
    .unwrap();

    let pa = pair_product_spectra(&b).unwrap();
    let pb = pair_product_spectra(&cb).unwrap();
    for (x, y) in pa.pairs.iter().zip(&pb.pairs) {
        assert_eq!((x.i, x.j), (y.i, y.j));
        for (p, q) in x.eigenphases.iter().zip(&y.eigenphases) {
            assert!((p - q).abs() < 1e-9, "pair ({},{}): {p} vs {q}", x.i, x.j);
        }
    }
}

#[test]
fn obstruction_separates_the_families() {
    let report = inequivalence_witness(&bravyi33(), &weyl_subset(3, 6)).unwrap();
    assert!(report.a_has_infinite_order);
    assert!(!report.b_has_infinite_order);
    assert!(report.obstruction);
    assert_eq!(report.verdict(), "inequivalent (spectral order obstruction)");
}

#[test]
fn identical_families_show_no_obstruction() {
    let report = inequivalence_witness(&bravyi33(), &bravyi33()).unwrap();
    assert!(!report.obstruction);
    assert_eq!(report.verdict(), "no obstruction found");
}

#[test]
fn comparison_requires_matching_shapes_and_counts() {
    assert!(matches!(
        inequivalence_witness(&bravyi33(), &weyl_subset(2, 3)),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        inequivalence_witness(&weyl_subset(3, 6), &weyl_subset(3, 5)),
        Err(Error::Domain(_))
    ));
}

#[test]
fn spectra_require_square_unitary_members() {
    let rect = theorem2_truncate(2, 3, 1).unwrap();
    assert!(matches!(
        pair_product_spectra(&rect),
        Err(Error::Precondition(_))
    ));

    // A non-unitary member is named in the error: mixing the identity
    // and diagonal-phase members gives sqrt(2)*mixed = diag(1.4, 0.2).
    let w = weyl_ub(2).unwrap();
    let mixed = w
        .member(0)
        .scale(Complex64::from(0.8))
        .add(&w.member(2).scale(Complex64::from(0.6)))
        .unwrap();
    let b = BasisSet::new(
        2,
        2,
        vec![w.member(1).clone(), mixed],
        vec!["ok".into(), "mixed".into()],
        Provenance::new("test", &[]),
        Claim::None,
    )
    .unwrap();
    match pair_product_spectra(&b) {
        Err(Error::Precondition(msg)) => assert!(msg.contains("mixed")),
        other => panic!("expected precondition error, got {other:?}"),
    }
}
