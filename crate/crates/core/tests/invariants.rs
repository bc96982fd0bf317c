use proptest::prelude::*;

use bandlim::concentration::Signal;
use bandlim::kernels::christoffel_darboux;
use bandlim::orthopoly::{bessel_j, hermite_function_batch, spherical_bessel_j};
use bandlim::projections::{expand, Basis, Expansion};
use bandlim::quadrature::gauss_legendre_rule;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermite_batch_is_bounded(n in 0usize..300, x in -40.0f64..40.0) {
        let b = hermite_function_batch(n, x).unwrap();
        for v in b.values {
            prop_assert!(v.is_finite() && v.abs() <= 0.82);
        }
    }

    #[test]
    fn kernel_is_symmetric(n in 0usize..120, x in -15.0f64..15.0, y in -15.0f64..15.0) {
        let a = christoffel_darboux(n, x, y).unwrap();
        let b = christoffel_darboux(n, y, x).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn kernel_diagonal_dominates(n in 0usize..80, x in -6.0f64..6.0, y in -6.0f64..6.0) {
        let kxy = christoffel_darboux(n, x, y).unwrap();
        let kxx = christoffel_darboux(n, x, x).unwrap();
        let kyy = christoffel_darboux(n, y, y).unwrap();
        prop_assert!(kxy * kxy <= kxx * kyy * (1.0 + 1e-10) + 1e-24);
    }

    #[test]
    fn bessel_functions_are_bounded(k in 0usize..200, x in 0.0f64..300.0) {
        prop_assert!(bessel_j(k, x).abs() <= 1.0 + 1e-14);
        prop_assert!(spherical_bessel_j(k, x).abs() <= 1.0 + 1e-14);
    }

    #[test]
    fn quadrature_weights_are_positive_and_sum_to_two(m in 1usize..400) {
        let r = gauss_legendre_rule(m).unwrap();
        prop_assert!(r.weights.iter().all(|&w| w > 0.0));
        prop_assert!((r.weights.iter().sum::<f64>() - 2.0).abs() < 1e-13);
    }

    #[test]
    fn expansions_round_trip_for_any_coefficients(
        coeffs in proptest::collection::vec(-1e300f64..1e300, 1..40),
        alpha in 1e-3f64..1e3,
    ) {
        let e = Expansion::new(Basis::ScaledHermite { alpha }, coeffs).unwrap();
        prop_assert_eq!(Expansion::from_csv(&e.to_csv()).unwrap(), e);
    }

    #[test]
    fn signal_specs_round_trip(c in 0.01f64..1e4) {
        let s = Signal::sinc(c).unwrap();
        let back = Signal::from_spec(&s.spec()).unwrap();
        prop_assert_eq!(back.name, s.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn legendre_energy_never_exceeds_the_norm(c in 0.5f64..60.0) {
        let f = Signal::sinc(c).unwrap();
        let e = expand(&f, Basis::Legendre, 40).unwrap();
        let energy: f64 = e.coeffs.iter().map(|v| v * v).sum();
        prop_assert!(energy <= f.l2_norm * f.l2_norm * (1.0 + 1e-10));
    }
}
