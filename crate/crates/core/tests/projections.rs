use std::f64::consts::E;
use std::sync::Arc;

use bandlim::concentration::{CustomSignal, Signal};
use bandlim::orthopoly::{chebyshev_norm_factor, legendre_norm_factor};
use bandlim::projections::{
    bound_chebyshev_coeff_corrected, bound_chebyshev_tail, bound_legendre_coeff, bound_legendre_tail,
    chebyshev_inner_products, chebyshev_tail_spectral, error_norm, expand, legendre_inner_products,
    legendre_tail_spectral, weighted_error_norm, Basis, Expansion, NormKind,
};

#[test]
fn coefficients_of_a_band_limited_signal_obey_their_decay_bounds() {
    for c in [10.0, 50.0] {
        let f = Signal::sinc(c).unwrap();
        let start = (E * c / 2.0).ceil() as usize + 1;
        let leg = legendre_inner_products(&f, start + 60).unwrap();
        let cheb = chebyshev_inner_products(&f, start + 60).unwrap();
        for k in start..=start + 59 {
            assert!(
                leg[k].abs() <= bound_legendre_coeff(c, k) * f.l2_norm,
                "c = {c}, k = {k}"
            );
            assert!(
                cheb[k].abs() <= bound_chebyshev_coeff_corrected(c, k) * f.l2_norm,
                "c = {c}, k = {k}"
            );
        }
    }
}

#[test]
fn spectral_coefficients_agree_with_quadrature_where_both_are_accurate() {
    let f = Signal::sinc(10.0).unwrap();
    let leg = legendre_inner_products(&f, 20).unwrap();
    // The same function restricted to [-1, 1] has no closed-form transform,
    // so its coefficients come from quadrature.
    let truncated = Signal::custom(
        "sinc restricted",
        CustomSignal {
            eval: Arc::new(|x: f64| if x == 0.0 { 1.0 } else { (10.0 * x).sin() / (10.0 * x) }),
            support: Some((-1.0, 1.0)),
            breakpoints: vec![-1.0, 1.0],
            weight_integrable: true,
        },
    )
    .unwrap();
    let e = expand(&truncated, Basis::Legendre, 20).unwrap();
    for (k, (spectral, coeff)) in leg.iter().zip(&e.coeffs).enumerate() {
        let by_quadrature = coeff / legendre_norm_factor(k);
        assert!((spectral - by_quadrature).abs() < 1e-12, "k = {k}");
    }
}

#[test]
fn tails_obey_their_bounds_for_the_sinc_signal() {
    let c = 10.0;
    let f = Signal::sinc(c).unwrap();
    let start = (5.0 * E).ceil() as usize;
    for n in start..=start + 20 {
        let leg = legendre_tail_spectral(&f, n).unwrap() / f.l2_norm;
        assert!(leg <= bound_legendre_tail(c, n, NormKind::L2).unwrap(), "N = {n}");
        let cheb = chebyshev_tail_spectral(&f, n).unwrap() / f.l2_norm;
        assert!(cheb <= bound_chebyshev_tail(c, n).unwrap(), "N = {n}");
    }
}

#[test]
fn parseval_tail_matches_the_measured_error_at_moderate_order() {
    let f = Signal::sinc(10.0).unwrap();
    for n in [8usize, 12] {
        let leg = expand(&f, Basis::Legendre, n).unwrap();
        let measured = error_norm(&f, &leg, (-1.0, 1.0), NormKind::L2, 0).unwrap();
        let tail = legendre_tail_spectral(&f, n).unwrap();
        assert!(
            (measured - tail).abs() <= 1e-9 * tail.max(1e-6),
            "N = {n}: {measured} vs {tail}"
        );
        let cheb = expand(&f, Basis::Chebyshev, n).unwrap();
        let measured = weighted_error_norm(&f, &cheb).unwrap();
        let tail = chebyshev_tail_spectral(&f, n).unwrap();
        assert!(
            (measured - tail).abs() <= 1e-9 * tail.max(1e-6),
            "N = {n}: {measured} vs {tail}"
        );
    }
}

#[test]
fn projection_error_is_monotone_in_the_order() {
    let f = Signal::hat();
    for basis in [Basis::Legendre, Basis::Chebyshev, Basis::Hermite] {
        let mut last = f64::INFINITY;
        for n in [4usize, 8, 16, 32] {
            let e = expand(&f, basis, n).unwrap();
            let err = match basis {
                Basis::Chebyshev => weighted_error_norm(&f, &e).unwrap(),
                Basis::Hermite => error_norm(&f, &e, (-12.0, 12.0), NormKind::L2, 0).unwrap(),
                _ => error_norm(&f, &e, (-1.0, 1.0), NormKind::L2, 0).unwrap(),
            };
            assert!(err <= last + 1e-14, "{basis:?}, n = {n}");
            last = err;
        }
    }
}

#[test]
fn gaussian_is_the_zeroth_hermite_function() {
    let f = Signal::gaussian();
    let e = expand(&f, Basis::Hermite, 6).unwrap();
    assert!((e.coeffs[0] - std::f64::consts::PI.powf(0.25)).abs() < 1e-13);
    for &c in &e.coeffs[1..] {
        assert!(c.abs() < 1e-13);
    }
}

#[test]
fn expansions_round_trip_through_csv() {
    for basis in [
        Basis::Hermite,
        Basis::ScaledHermite { alpha: 0.1 },
        Basis::Legendre,
        Basis::Chebyshev,
    ] {
        let e = expand(&Signal::indicator(), basis, 9).unwrap();
        let back = Expansion::from_csv(&e.to_csv()).unwrap();
        assert_eq!(back, e);
    }
}

#[test]
fn chebyshev_normalization_is_consistent() {
    let f = Signal::sinc(3.0).unwrap();
    let ip = chebyshev_inner_products(&f, 10).unwrap();
    let e = expand(&f, Basis::Chebyshev, 10).unwrap();
    for (k, (coeff, v)) in e.coeffs.iter().zip(&ip).enumerate() {
        assert!((coeff - chebyshev_norm_factor(k) * v).abs() < 1e-12, "k = {k}");
    }
}
