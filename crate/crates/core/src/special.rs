//! Scalar special functions used by the signal catalog: tails of the sine
//! integral and of the `sinc²`/`sinc⁴` integrals.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::quadrature::{gauss_legendre_rule, integrate_panels_with, uniform_breaks};

const SERIES_CUTOFF: f64 = 4.0;

/// `∫_z^∞ sin t / t dt` for `z ≥ 0`.
///
/// Small arguments use the power series of `Si`; large ones use the
/// auxiliary functions `f`, `g` with `∫_z^∞ sin t/t dt = f(z) cos z + g(z) sin z`,
/// each evaluated from its Laplace integral so no cancellation occurs.
pub fn sine_integral_tail(z: f64) -> f64 {
    assert!(z >= 0.0, "sine_integral_tail needs z >= 0, got {z}");
    if z <= SERIES_CUTOFF {
        return FRAC_PI_2 - sine_integral_series(z);
    }
    let (f, g) = auxiliary_fg(z);
    f * z.cos() + g * z.sin()
}

/// `Si(z)` by its Taylor series; accurate to roundoff for `|z| ≤ 4`.
fn sine_integral_series(z: f64) -> f64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        // term_k = (-1)^k z^{2k+1} / (2k+1)!
        term *= -z2 / ((2.0 * kf + 2.0) * (2.0 * kf + 3.0));
        let add = term / (2.0 * kf + 3.0);
        sum += add;
        k += 1;
        if add.abs() <= 1e-17 * sum.abs() || k > 60 {
            break;
        }
    }
    sum
}

/// `f(z) = ∫_0^∞ e^{-zt}/(1+t²) dt` and `g(z) = ∫_0^∞ t e^{-zt}/(1+t²) dt`.
fn auxiliary_fg(z: f64) -> (f64, f64) {
    let rule = gauss_legendre_rule(24).expect("fixed order");
    let breaks = uniform_breaks(0.0, 44.0, 22);
    let f = integrate_panels_with(
        &rule,
        &|s: f64| {
            let t = s / z;
            (-s).exp() / (1.0 + t * t)
        },
        &breaks,
    )
    .expect("finite integrand");
    let g = integrate_panels_with(
        &rule,
        &|s: f64| {
            let t = s / z;
            (-s).exp() * t / (1.0 + t * t)
        },
        &breaks,
    )
    .expect("finite integrand");
    (f / z, g / z)
}

/// `∫_a^∞ sin²u / u² du` for `a ≥ 0`, written as `sin²a / a + ∫_{2a}^∞ sin t / t dt`.
pub fn sinc2_tail(a: f64) -> f64 {
    assert!(a >= 0.0, "sinc2_tail needs a >= 0, got {a}");
    if a == 0.0 {
        return FRAC_PI_2;
    }
    let s = a.sin();
    s * s / a + sine_integral_tail(2.0 * a)
}

/// `∫_a^∞ sin⁴u / u⁴ du` for `a ≥ 0`. The full integral is `π/3`.
pub fn sinc4_tail(a: f64) -> f64 {
    assert!(a >= 0.0, "sinc4_tail needs a >= 0, got {a}");
    let rule = gauss_legendre_rule(24).expect("fixed order");
    let integrand = |u: f64| {
        if u.abs() < 1e-4 {
            let u2 = u * u;
            // sinc(u)^4 = 1 - 2u²/3 + O(u⁴)
            1.0 - 2.0 * u2 / 3.0
        } else {
            let r = u.sin() / u;
            let r2 = r * r;
            r2 * r2
        }
    };
    if a <= 8.0 {
        let head = if a == 0.0 {
            0.0
        } else {
            let panels = (a / 1.0).ceil() as usize;
            integrate_panels_with(&rule, &integrand, &uniform_breaks(0.0, a, panels)).expect("finite integrand")
        };
        return (PI / 3.0 - head).max(0.0);
    }
    // Integrate up to a far cutoff and add the mean of the remainder,
    // `∫_A^∞ 3/(8u⁴) du = 1/(8A³)`; the oscillating parts are O(A⁻⁴).
    let cutoff = (4.0 * a).max(1000.0);
    let panels = ((cutoff - a) / 2.0).ceil() as usize;
    let body = integrate_panels_with(&rule, &integrand, &uniform_breaks(a, cutoff, panels)).expect("finite integrand");
    body + 1.0 / (8.0 * cutoff.powi(3))
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}
