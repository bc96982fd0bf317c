//! WKB asymptotics of the Hermite functions away from the turning point
//! `|x| = √(2n+1)`, with their explicit error envelopes.

use std::f64::consts::PI;

use crate::error::{domain, regime, Result};
use crate::orthopoly::hermite_center;

/// Relative distance to the turning point inside which the main term is
/// refused.
pub const TURNING_POINT_GUARD: f64 = 1e-9;

/// Degree `n` together with `λ = √(2n+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseParams {
    pub n: usize,
    pub lambda: f64,
}

impl PhaseParams {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            lambda: lambda_sq(n).sqrt(),
        }
    }

    /// `λ² = 2n+1`, exact in floating point for every practical `n`.
    pub fn lambda_sq(&self) -> f64 {
        lambda_sq(self.n)
    }
}

#[inline]
fn lambda_sq(n: usize) -> f64 {
    2.0 * n as f64 + 1.0
}

/// `φ_n(x) = ∫_0^x √(2n+1-t²) dt`, in closed form
/// `((2n+1)/2)·arcsin(x/λ) + (x/2)·√(2n+1-x²)`.
pub fn phase(n: usize, x: f64) -> Result<f64> {
    let p = PhaseParams::new(n);
    let l2 = p.lambda_sq();
    if !x.is_finite() || x.abs() > p.lambda {
        return Err(domain("phase", x, format!("[-{0}, {0}]", p.lambda)));
    }
    let s = (x / p.lambda).clamp(-1.0, 1.0);
    Ok(0.5 * l2 * s.asin() + 0.5 * x * (l2 - x * x).max(0.0).sqrt())
}

/// `e_n(x) = √(2n+1)·x − φ_n(x)`, the deviation of the phase from linear.
pub fn phase_deviation(n: usize, x: f64) -> Result<f64> {
    Ok(PhaseParams::new(n).lambda * x - phase(n, x)?)
}

/// Main term of the WKB approximation of `h_n`:
/// `√λ h_n(0) cos φ_n(x)/(λ²-x²)^{1/4} + h_n'(0)/√λ · sin φ_n(x)/(λ²-x²)^{1/4}`.
pub fn wkb_main(n: usize, x: f64) -> Result<f64> {
    let p = PhaseParams::new(n);
    if !x.is_finite() || x.abs() >= p.lambda * (1.0 - TURNING_POINT_GUARD) {
        return Err(domain(
            "wkb_main",
            x,
            format!("open interval (-{0}, {0}) away from the turning point", p.lambda),
        ));
    }
    let phi = phase(n, x)?;
    let amp = (p.lambda_sq() - x * x).powf(-0.25);
    let (h0, dh0) = hermite_center(n);
    let sl = p.lambda.sqrt();
    Ok(amp * (sl * h0 * phi.cos() + dh0 / sl * phi.sin()))
}

/// Simplified asymptotic form:
/// `(-1)^p/(√π p^{1/4}) cos φ_{2p}(x)` for `n = 2p`, and the same amplitude
/// with `sin φ_{2p+1}(x)` for `n = 2p+1`.
///
/// The caller is responsible for the regime (`n ≥ 2x²`) in which the
/// corresponding envelope holds.
pub fn wkb_simplified(n: usize, x: f64) -> Result<f64> {
    if n < 2 {
        return Err(domain("wkb_simplified", n as f64, "n >= 2"));
    }
    let p = n / 2;
    let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
    let amp = sign / (PI.sqrt() * (p as f64).powf(0.25));
    let phi = phase(n, x)?;
    Ok(if n.is_multiple_of(2) {
        amp * phi.cos()
    } else {
        amp * phi.sin()
    })
}

/// Which of the error statements to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeForm {
    /// `|E_n(x)| ≤ (5/4)(λ/(λ²-x²))^{5/2}` for `|x| ≤ T < λ`.
    Full,
    /// Uniform and Lipschitz bounds for `|x| ≤ T ≤ λ/2`.
    HalfDisk,
    /// Bounds on the error of [`wkb_simplified`] for `|x| ≤ T ≤ λ/2`.
    Simplified,
}

/// Sup and (when available) Lipschitz bounds of an error term on `[-T, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WkbEnvelope {
    pub n: usize,
    pub t: f64,
    pub form: EnvelopeForm,
    pub sup_bound: f64,
    pub lipschitz_bound: Option<f64>,
}

/// Error envelopes of the WKB approximations on `[-T, T]`.
pub fn error_envelopes(n: usize, t: f64, form: EnvelopeForm) -> Result<WkbEnvelope> {
    let p = PhaseParams::new(n);
    let l2 = p.lambda_sq();
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain("error_envelopes", t, "T > 0"));
    }
    let (sup_bound, lipschitz_bound) = match form {
        EnvelopeForm::Full => {
            if t >= p.lambda {
                return Err(regime(
                    "error_envelopes",
                    format!("T = {t} must stay below λ = {}", p.lambda),
                ));
            }
            (1.25 * (p.lambda / (l2 - t * t)).powf(2.5), None)
        }
        EnvelopeForm::HalfDisk | EnvelopeForm::Simplified if t > 0.5 * p.lambda => {
            return Err(regime(
                "error_envelopes",
                format!("T = {t} exceeds λ/2 = {}", 0.5 * p.lambda),
            ));
        }
        EnvelopeForm::HalfDisk => (2.0 / (l2 * p.lambda), Some(7.0 / p.lambda.powf(2.5))),
        EnvelopeForm::Simplified => {
            let t2 = t * t;
            (3.0 * t2 / l2.powf(1.25), Some(8.0 * t2 / l2.powf(0.75)))
        }
    };
    Ok(WkbEnvelope {
        n,
        t,
        form,
        sup_bound,
        lipschitz_bound,
    })
}

/// One inequality: a computed left-hand side and the bound it must respect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inequality {
    pub lhs: f64,
    pub rhs: f64,
}

impl Inequality {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

/// Phase increment inequalities between `φ_n` and `φ_{n+1}` on `[-T, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseIncrementReport {
    /// `|φ_{n+1}(x) − φ_n(x)| ≤ 3T/√(2n+1)`.
    pub increment: Inequality,
    /// `|φ_{n+1}(x) − φ_{n+1}(y) − φ_n(x) + φ_n(y)| ≤ 3|x−y|/√(2n+1)`.
    pub increment_lipschitz: Inequality,
    /// `|φ_{n+1}(x) − φ_n(x) + φ_{n+1}(y) − φ_n(y)| ≤ 5T/√(2n+1)`.
    pub increment_sum: Inequality,
    /// `|φ_{n+1}(x)+φ_n(x)−φ_{n+1}(y)−φ_n(y) − (√(2n+1)+√(2n+3))(x−y)| ≤ T²|x−y|/√(2n+1)`.
    pub sum_linearization: Inequality,
    /// `|φ_n(x) − φ_n(y)| ≤ (5/4)√(2n+1)|x−y|`.
    pub lipschitz: Inequality,
}

impl PhaseIncrementReport {
    pub fn all(&self) -> [Inequality; 5] {
        [
            self.increment,
            self.increment_lipschitz,
            self.increment_sum,
            self.sum_linearization,
            self.lipschitz,
        ]
    }

    pub fn all_hold(&self) -> bool {
        self.all().iter().all(Inequality::holds)
    }
}

/// Evaluates the phase increment inequalities at `(x, y)`.
pub fn phase_increment_report(n: usize, t: f64, x: f64, y: f64) -> Result<PhaseIncrementReport> {
    let l = lambda_sq(n).sqrt();
    if !(t > 0.0) || t > 0.5 * l {
        return Err(regime(
            "phase_increment_report",
            format!("need 0 < T <= λ/2 = {}", 0.5 * l),
        ));
    }
    if x.abs() > t || y.abs() > t {
        return Err(regime(
            "phase_increment_report",
            format!("|x|, |y| must not exceed T = {t}"),
        ));
    }
    let (a0, a1) = (phase(n, x)?, phase(n + 1, x)?);
    let (b0, b1) = (phase(n, y)?, phase(n + 1, y)?);
    let dxy = (x - y).abs();
    let l_next = lambda_sq(n + 1).sqrt();
    Ok(PhaseIncrementReport {
        increment: Inequality {
            lhs: (a1 - a0).abs(),
            rhs: 3.0 * t / l,
        },
        increment_lipschitz: Inequality {
            lhs: (a1 - b1 - a0 + b0).abs(),
            rhs: 3.0 / l * dxy,
        },
        increment_sum: Inequality {
            lhs: (a1 - a0 + b1 - b0).abs(),
            rhs: 5.0 * t / l,
        },
        sum_linearization: Inequality {
            lhs: (a1 + a0 - b1 - b0 - (l + l_next) * (x - y)).abs(),
            rhs: t * t / l * dxy,
        },
        lipschitz: Inequality {
            lhs: (a0 - b0).abs(),
            rhs: 1.25 * l * dxy,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::hermite_function;
    use crate::quadrature::integrate_interval;
    use approx::assert_relative_eq;

    #[test]
    fn phase_is_odd_and_vanishes_at_zero() {
        assert_eq!(phase(7, 0.0).unwrap(), 0.0);
        assert_relative_eq!(phase(7, 1.3).unwrap(), -phase(7, -1.3).unwrap(), epsilon = 1e-15);
    }

    #[test]
    fn phase_at_turning_point_is_quarter_disc() {
        for n in [0usize, 3, 40] {
            let l = (2.0 * n as f64 + 1.0).sqrt();
            assert_relative_eq!(
                phase(n, l).unwrap(),
                PI / 4.0 * (2 * n + 1) as f64,
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn phase_matches_its_defining_integral() {
        let q = integrate_interval(|t: f64| (17.0 - t * t).sqrt(), 0.0, 1.0, 30).unwrap();
        assert_relative_eq!(phase(8, 1.0).unwrap(), q, epsilon = 1e-12);
    }

    #[test]
    fn phase_rejects_points_beyond_turning_point() {
        assert!(phase(4, 3.01).is_err());
    }

    #[test]
    fn main_term_at_origin() {
        let (h0, _) = hermite_center(10);
        assert_relative_eq!(wkb_main(10, 0.0).unwrap(), h0, max_relative = 1e-14);
        assert_eq!(wkb_main(11, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn main_term_within_half_disk_envelope() {
        let lambda = 101f64.sqrt();
        let err = (wkb_main(50, 1.0).unwrap() - hermite_function(50, 1.0).unwrap()).abs();
        assert!(err <= 2.0 / lambda.powi(3), "err = {err}");
    }

    #[test]
    fn main_term_refuses_turning_point() {
        assert!(wkb_main(4, 3.0).is_err());
        assert!(wkb_main(4, -3.0).is_err());
    }

    #[test]
    fn simplified_at_origin() {
        let p = 5usize;
        let expected = -1.0 / (PI.sqrt() * (p as f64).powf(0.25));
        assert_relative_eq!(wkb_simplified(2 * p, 0.0).unwrap(), expected, max_relative = 1e-15);
        assert_eq!(wkb_simplified(2 * p + 1, 0.0).unwrap(), 0.0);
        assert!(wkb_simplified(1, 0.0).is_err());
    }

    #[test]
    fn simplified_within_envelope() {
        let t: f64 = 2.0;
        let err = (wkb_simplified(100, 2.0).unwrap() - hermite_function(100, 2.0).unwrap()).abs();
        assert!(err <= 3.0 * t * t / 201f64.powf(1.25));
    }

    #[test]
    fn half_disk_envelope_literal_values() {
        let e = error_envelopes(12, 2.0, EnvelopeForm::HalfDisk).unwrap();
        assert_relative_eq!(e.sup_bound, 2.0 / 125.0, max_relative = 1e-15);
        assert_relative_eq!(e.lipschitz_bound.unwrap(), 7.0 / 5f64.powf(2.5), max_relative = 1e-15);
    }

    #[test]
    fn simplified_envelope_vanishes_with_t() {
        let e = error_envelopes(50, 1e-12, EnvelopeForm::Simplified).unwrap();
        assert!(e.sup_bound < 1e-24 && e.lipschitz_bound.unwrap() < 1e-22);
    }

    #[test]
    fn envelopes_decrease_when_n_doubles() {
        for form in [EnvelopeForm::Full, EnvelopeForm::HalfDisk, EnvelopeForm::Simplified] {
            let a = error_envelopes(40, 2.0, form).unwrap();
            let b = error_envelopes(80, 2.0, form).unwrap();
            assert!(b.sup_bound < a.sup_bound);
        }
        assert!(error_envelopes(40, 2.0, EnvelopeForm::Full)
            .unwrap()
            .lipschitz_bound
            .is_none());
    }

    #[test]
    fn envelopes_enforce_regime() {
        assert!(error_envelopes(4, 2.0, EnvelopeForm::HalfDisk).is_err());
        assert!(error_envelopes(4, 3.0, EnvelopeForm::Full).is_err());
        assert!(error_envelopes(4, 2.9, EnvelopeForm::Full).is_ok());
    }

    #[test]
    fn phase_increment_report_holds_at_sample() {
        let r = phase_increment_report(200, 5.0, 3.0, -2.0).unwrap();
        assert!(r.all_hold(), "{r:?}");
        let same = phase_increment_report(200, 5.0, 1.0, 1.0).unwrap();
        assert_eq!(same.increment_lipschitz.lhs, 0.0);
    }

    #[test]
    fn deviation_is_small_on_half_disk() {
        let n = 200;
        let t = 5.0f64;
        let lambda = 401f64.sqrt();
        assert!(phase_deviation(n, t).unwrap().abs() <= t.powi(3) / (3.0 * lambda));
    }
}
