//! Test signals with closed-form Fourier transforms and the time and band
//! concentration of their `L²` mass.
//!
//! The Fourier transform is normalized as
//! `f̂(ω) = (2π)^{-1/2} ∫ f(t) e^{-itω} dt`, which makes it unitary.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre_rule, integrate_panels_with, panel_breaks, uniform_breaks, QuadRule};
use crate::special::{erfc, sinc2_tail, sinc4_tail};

/// Agreement required between closed-form and quadrature norms at registration.
pub const PARSEVAL_TOLERANCE: f64 = 1e-8;

/// Tail integrand level below which numerical time tails are cut off.
const TAIL_CUTOFF: f64 = 1e-14;

/// Half-width beyond which numerical time tails are declared divergent.
const TAIL_LIMIT: f64 = 1e4;

/// Bandwidths accepted by [`Signal::sinc`]; outside it the registration
/// quadrature either leaves [`TAIL_LIMIT`] or needs too many panels.
pub const SINC_BANDWIDTH_RANGE: (f64, f64) = (1e-2, 1e4);

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A user-supplied signal without a closed-form transform.
#[derive(Clone)]
pub struct CustomSignal {
    pub eval: RealFn,
    /// Closed support interval, when compact.
    pub support: Option<(f64, f64)>,
    /// Points where the signal or its derivative jumps.
    pub breakpoints: Vec<f64>,
    /// Whether the restriction to `[-1, 1]` is square integrable against
    /// `(1-x²)^{-1/2}`.
    pub weight_integrable: bool,
}

impl fmt::Debug for CustomSignal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomSignal")
            .field("support", &self.support)
            .field("breakpoints", &self.breakpoints)
            .field("weight_integrable", &self.weight_integrable)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum Shape {
    /// `1_{[-1/2, 1/2]}`.
    Indicator,
    /// `(1-|x|) 1_{[-1, 1]}`.
    Hat,
    /// `sin(cx)/(cx)`, band limited to `[-c, c]`.
    Sinc {
        c: f64,
    },
    /// `e^{-x²/2}`, its own Fourier transform.
    Gaussian,
    Custom(CustomSignal),
}

/// A test signal together with its norm and support metadata.
#[derive(Debug, Clone)]
pub struct Signal {
    pub name: String,
    pub shape: Shape,
    pub l2_norm: f64,
    pub tags: String,
}

impl Signal {
    pub fn indicator() -> Self {
        Self::register(
            "indicator",
            Shape::Indicator,
            "jump discontinuities at ±1/2; in H^s for s < 1/2",
        )
        .expect("fixed catalog signal")
    }

    pub fn hat() -> Self {
        Self::register("hat", Shape::Hat, "Lipschitz; in H^s for s < 3/2").expect("fixed catalog signal")
    }

    /// `sin(cx)/(cx)`, for `c` within [`SINC_BANDWIDTH_RANGE`].
    pub fn sinc(c: f64) -> Result<Self> {
        let (lo, hi) = SINC_BANDWIDTH_RANGE;
        if !(lo..=hi).contains(&c) {
            return Err(Error::Signal {
                name: "sinc".into(),
                reason: format!("bandwidth c = {c} outside [{lo}, {hi}]"),
            });
        }
        Self::register(&format!("sinc:c={c}"), Shape::Sinc { c }, "band limited to [-c, c]")
    }

    pub fn gaussian() -> Self {
        Self::register("gaussian", Shape::Gaussian, "fixed point of the Fourier transform")
            .expect("fixed catalog signal")
    }

    fn register(name: &str, shape: Shape, tags: &str) -> Result<Self> {
        let l2_norm = closed_form_norm_sq(&shape).expect("catalog shape").sqrt();
        let s = Self {
            name: name.to_string(),
            shape,
            l2_norm,
            tags: tags.to_string(),
        };
        s.verify_parseval()?;
        Ok(s)
    }

    /// A signal given only pointwise; its norm is computed by quadrature.
    pub fn custom(name: &str, custom: CustomSignal) -> Result<Self> {
        let shape = Shape::Custom(custom);
        let mut s = Self {
            name: name.to_string(),
            shape,
            l2_norm: 1.0,
            tags: "custom".into(),
        };
        let norm_sq = s.mass_inside(f64::INFINITY)?;
        if !(norm_sq > 0.0) {
            return Err(Error::Signal {
                name: name.into(),
                reason: "zero norm".into(),
            });
        }
        s.l2_norm = norm_sq.sqrt();
        Ok(s)
    }

    /// Looks up a catalog signal by its command-line spelling:
    /// `indicator`, `hat`, `gaussian` or `sinc:c=<value>`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let bad = |reason: String| Error::Signal {
            name: spec.to_string(),
            reason,
        };
        let (head, params) = match spec.split_once(':') {
            Some((h, p)) => (h.trim(), Some(p.trim())),
            None => (spec, None),
        };
        match (head, params) {
            ("indicator", None) => Ok(Self::indicator()),
            ("hat", None) => Ok(Self::hat()),
            ("gaussian", None) => Ok(Self::gaussian()),
            ("sinc", Some(p)) => {
                let (k, v) = p.split_once('=').ok_or_else(|| bad("expected sinc:c=<value>".into()))?;
                if k.trim() != "c" {
                    return Err(bad(format!("unknown parameter {:?}", k.trim())));
                }
                let c: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("invalid number {:?}", v.trim())))?;
                Self::sinc(c)
            }
            ("sinc", None) => Err(bad("sinc needs a bandwidth, e.g. sinc:c=10".into())),
            (_, Some(_)) if matches!(head, "indicator" | "hat" | "gaussian") => {
                Err(bad("this signal takes no parameters".into()))
            }
            _ => Err(bad("not in the catalog (indicator, hat, sinc:c=<c>, gaussian)".into())),
        }
    }

    /// Canonical spelling accepted by [`Signal::from_spec`].
    pub fn spec(&self) -> String {
        self.name.clone()
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.shape {
            Shape::Indicator => {
                if x.abs() <= 0.5 {
                    1.0
                } else {
                    0.0
                }
            }
            Shape::Hat => (1.0 - x.abs()).max(0.0),
            Shape::Sinc { c } => {
                let u = c * x;
                if u.abs() < 1e-8 {
                    1.0 - u * u / 6.0
                } else {
                    u.sin() / u
                }
            }
            Shape::Gaussian => (-0.5 * x * x).exp(),
            Shape::Custom(cs) => (cs.eval)(x),
        }
    }

    /// Closed-form Fourier transform; `None` for custom signals.
    pub fn fourier(&self, omega: f64) -> Option<Complex64> {
        let k = 1.0 / (2.0 * PI).sqrt();
        let v = match &self.shape {
            Shape::Indicator => {
                if omega.abs() < 1e-8 {
                    k * (1.0 - omega * omega / 24.0)
                } else {
                    k * 2.0 * (0.5 * omega).sin() / omega
                }
            }
            Shape::Hat => {
                let u = 0.5 * omega;
                let r = if u.abs() < 1e-8 { 1.0 - u * u / 6.0 } else { u.sin() / u };
                k * r * r
            }
            Shape::Sinc { c } => {
                if omega.abs() < *c {
                    k * PI / c
                } else if omega.abs() == *c {
                    0.5 * k * PI / c
                } else {
                    0.0
                }
            }
            Shape::Gaussian => (-0.5 * omega * omega).exp(),
            Shape::Custom(_) => return None,
        };
        Some(Complex64::new(v, 0.0))
    }

    pub fn support(&self) -> Option<(f64, f64)> {
        match &self.shape {
            Shape::Indicator => Some((-0.5, 0.5)),
            Shape::Hat => Some((-1.0, 1.0)),
            Shape::Sinc { .. } | Shape::Gaussian => None,
            Shape::Custom(cs) => cs.support,
        }
    }

    /// Points where the signal or its derivative is discontinuous.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.shape {
            Shape::Indicator => vec![-0.5, 0.5],
            Shape::Hat => vec![-1.0, 0.0, 1.0],
            Shape::Sinc { .. } | Shape::Gaussian => Vec::new(),
            Shape::Custom(cs) => cs.breakpoints.clone(),
        }
    }

    /// Half-width of the frequency band when the signal is band limited.
    pub fn bandlimit(&self) -> Option<f64> {
        match self.shape {
            Shape::Sinc { c } => Some(c),
            _ => None,
        }
    }

    /// Whether the restriction to `[-1, 1]` lies in `L²([-1,1], (1-x²)^{-1/2}dx)`.
    pub fn weight_integrable(&self) -> bool {
        match &self.shape {
            Shape::Custom(cs) => cs.weight_integrable,
            _ => true,
        }
    }

    /// Relative `L²` mass outside `[-T, T]`: `(∫_{|t|>T}|f|²)^{1/2} / ‖f‖`.
    pub fn epsilon_time(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::InvalidArgument(format!("T = {t} must be positive")));
        }
        let eps_sq = match self.shape {
            Shape::Indicator => (1.0 - 2.0 * t).max(0.0),
            Shape::Hat => (1.0 - t).max(0.0).powi(3),
            Shape::Sinc { c } => 2.0 / PI * sinc2_tail(c * t),
            Shape::Gaussian => erfc(t),
            Shape::Custom(_) => {
                let inside = self.mass_inside(t)?;
                1.0 - inside / (self.l2_norm * self.l2_norm)
            }
        };
        Ok(eps_sq.clamp(0.0, 1.0).sqrt())
    }

    /// Relative `L²` mass of `f̂` outside `[-Ω, Ω]`.
    pub fn epsilon_band(&self, omega: f64) -> Result<f64> {
        if !(omega > 0.0) {
            return Err(Error::InvalidArgument(format!("Ω = {omega} must be positive")));
        }
        let eps_sq = match self.shape {
            Shape::Indicator => 2.0 / PI * sinc2_tail(0.5 * omega),
            Shape::Hat => 3.0 / PI * sinc4_tail(0.5 * omega),
            Shape::Sinc { c } => ((c - omega) / c).max(0.0),
            Shape::Gaussian => erfc(omega),
            Shape::Custom(_) => {
                return Err(Error::Signal {
                    name: self.name.clone(),
                    reason: "no closed-form Fourier transform".into(),
                })
            }
        };
        Ok(eps_sq.clamp(0.0, 1.0).sqrt())
    }

    /// Both concentration parameters at once.
    pub fn concentration(&self, t: f64, omega: f64) -> Result<ConcentrationReport> {
        Ok(ConcentrationReport {
            t,
            omega,
            eps_t: self.epsilon_time(t)?,
            eps_omega: self.epsilon_band(omega)?,
        })
    }

    /// An upper bound for `(∫ (1+|ω|)^{2s} |f̂(ω)|² dω)^{1/2}`.
    ///
    /// The integral is computed on `[-W, W]` and the remainder is bounded
    /// with `|sin| ≤ 1`, so the result never underestimates the norm.
    pub fn sobolev_norm_upper(&self, s: f64) -> Result<f64> {
        if !(s > 0.0 && s <= 2.0) {
            return Err(Error::InvalidArgument(format!("s = {s} outside (0, 2]")));
        }
        let not_in_space = || Error::Signal {
            name: self.name.clone(),
            reason: format!("not in H^{s}"),
        };
        const W: f64 = 200.0;
        let tail = match self.shape {
            Shape::Indicator if s >= 0.5 => return Err(not_in_space()),
            Shape::Hat if s >= 1.5 => return Err(not_in_space()),
            Shape::Sinc { c } => {
                let v = PI / (c * c) * ((1.0 + c).powf(2.0 * s + 1.0) - 1.0) / (2.0 * s + 1.0);
                return Ok(v.sqrt());
            }
            Shape::Custom(_) => {
                return Err(Error::Signal {
                    name: self.name.clone(),
                    reason: "no closed-form Fourier transform".into(),
                })
            }
            Shape::Indicator => {
                let r = ((1.0 + W) / W).powf(2.0 * s);
                4.0 / PI * r * W.powf(2.0 * s - 1.0) / (1.0 - 2.0 * s)
            }
            Shape::Hat => {
                let r = ((1.0 + W) / W).powf(2.0 * s);
                16.0 / PI * r * W.powf(2.0 * s - 3.0) / (3.0 - 2.0 * s)
            }
            Shape::Gaussian => 0.0,
        };
        let rule = gauss_legendre_rule(24)?;
        let body = integrate_panels_with(
            &rule,
            &|w: f64| {
                let fh = self.fourier(w).map(|z| z.norm_sqr()).unwrap_or(0.0);
                2.0 * (1.0 + w).powf(2.0 * s) * fh
            },
            &uniform_breaks(0.0, W, 200),
        )?;
        Ok((body + tail).sqrt())
    }

    /// `∫_{-T}^{T} |f|²` by quadrature, with `T = ∞` meaning the whole line.
    fn mass_inside(&self, t: f64) -> Result<f64> {
        let rule = gauss_legendre_rule(24)?;
        let f2 = |x: f64| {
            let v = self.eval(x);
            v * v
        };
        // Panels narrow with the bandwidth so each one holds a few oscillations.
        let width = self.bandlimit().map_or(1.0, |c| (4.0 / c).min(1.0));
        if let Some((a, b)) = self.support() {
            let (a, b) = (a.max(-t), b.min(t));
            if a >= b {
                return Ok(0.0);
            }
            let breaks = panel_breaks(a, b, &self.breakpoints(), width);
            return integrate_panels_with(&rule, &f2, &breaks);
        }
        let inner = t.min(8.0);
        let breaks = panel_breaks(-inner, inner, &self.breakpoints(), width);
        let mut total = integrate_panels_with(&rule, &f2, &breaks)?;
        let mut lo = inner;
        while lo < t {
            let hi = (lo + 2.0).min(t);
            let seg = integrate_panels_with(&rule, &f2, &panel_breaks(lo, hi, &[], width))?
                + integrate_panels_with(&rule, &f2, &panel_breaks(-hi, -lo, &[], width))?;
            total += seg;
            if t.is_infinite() && panel_peak(&rule, &f2, lo, hi) < TAIL_CUTOFF {
                break;
            }
            lo = hi;
            if lo > TAIL_LIMIT {
                return Err(Error::Signal {
                    name: self.name.clone(),
                    reason: "time tail does not decay; not square integrable".into(),
                });
            }
        }
        Ok(total)
    }

    /// Parseval check: the closed-form norm against quadrature of `|f|²`
    /// (split at `T`) and of `|f̂|²` (split at `Ω`), with each tail taken
    /// from the closed-form concentration formulas.
    pub fn verify_parseval(&self) -> Result<()> {
        let n2 = self.l2_norm * self.l2_norm;
        let (t, omega) = match self.shape {
            Shape::Sinc { c } => (40.0 / c, 1.5 * c),
            Shape::Custom(_) => return Ok(()),
            _ => (6.0, 40.0),
        };
        let time = self.mass_inside(t)? + n2 * self.epsilon_time(t)?.powi(2);
        let rule = gauss_legendre_rule(24)?;
        let mut cuts = vec![0.0];
        if let Some(c) = self.bandlimit() {
            cuts.push(c);
        }
        let band_inside = 2.0
            * integrate_panels_with(
                &rule,
                &|w: f64| self.fourier(w).map(|z| z.norm_sqr()).unwrap_or(0.0),
                &panel_breaks(0.0, omega, &cuts, 1.0),
            )?;
        let band = band_inside + n2 * self.epsilon_band(omega)?.powi(2);
        for (what, v) in [("time", time), ("frequency", band)] {
            if (v - n2).abs() > PARSEVAL_TOLERANCE * n2.max(1.0) {
                return Err(Error::Signal {
                    name: self.name.clone(),
                    reason: format!("{what}-side norm² {v} disagrees with {n2}"),
                });
            }
        }
        Ok(())
    }
}

fn panel_peak<F: Fn(f64) -> f64>(rule: &QuadRule, f: &F, lo: f64, hi: f64) -> f64 {
    rule.mapped(lo, hi)
        .chain(rule.mapped(-hi, -lo))
        .map(|(x, _)| f(x).abs())
        .fold(0.0, f64::max)
}

fn closed_form_norm_sq(shape: &Shape) -> Option<f64> {
    Some(match shape {
        Shape::Indicator => 1.0,
        Shape::Hat => 2.0 / 3.0,
        Shape::Sinc { c } => PI / c,
        Shape::Gaussian => PI.sqrt(),
        Shape::Custom(_) => return None,
    })
}

/// Time and band concentration of a signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcentrationReport {
    pub t: f64,
    pub omega: f64,
    pub eps_t: f64,
    pub eps_omega: f64,
}

/// `(1+Ω)^{-s} · ‖f‖_{H^s} / ‖f‖₂`, an upper bound for the relative band tail.
pub fn sobolev_band_bound(hs_norm: f64, l2_norm: f64, s: f64, omega: f64) -> f64 {
    (1.0 + omega).powf(-s) * hs_norm / l2_norm
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sinc_bandwidth_range_edges() {
        let (lo, hi) = SINC_BANDWIDTH_RANGE;
        assert!(Signal::sinc(lo).is_ok());
        assert!(Signal::sinc(hi).is_ok());
        assert!(Signal::sinc(50.0).is_ok());
        for bad in [0.0, -1.0, lo / 2.0, hi * 2.0, f64::NAN, f64::INFINITY] {
            assert!(Signal::sinc(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn catalog_signals_register() {
        for s in [
            Signal::indicator(),
            Signal::hat(),
            Signal::gaussian(),
            Signal::sinc(10.0).unwrap(),
        ] {
            s.verify_parseval().unwrap();
        }
    }

    #[test]
    fn indicator_is_time_limited() {
        assert_eq!(Signal::indicator().epsilon_time(0.5).unwrap(), 0.0);
        assert_eq!(Signal::hat().epsilon_time(1.0).unwrap(), 0.0);
    }

    #[test]
    fn gaussian_tails_coincide() {
        let g = Signal::gaussian();
        for t in [0.3, 1.0, 2.5] {
            assert_relative_eq!(g.epsilon_time(t).unwrap(), g.epsilon_band(t).unwrap());
        }
        assert_relative_eq!(
            g.epsilon_band(1.0).unwrap(),
            libm::erfc(1.0).sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn hat_time_tail_closed_form() {
        let t: f64 = 0.3;
        let tail = 2.0 * (1.0 - t).powi(3) / 3.0;
        let expected = (tail / (2.0 / 3.0)).sqrt();
        assert_relative_eq!(Signal::hat().epsilon_time(t).unwrap(), expected, max_relative = 1e-14);
    }

    #[test]
    fn sinc_is_band_limited() {
        let s = Signal::sinc(10.0).unwrap();
        assert_eq!(s.epsilon_band(10.0).unwrap(), 0.0);
        assert_relative_eq!(s.epsilon_band(5.0).unwrap(), 0.5f64.sqrt());
    }

    #[test]
    fn indicator_band_tail_obeys_sobolev_decay() {
        let f = Signal::indicator();
        let s = 0.49;
        let m = f.sobolev_norm_upper(s).unwrap() / f.l2_norm;
        for omega in [1.0, 10.0, 100.0, 1000.0] {
            assert!(f.epsilon_band(omega).unwrap() <= m * f64::powf(omega, -s));
        }
        assert!(f.sobolev_norm_upper(0.5).is_err());
    }

    #[test]
    fn hat_band_tail_below_sobolev_bound() {
        let f = Signal::hat();
        let hs = f.sobolev_norm_upper(1.0).unwrap();
        let bound = sobolev_band_bound(hs, f.l2_norm, 1.0, 20.0);
        assert!(f.epsilon_band(20.0).unwrap() <= bound);
    }

    #[test]
    fn sobolev_band_bound_algebra() {
        assert_eq!(sobolev_band_bound(3.0, 2.0, 0.7, 0.0), 1.5);
        let a = sobolev_band_bound(1.0, 1.0, 0.5, 3.0);
        let b = sobolev_band_bound(1.0, 1.0, 0.5, 7.0);
        assert_relative_eq!(b / a, 2f64.powf(-0.5), max_relative = 1e-15);
    }

    #[test]
    fn tails_are_monotone() {
        for f in [
            Signal::indicator(),
            Signal::hat(),
            Signal::gaussian(),
            Signal::sinc(4.0).unwrap(),
        ] {
            let mut prev_t = 2.0;
            let mut prev_w = 2.0;
            for i in 1..60 {
                let x = 0.1 * i as f64;
                let et = f.epsilon_time(x).unwrap();
                let ew = f.epsilon_band(10.0 * x).unwrap();
                assert!(et <= prev_t + 1e-15 && ew <= prev_w + 1e-15, "{} at {x}", f.name);
                prev_t = et;
                prev_w = ew;
            }
        }
    }

    #[test]
    fn spec_parsing() {
        assert!(matches!(Signal::from_spec("sinc:c=10").unwrap().shape, Shape::Sinc { c } if c == 10.0));
        assert!(matches!(Signal::from_spec(" hat ").unwrap().shape, Shape::Hat));
        for bad in [
            "",
            "sinc",
            "sinc:c=",
            "sinc:d=2",
            "sinc:c=-1",
            "hat:c=1",
            "boxcar",
            "sinc:c=nan",
        ] {
            assert!(Signal::from_spec(bad).is_err(), "{bad:?}");
        }
        let s = Signal::sinc(2.5).unwrap();
        assert_eq!(Signal::from_spec(&s.spec()).unwrap().l2_norm, s.l2_norm);
    }

    #[test]
    fn custom_signal_norm_and_time_tail() {
        let g = Signal::custom(
            "gauss-custom",
            CustomSignal {
                eval: Arc::new(|x: f64| (-0.5 * x * x).exp()),
                support: None,
                breakpoints: vec![],
                weight_integrable: true,
            },
        )
        .unwrap();
        assert_relative_eq!(g.l2_norm, PI.sqrt().sqrt(), max_relative = 1e-12);
        assert_relative_eq!(
            g.epsilon_time(1.0).unwrap(),
            libm::erfc(1.0).sqrt(),
            max_relative = 1e-9
        );
        assert!(g.epsilon_band(1.0).is_err());
    }
}
