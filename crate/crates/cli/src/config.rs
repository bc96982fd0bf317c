//! Experiment configuration as a plain `key=value` text file.
//!
//! Blank lines and lines starting with `#` are ignored. Every key may appear
//! at most once; keys not given take the defaults of the subcommand, which
//! mirror the published experiments.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use bandlim::concentration::Signal;

use crate::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    KernelScan,
    Project,
    CoeffDecay,
    Pswf,
    RunAll,
}

impl Subcommand {
    pub const ALL: [Subcommand; 5] = [
        Subcommand::KernelScan,
        Subcommand::Project,
        Subcommand::CoeffDecay,
        Subcommand::Pswf,
        Subcommand::RunAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::KernelScan => "kernel-scan",
            Subcommand::Project => "project",
            Subcommand::CoeffDecay => "coeff-decay",
            Subcommand::Pswf => "pswf",
            Subcommand::RunAll => "run-all",
        }
    }
}

impl FromStr for Subcommand {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown subcommand {s:?}"))
    }
}

/// Expansion families selectable from a config.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisChoice {
    Hermite,
    /// Scaled Hermite functions, one run per entry of the `alpha` list.
    ScaledHermite,
    Legendre,
    Chebyshev,
}

impl BasisChoice {
    pub fn name(self) -> &'static str {
        match self {
            BasisChoice::Hermite => "hermite",
            BasisChoice::ScaledHermite => "scaled-hermite",
            BasisChoice::Legendre => "legendre",
            BasisChoice::Chebyshev => "chebyshev",
        }
    }
}

impl FromStr for BasisChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [
            BasisChoice::Hermite,
            BasisChoice::ScaledHermite,
            BasisChoice::Legendre,
            BasisChoice::Chebyshev,
        ]
        .into_iter()
        .find(|b| b.name() == s)
        .ok_or_else(|| format!("unknown basis {s:?}"))
    }
}

/// How the Hermite scale `α` is derived from the bandwidth `c`.
///
/// A scaled run labelled by `c` admits three readings: `α = 1/√c`, `α = c`
/// and `α = 1/c`. Only the first compresses the basis onto the support of
/// the indicator while keeping its band wide enough, and it is the one the
/// comparison with the unscaled basis uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaSpec {
    InverseSqrt,
    Bandwidth,
    Inverse,
    Value(f64),
}

impl AlphaSpec {
    pub fn resolve(self, c: f64) -> f64 {
        match self {
            AlphaSpec::InverseSqrt => 1.0 / c.sqrt(),
            AlphaSpec::Bandwidth => c,
            AlphaSpec::Inverse => 1.0 / c,
            AlphaSpec::Value(a) => a,
        }
    }
}

impl fmt::Display for AlphaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaSpec::InverseSqrt => f.write_str("inverse-sqrt"),
            AlphaSpec::Bandwidth => f.write_str("c"),
            AlphaSpec::Inverse => f.write_str("inverse"),
            AlphaSpec::Value(a) => write!(f, "{a}"),
        }
    }
}

impl FromStr for AlphaSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "inverse-sqrt" => Ok(AlphaSpec::InverseSqrt),
            "c" => Ok(AlphaSpec::Bandwidth),
            "inverse" => Ok(AlphaSpec::Inverse),
            _ => {
                let a: f64 = s.parse().map_err(|_| format!("invalid alpha {s:?}"))?;
                if a > 0.0 && a.is_finite() {
                    Ok(AlphaSpec::Value(a))
                } else {
                    Err(format!("alpha {s} must be positive and finite"))
                }
            }
        }
    }
}

/// Everything one subcommand run depends on.
///
/// The meaning of `orders` and `grid_m` depends on the subcommand:
/// - `kernel-scan`: degrees `n`; grid points per axis.
/// - `project`: truncation orders; points of the pointwise output grid.
/// - `coeff-decay`: explicit indices `k` (empty for the default window);
///   `grid_m` unused.
/// - `pswf`: Galerkin order `K` (empty for the default); number of random
///   points for the integral-equation residual, drawn from `seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub subcommand: Subcommand,
    pub signals: Vec<String>,
    pub bases: Vec<BasisChoice>,
    pub orders: Vec<usize>,
    pub c: Vec<f64>,
    pub t: f64,
    /// Band limit for error budgets; chosen per run when absent.
    pub omega: Option<f64>,
    pub alpha: Vec<AlphaSpec>,
    pub grid_m: usize,
    pub out: PathBuf,
    pub seed: u64,
}

const KEYS: [&str; 11] = [
    "subcommand",
    "signals",
    "bases",
    "orders",
    "c",
    "t",
    "omega",
    "alpha",
    "grid_m",
    "out",
    "seed",
];

impl ExperimentConfig {
    pub fn defaults(subcommand: Subcommand) -> Self {
        let base = Self {
            subcommand,
            signals: vec![],
            bases: vec![],
            orders: vec![],
            c: vec![],
            t: 1.0,
            omega: None,
            alpha: vec![],
            grid_m: 80,
            out: PathBuf::from("results"),
            seed: 0,
        };
        match subcommand {
            Subcommand::KernelScan | Subcommand::RunAll => Self {
                orders: vec![10, 25, 50, 75, 100],
                ..base
            },
            Subcommand::Project => Self {
                signals: vec!["indicator".into()],
                bases: vec![BasisChoice::Hermite, BasisChoice::ScaledHermite],
                orders: vec![40, 80],
                c: vec![100.0],
                alpha: vec![AlphaSpec::InverseSqrt, AlphaSpec::Bandwidth, AlphaSpec::Inverse],
                grid_m: 2001,
                ..base
            },
            Subcommand::CoeffDecay => Self {
                signals: vec![],
                c: vec![10.0, 50.0],
                ..base
            },
            Subcommand::Pswf => Self {
                c: vec![2.0, 5.0, 10.0],
                grid_m: 16,
                seed: 2024,
                ..base
            },
        }
    }

    /// The Legendre and Chebyshev runs on the indicator and the hat.
    pub fn sobolev_defaults() -> Self {
        Self {
            signals: vec!["indicator".into(), "hat".into()],
            bases: vec![BasisChoice::Legendre, BasisChoice::Chebyshev],
            orders: vec![50],
            c: vec![],
            alpha: vec![],
            ..Self::defaults(Subcommand::Project)
        }
    }

    /// Parses a config file. `fallback` names the subcommand when the file
    /// does not; a file naming a different one is rejected. `overrides` are
    /// `key=value` pairs applied after the file and reported as line 0.
    pub fn parse(text: &str, fallback: Option<Subcommand>, overrides: &[String]) -> Result<Self, ConfigError> {
        let mut entries = parse_pairs(text)?;
        for o in overrides {
            match split_pair(o) {
                Some((k, v)) if KEYS.contains(&k) => {
                    entries.insert(k.to_string(), (0, v.to_string()));
                }
                _ => return Err(ConfigError::Override(o.clone())),
            }
        }
        let subcommand = match (entries.get("subcommand"), fallback) {
            (Some((line, v)), fallback) => {
                let s: Subcommand = v.parse().map_err(|m| ConfigError::at(*line, m))?;
                if let Some(f) = fallback {
                    if f != s {
                        return Err(ConfigError::at(
                            *line,
                            format!("config is for {} but {} was requested", s.name(), f.name()),
                        ));
                    }
                }
                s
            }
            (None, Some(f)) => f,
            (None, None) => return Err(ConfigError::at(0, "no subcommand given")),
        };
        let mut cfg = Self::defaults(subcommand);
        for (key, (line, value)) in &entries {
            let line = *line;
            let err = |m: String| ConfigError::at(line, format!("{key}: {m}"));
            match key.as_str() {
                "subcommand" => {}
                "signals" => cfg.signals = list(value, |s| Ok(s.to_string())).map_err(err)?,
                "bases" => cfg.bases = list(value, str::parse).map_err(err)?,
                "orders" => {
                    cfg.orders = list(value, |s| s.parse().map_err(|_| format!("invalid order {s:?}"))).map_err(err)?
                }
                "c" => cfg.c = list(value, parse_real).map_err(err)?,
                "t" => cfg.t = parse_real(value).map_err(err)?,
                "omega" => {
                    cfg.omega = if value.is_empty() {
                        None
                    } else {
                        Some(parse_real(value).map_err(err)?)
                    }
                }
                "alpha" => cfg.alpha = list(value, str::parse).map_err(err)?,
                "grid_m" => cfg.grid_m = value.parse().map_err(|_| err(format!("invalid count {value:?}")))?,
                "out" => cfg.out = PathBuf::from(value),
                "seed" => cfg.seed = value.parse().map_err(|_| err(format!("invalid seed {value:?}")))?,
                _ => unreachable!("keys are checked while parsing"),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks the invariants each subcommand relies on.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Invalid(m));
        if !(self.t > 0.0 && self.t.is_finite()) {
            return bad(format!("t = {} must be positive", self.t));
        }
        if let Some(o) = self.omega {
            if !(o > 0.0 && o.is_finite()) {
                return bad(format!("omega = {o} must be positive"));
            }
        }
        if let Some(c) = self.c.iter().find(|c| !(**c > 0.0 && c.is_finite())) {
            return bad(format!("c = {c} must be positive"));
        }
        for s in &self.signals {
            if let Err(e) = Signal::from_spec(s) {
                return bad(e.to_string());
            }
        }
        match self.subcommand {
            Subcommand::KernelScan => {
                if self.orders.is_empty() {
                    return bad("kernel-scan needs a nonempty list of orders".into());
                }
                if self.grid_m < 2 {
                    return bad(format!("grid_m = {} must be at least 2", self.grid_m));
                }
            }
            Subcommand::Project => {
                if self.signals.is_empty() || self.bases.is_empty() || self.orders.is_empty() {
                    return bad("project needs signals, bases and orders".into());
                }
                if self.grid_m < 2 {
                    return bad(format!("grid_m = {} must be at least 2", self.grid_m));
                }
                if self.bases.contains(&BasisChoice::ScaledHermite) && (self.c.is_empty() || self.alpha.is_empty()) {
                    return bad("scaled-hermite needs c and alpha".into());
                }
            }
            Subcommand::CoeffDecay | Subcommand::Pswf => {
                if self.c.is_empty() {
                    return bad(format!("{} needs at least one c", self.subcommand.name()));
                }
                if self.subcommand == Subcommand::Pswf && self.orders.len() > 1 {
                    return bad("pswf takes at most one Galerkin order".into());
                }
            }
            Subcommand::RunAll => {}
        }
        Ok(())
    }

    /// Serializes every key in a fixed order; [`ExperimentConfig::parse`]
    /// reads it back to an equal value.
    pub fn to_text(&self) -> String {
        fn join<T: ToString>(v: &[T]) -> String {
            v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
        }
        let values = [
            self.subcommand.name().to_string(),
            self.signals.join(","),
            self.bases.iter().map(|b| b.name()).collect::<Vec<_>>().join(","),
            join(&self.orders),
            join(&self.c),
            self.t.to_string(),
            self.omega.map(|o| o.to_string()).unwrap_or_default(),
            join(&self.alpha),
            self.grid_m.to_string(),
            self.out.display().to_string(),
            self.seed.to_string(),
        ];
        KEYS.iter().zip(values).map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

fn split_pair(line: &str) -> Option<(&str, &str)> {
    line.split_once('=').map(|(k, v)| (k.trim(), v.trim()))
}

fn check_key(key: &str, line: usize) -> Result<(), ConfigError> {
    if KEYS.contains(&key) {
        Ok(())
    } else {
        Err(ConfigError::at(line, format!("unknown key {key:?}")))
    }
}

/// Collects `key → (line, value)`, rejecting malformed lines and repeats.
fn parse_pairs(text: &str) -> Result<BTreeMap<String, (usize, String)>, ConfigError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (k, v) = split_pair(trimmed).ok_or_else(|| ConfigError::at(line, "expected key=value"))?;
        check_key(k, line)?;
        if out.insert(k.to_string(), (line, v.to_string())).is_some() {
            return Err(ConfigError::at(line, format!("duplicate key {k:?}")));
        }
    }
    Ok(out)
}

fn list<T>(value: &str, item: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    if value.is_empty() {
        return Ok(vec![]);
    }
    value.split(',').map(|s| item(s.trim())).collect()
}

fn parse_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("invalid number {s:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_for_every_subcommand() {
        for s in Subcommand::ALL {
            let cfg = ExperimentConfig::defaults(s);
            let back = ExperimentConfig::parse(&cfg.to_text(), None, &[]).unwrap();
            assert_eq!(back, cfg, "{}", s.name());
        }
        let sob = ExperimentConfig::sobolev_defaults();
        assert_eq!(ExperimentConfig::parse(&sob.to_text(), None, &[]).unwrap(), sob);
    }

    #[test]
    fn comments_blank_lines_and_overrides() {
        let text = "# scan\n\nsubcommand = kernel-scan\norders=10, 25\n";
        let cfg = ExperimentConfig::parse(text, None, &["grid_m=40".into()]).unwrap();
        assert_eq!(cfg.orders, vec![10, 25]);
        assert_eq!(cfg.grid_m, 40);
        assert_eq!(cfg.t, 1.0);
    }

    #[test]
    fn empty_order_list_is_rejected() {
        let err = ExperimentConfig::parse("orders=\n", Some(Subcommand::KernelScan), &[]).unwrap_err();
        assert!(err.to_string().contains("nonempty"), "{err}");
    }

    #[test]
    fn malformed_lines_report_their_position() {
        for (text, line) in [("t=1\nbogus\n", 2), ("t=1\nt=2\n", 2), ("zz=1\n", 1), ("t=abc\n", 1)] {
            match ExperimentConfig::parse(text, Some(Subcommand::KernelScan), &[]) {
                Err(ConfigError::Line { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn mismatched_subcommand_is_rejected() {
        assert!(ExperimentConfig::parse("subcommand=pswf\n", Some(Subcommand::Project), &[]).is_err());
        assert!(ExperimentConfig::parse("t=1\n", None, &[]).is_err());
    }

    #[test]
    fn alpha_conventions_resolve() {
        let specs: Vec<AlphaSpec> = list("inverse-sqrt,c,inverse,0.25", str::parse).unwrap();
        let got: Vec<f64> = specs.iter().map(|a| a.resolve(100.0)).collect();
        assert_eq!(got, vec![0.1, 100.0, 0.01, 0.25]);
        assert!("-1".parse::<AlphaSpec>().is_err());
    }

    #[test]
    fn catalog_misses_are_config_errors() {
        let r = ExperimentConfig::parse("signals=square\n", Some(Subcommand::Project), &[]);
        assert!(matches!(r, Err(ConfigError::Invalid(_))));
    }
}
