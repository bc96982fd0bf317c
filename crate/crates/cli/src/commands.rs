//! The five subcommands. Each writes its CSV and SVG files into the
//! configured output directory and returns the rows it wrote.

use std::f64::consts::{E, PI};
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bandlim::concentration::Signal;
use bandlim::kernels::{bandwidth_n, residual_bounds, residual_scan, KernelScan};
use bandlim::projections::{
    bound_hermite, bound_legendre_almost, bound_scaled, chebyshev_inner_products, error_norm, eval_expansion, expand,
    legendre_inner_products, ln_bound_chebyshev_coeff, ln_bound_legendre_coeff, weighted_error_norm, Basis,
    ErrorBudget, LegendreScope, NormKind,
};
use bandlim::pswf::{
    beta_bound, certified_lower_bound_piecewise, chi_bracket, default_order, eigen_residual, lower_bound_bk,
    lower_bound_naz, plunge_index, spectrum, PswfSpectrum, DISCRETIZATION_FLOOR,
};

use crate::config::{AlphaSpec, BasisChoice, ExperimentConfig, Subcommand};
use crate::svg::{Plot, Series};
use crate::table::{num, opt, slug, Table};
use crate::CliError;

/// Runs the subcommand named in the config.
pub fn run(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>, CliError> {
    match cfg.subcommand {
        Subcommand::KernelScan => cmd_kernel_scan(cfg).map(|o| o.files),
        Subcommand::Project => cmd_project(cfg).map(|o| o.files),
        Subcommand::CoeffDecay => cmd_coeff_decay(cfg).map(|o| o.files),
        Subcommand::Pswf => cmd_pswf(cfg).map(|o| o.files),
        Subcommand::RunAll => run_all(&cfg.out),
    }
}

/// Rows computed by a subcommand and the files it wrote.
#[derive(Debug, Clone)]
pub struct Outcome<T> {
    pub rows: Vec<T>,
    pub files: Vec<PathBuf>,
}

fn prepare(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>, CliError> {
    cfg.validate()?;
    fs::create_dir_all(&cfg.out)?;
    let path = cfg.out.join("config.txt");
    fs::write(&path, cfg.to_text())?;
    Ok(vec![path])
}

/// One row of the kernel scan and its bounds, present when `(n, T)` lies in
/// the regime where they are stated.
#[derive(Debug, Clone)]
pub struct KernelScanRow {
    pub scan: KernelScan,
    pub bounds: Option<(f64, f64)>,
}

pub fn cmd_kernel_scan(cfg: &ExperimentConfig) -> Result<Outcome<KernelScanRow>, CliError> {
    let mut files = prepare(cfg)?;
    let mut rows = Vec::with_capacity(cfg.orders.len());
    for &n in &cfg.orders {
        let scan = residual_scan(n, cfg.t, cfg.grid_m)?;
        let bounds = residual_bounds(n, cfg.t).ok();
        rows.push(KernelScanRow { scan, bounds });
    }
    let mut table = Table::new(&[
        "n",
        "E_tilde",
        "uniform_bound",
        "hs_norm",
        "hs_bound",
        "hs_norm_refined",
        "regime_ok",
    ])
    .meta("T", cfg.t)
    .meta("grid_m", cfg.grid_m);
    for r in &rows {
        table.push(vec![
            r.scan.n.to_string(),
            num(r.scan.e_tilde),
            opt(r.bounds.map(|b| b.0)),
            num(r.scan.hs_norm),
            opt(r.bounds.map(|b| b.1)),
            num(r.scan.hs_norm_refined),
            r.scan.regime_ok.to_string(),
        ]);
    }
    files.push(table.write(&cfg.out, "kernel_scan.csv")?);
    let point = |f: &dyn Fn(&KernelScanRow) -> Option<f64>| -> Vec<(f64, f64)> {
        rows.iter().filter_map(|r| f(r).map(|v| (r.scan.n as f64, v))).collect()
    };
    let plot = Plot::new(
        format!("Kernel residual on [-{0}, {0}]²", cfg.t),
        "n",
        "max |k_n - sinc_N|",
    )
    .log_y()
    .with(Series::new("E_tilde", point(&|r| Some(r.scan.e_tilde))))
    .with(Series::new("17T²/√(2n+1)", point(&|r| r.bounds.map(|b| b.0))))
    .with(Series::new("HS norm", point(&|r| Some(r.scan.hs_norm))));
    files.push(plot.write(&cfg.out, "kernel_scan.svg")?);
    Ok(Outcome { rows, files })
}

/// One projection run.
#[derive(Debug, Clone)]
pub struct ProjectRow {
    pub signal: String,
    pub basis: Basis,
    pub alpha_spec: Option<AlphaSpec>,
    pub c: Option<f64>,
    pub order: usize,
    /// `‖f − approx‖_{L²(-1,1)}`.
    pub l2_error: f64,
    /// Maximum of `|f − approx|` over the pointwise grid on `[-1, 1]`.
    pub linf_error: f64,
    /// The weighted `L²` error, for Chebyshev runs.
    pub weighted_l2_error: Option<f64>,
    /// Theoretical budget with the relative empirical error it bounds.
    pub budget: Option<ErrorBudget>,
}

impl ProjectRow {
    fn tag(&self) -> String {
        match self.alpha_spec {
            Some(a) => format!("{}-alpha-{}", self.basis.name(), slug(&a.to_string())),
            None => self.basis.name().to_string(),
        }
    }
}

struct Variant {
    basis: Basis,
    alpha_spec: Option<AlphaSpec>,
    c: Option<f64>,
}

fn variants(cfg: &ExperimentConfig) -> Vec<Variant> {
    let plain = |basis| Variant {
        basis,
        alpha_spec: None,
        c: None,
    };
    let mut out = vec![];
    for &b in &cfg.bases {
        match b {
            BasisChoice::Hermite => out.push(plain(Basis::Hermite)),
            BasisChoice::Legendre => out.push(plain(Basis::Legendre)),
            BasisChoice::Chebyshev => out.push(plain(Basis::Chebyshev)),
            BasisChoice::ScaledHermite => {
                for &c in &cfg.c {
                    for &a in &cfg.alpha {
                        out.push(Variant {
                            basis: Basis::ScaledHermite { alpha: a.resolve(c) },
                            alpha_spec: Some(a),
                            c: Some(c),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Half-width beyond which a Hermite expansion of order `n` is negligible.
fn hermite_reach(alpha: f64, n: usize) -> f64 {
    alpha * ((2.0 * n as f64 + 3.0).sqrt() + 10.0)
}

fn budget(
    f: &Signal,
    v: &Variant,
    n: usize,
    cfg: &ExperimentConfig,
    e: &bandlim::projections::Expansion,
) -> Result<Option<ErrorBudget>, CliError> {
    let relative_global = |alpha: f64| -> Result<f64, CliError> {
        let r = hermite_reach(alpha, n).max(cfg.t).max(1.0);
        Ok(error_norm(f, e, (-r, r), NormKind::L2, 0)? / f.l2_norm)
    };
    Ok(match v.basis {
        Basis::Hermite => {
            let omega = cfg.omega.unwrap_or_else(|| bandwidth_n(n));
            let conc = f.concentration(cfg.t, omega)?;
            Some(bound_hermite(conc.eps_t, conc.eps_omega, cfg.t, omega, n).with_empirical(relative_global(1.0)?))
        }
        Basis::ScaledHermite { alpha } => {
            let c = v.c.expect("scaled runs carry c");
            let eps_t = f.epsilon_time(cfg.t)?;
            let eps_band = f.epsilon_band(c / alpha)?;
            Some(bound_scaled(eps_t, eps_band, cfg.t, alpha, c, n).with_empirical(relative_global(alpha)?))
        }
        Basis::Legendre => {
            let c = cfg.omega.unwrap_or(2.0 * n as f64 / E);
            if !(c > 0.0) {
                return Ok(None);
            }
            match bound_legendre_almost(
                c,
                n,
                f.epsilon_time(1.0)?,
                f.epsilon_band(c)?,
                LegendreScope::OnInterval,
            ) {
                Ok(b) => {
                    let empirical = error_norm(f, e, (-1.0, 1.0), NormKind::L2, 0)? / f.l2_norm;
                    Some(ErrorBudget {
                        empirical: Some(empirical),
                        theoretical: b,
                        regime_ok: true,
                        components: vec![("c".to_string(), c)],
                    })
                }
                Err(_) => None,
            }
        }
        Basis::Chebyshev => None,
    })
}

pub fn cmd_project(cfg: &ExperimentConfig) -> Result<Outcome<ProjectRow>, CliError> {
    let mut files = prepare(cfg)?;
    let mut rows = vec![];
    let step = 2.0 / (cfg.grid_m - 1) as f64;
    let grid: Vec<f64> = (0..cfg.grid_m).map(|i| (-1.0 + step * i as f64).min(1.0)).collect();
    for spec in &cfg.signals {
        let f = Signal::from_spec(spec)?;
        for v in variants(cfg) {
            let mut approx_plot = Plot::new(format!("{} in {}", f.name, v.basis.name()), "x", "value")
                .with(Series::new("f", grid.iter().map(|&x| (x, f.eval(x))).collect()));
            let mut error_plot = Plot::new(format!("Error of {} in {}", f.name, v.basis.name()), "x", "f - approx");
            for &n in &cfg.orders {
                let e = expand(&f, v.basis, n)?;
                let mut pointwise = Table::new(&["x", "f", "approx", "error"])
                    .meta("signal", &f.name)
                    .meta("basis", v.basis.name())
                    .meta("order", n);
                if let Some(a) = v.basis.alpha() {
                    pointwise = pointwise.meta("alpha", num(a));
                }
                let mut approx = Vec::with_capacity(grid.len());
                let mut linf = 0.0f64;
                for &x in &grid {
                    let (fx, ax) = (f.eval(x), eval_expansion(&e, x)?);
                    linf = linf.max((fx - ax).abs());
                    approx.push((x, ax, fx - ax));
                    pointwise.push(vec![num(x), num(fx), num(ax), num(fx - ax)]);
                }
                let row = ProjectRow {
                    signal: f.name.clone(),
                    basis: v.basis,
                    alpha_spec: v.alpha_spec,
                    c: v.c,
                    order: n,
                    l2_error: error_norm(&f, &e, (-1.0, 1.0), NormKind::L2, 0)?,
                    linf_error: linf,
                    weighted_l2_error: match v.basis {
                        Basis::Chebyshev => Some(weighted_error_norm(&f, &e)?),
                        _ => None,
                    },
                    budget: budget(&f, &v, n, cfg, &e)?,
                };
                let stem = format!("{}_{}_n{}", slug(&f.name), row.tag(), n);
                files.push(pointwise.write(&cfg.out, &format!("{stem}.csv"))?);
                let coeffs = cfg.out.join(format!("{stem}_coeffs.csv"));
                fs::write(&coeffs, e.to_csv())?;
                files.push(coeffs);
                approx_plot = approx_plot.with(Series::new(
                    format!("n = {n}"),
                    approx.iter().map(|p| (p.0, p.1)).collect(),
                ));
                error_plot = error_plot.with(Series::new(
                    format!("n = {n}"),
                    approx.iter().map(|p| (p.0, p.2)).collect(),
                ));
                rows.push(row);
            }
            let stem = format!("{}_{}", slug(&f.name), rows.last().expect("orders are nonempty").tag());
            files.push(approx_plot.write(&cfg.out, &format!("{stem}.svg"))?);
            files.push(error_plot.write(&cfg.out, &format!("{stem}_error.svg"))?);
        }
    }
    let mut summary = Table::new(&[
        "signal",
        "basis",
        "alpha_convention",
        "alpha",
        "c",
        "order",
        "l2_error",
        "linf_error",
        "weighted_l2_error",
        "relative_empirical",
        "theoretical_bound",
        "regime_ok",
        "dominated",
    ]);
    for r in &rows {
        let b = r.budget.as_ref();
        summary.push(vec![
            r.signal.clone(),
            r.basis.name().to_string(),
            r.alpha_spec.map(|a| a.to_string()).unwrap_or_default(),
            opt(r.basis.alpha()),
            opt(r.c),
            r.order.to_string(),
            num(r.l2_error),
            num(r.linf_error),
            opt(r.weighted_l2_error),
            opt(b.and_then(|b| b.empirical)),
            opt(b.map(|b| b.theoretical)),
            b.map(|b| b.regime_ok.to_string()).unwrap_or_default(),
            b.and_then(|b| b.dominated()).map(|d| d.to_string()).unwrap_or_default(),
        ]);
    }
    files.push(summary.write(&cfg.out, "project_summary.csv")?);
    Ok(Outcome { rows, files })
}

/// Measured coefficients of `sin(cx)/(cx)` against their bounds, in logs.
#[derive(Debug, Clone)]
pub struct CoeffDecayRow {
    pub c: f64,
    pub k: usize,
    pub legendre: f64,
    pub ln_legendre_bound: f64,
    pub chebyshev: f64,
    pub ln_chebyshev_bound: f64,
}

impl CoeffDecayRow {
    pub fn legendre_ok(&self) -> bool {
        self.legendre.abs().ln() <= self.ln_legendre_bound
    }

    pub fn chebyshev_ok(&self) -> bool {
        self.chebyshev.abs().ln() <= self.ln_chebyshev_bound
    }

    /// Against the stated Chebyshev bound multiplied by `√(2(k+1))`.
    pub fn chebyshev_corrected_ok(&self) -> bool {
        self.chebyshev.abs().ln() <= self.ln_chebyshev_bound + 0.5 * (2.0 * (self.k as f64 + 1.0)).ln()
    }
}

/// First index shown by default, `⌈ec/2⌉ + 1`, and the window length.
pub fn coeff_window(c: f64) -> (usize, usize) {
    ((E * c / 2.0).ceil() as usize + 1, 60)
}

pub fn cmd_coeff_decay(cfg: &ExperimentConfig) -> Result<Outcome<CoeffDecayRow>, CliError> {
    let mut files = prepare(cfg)?;
    let mut rows = vec![];
    for &c in &cfg.c {
        let f = Signal::sinc(c)?;
        let ks: Vec<usize> = if cfg.orders.is_empty() {
            let (k0, len) = coeff_window(c);
            (k0..k0 + len).collect()
        } else {
            cfg.orders.clone()
        };
        let k_max = ks.iter().copied().max().unwrap_or(0);
        let lp = legendre_inner_products(&f, k_max)?;
        let cp = chebyshev_inner_products(&f, k_max)?;
        let ln_norm = f.l2_norm.ln();
        let mut table = Table::new(&[
            "k",
            "legendre_coeff",
            "ln_abs_legendre",
            "ln_legendre_bound",
            "legendre_ok",
            "chebyshev_coeff",
            "ln_abs_chebyshev",
            "ln_chebyshev_bound",
            "chebyshev_ok",
            "chebyshev_corrected_ok",
        ])
        .meta("signal", &f.name)
        .meta("l2_norm", num(f.l2_norm));
        let first = rows.len();
        for &k in &ks {
            let r = CoeffDecayRow {
                c,
                k,
                legendre: lp[k],
                ln_legendre_bound: ln_bound_legendre_coeff(c, k) + ln_norm,
                chebyshev: cp[k],
                ln_chebyshev_bound: ln_bound_chebyshev_coeff(c, k) + ln_norm,
            };
            table.push(vec![
                k.to_string(),
                num(r.legendre),
                num(r.legendre.abs().ln()),
                num(r.ln_legendre_bound),
                r.legendre_ok().to_string(),
                num(r.chebyshev),
                num(r.chebyshev.abs().ln()),
                num(r.ln_chebyshev_bound),
                r.chebyshev_ok().to_string(),
                r.chebyshev_corrected_ok().to_string(),
            ]);
            rows.push(r);
        }
        let name = format!("coeff_decay_c{}", slug(&c.to_string()));
        files.push(table.write(&cfg.out, &format!("{name}.csv"))?);
        let mine = &rows[first..];
        let series = |label: &str, g: &dyn Fn(&CoeffDecayRow) -> f64| {
            Series::new(label, mine.iter().map(|r| (r.k as f64, g(r))).collect())
        };
        let plot = Plot::new(format!("Coefficient decay of sin({c}x)/({c}x)"), "k", "natural log")
            .with(series("ln |<f, P_k>|", &|r| r.legendre.abs().ln()))
            .with(series("ln Legendre bound", &|r| r.ln_legendre_bound))
            .with(series("ln |<f, T_k>|", &|r| r.chebyshev.abs().ln()))
            .with(series("ln Chebyshev bound", &|r| r.ln_chebyshev_bound));
        files.push(plot.write(&cfg.out, &format!("{name}.svg"))?);
    }
    Ok(Outcome { rows, files })
}

/// Largest trial-space dimension used for the piecewise-constant bound.
pub const PIECEWISE_MAX_DIM: usize = 12;

/// One eigenvalue with every lower bound that applies to it.
#[derive(Debug, Clone)]
pub struct PswfRow {
    pub c: f64,
    pub n: usize,
    pub lambda: f64,
    pub below_floor: bool,
    /// Whether the eigenvector agrees with the refined run.
    pub vector_certified: bool,
    /// Bounds certifying this index; absent outside their regimes and below
    /// the discretization floor.
    pub naz: Option<f64>,
    pub bk: Option<f64>,
    pub piecewise: Option<f64>,
    pub chi_lower: f64,
    pub chi_upper: f64,
    pub rayleigh: Option<f64>,
}

impl PswfRow {
    /// Every available bound lies below `λ_n` and the Rayleigh quotient lies
    /// in its bracket.
    pub fn sandwich_ok(&self) -> bool {
        [self.naz, self.bk, self.piecewise]
            .iter()
            .flatten()
            .all(|&b| b <= self.lambda)
            && self.rayleigh.is_none_or(|r| self.chi_lower <= r && r <= self.chi_upper)
    }
}

/// A bound whose certified index is `n`, when it has one.
fn certifying(b: bandlim::Result<bandlim::pswf::IndexedBound>, n: usize) -> Option<f64> {
    b.ok().filter(|b| b.index == n).map(|b| b.value)
}

fn pswf_rows(s: &PswfSpectrum) -> Vec<PswfRow> {
    let c = s.c;
    (0..s.k)
        .map(|n| {
            let lambda = s.lambdas[n];
            let below_floor = lambda <= DISCRETIZATION_FLOOR;
            let live = |v: Option<f64>| if below_floor { None } else { v };
            let chi = chi_bracket(n, c, Some(s));
            PswfRow {
                c,
                n,
                lambda,
                below_floor,
                vector_certified: n < s.vectors_certified,
                naz: live(certifying(lower_bound_naz(n + 1, c), n)),
                bk: live(certifying(lower_bound_bk(n, c), n)),
                piecewise: live(if n < PIECEWISE_MAX_DIM {
                    certifying(certified_lower_bound_piecewise(n + 1, c), n)
                } else {
                    None
                }),
                chi_lower: (n * (n + 1)) as f64,
                chi_upper: (n * (n + 1)) as f64 + c * c,
                rayleigh: chi.ok().and_then(|b| b.rayleigh),
            }
        })
        .collect()
}

pub fn cmd_pswf(cfg: &ExperimentConfig) -> Result<Outcome<PswfRow>, CliError> {
    let mut files = prepare(cfg)?;
    let mut rows = vec![];
    for &c in &cfg.c {
        let k = cfg.orders.first().copied().unwrap_or_else(|| default_order(c));
        let s = spectrum(c, k)?;
        let mine = pswf_rows(&s);
        let name = slug(&c.to_string());
        let mut table = Table::new(&[
            "n",
            "lambda",
            "below_floor",
            "vector_certified",
            "naz_bound",
            "bk_bound",
            "piecewise_bound",
            "chi_lower",
            "chi_upper",
            "chi_rayleigh",
            "sandwich_ok",
        ])
        .meta("c", c)
        .meta("K", k)
        .meta("certified_gap", num(s.certified_gap));
        for r in &mine {
            table.push(vec![
                r.n.to_string(),
                num(r.lambda),
                r.below_floor.to_string(),
                r.vector_certified.to_string(),
                opt(r.naz),
                opt(r.bk),
                opt(r.piecewise),
                num(r.chi_lower),
                num(r.chi_upper),
                opt(r.rayleigh),
                r.sandwich_ok().to_string(),
            ]);
        }
        let expected = 2.0 * c / PI;
        let m = plunge_index(c);
        let plunge_ok = s.lambdas[m + 1] < 0.5 && (m == 0 || s.lambdas[m - 1] > 0.5);
        table.footer = vec![
            ("trace".into(), num(s.trace())),
            ("two_c_over_pi".into(), num(expected)),
            (
                "trace_relative_error".into(),
                num((s.trace() - expected).abs() / expected),
            ),
            ("plunge_ok".into(), plunge_ok.to_string()),
        ];
        files.push(table.write(&cfg.out, &format!("pswf_c{name}.csv"))?);

        let mut header = vec!["k".to_string()];
        header.extend((0..k).map(|n| format!("n{n}")));
        let mut beta = Table {
            header,
            ..Table::default()
        }
        .meta("c", c)
        .meta("K", k);
        for j in 0..k {
            let mut row = vec![j.to_string()];
            row.extend((0..k).map(|n| num(s.beta[(j, n)])));
            beta.push(row);
        }
        files.push(beta.write(&cfg.out, &format!("pswf_beta_c{name}.csv"))?);

        let mut checks = Table::new(&["n", "k", "abs_beta", "beta_bound", "ok"]).meta("c", c);
        for n in 0..=((2.0 * c / PI).ceil() as usize + 6).min(k - 1) {
            for j in 0..=40.min(k - 1) {
                let (v, b) = (s.beta[(j, n)].abs(), beta_bound(n, j, c));
                checks.push(vec![n.to_string(), j.to_string(), num(v), num(b), (v <= b).to_string()]);
            }
        }
        files.push(checks.write(&cfg.out, &format!("pswf_beta_bound_c{name}.csv"))?);

        let seed = cfg.seed ^ c.to_bits();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points: Vec<f64> = (0..cfg.grid_m).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let mut residual = Table::new(&["n", "lambda", "max_abs_residual"])
            .meta("c", c)
            .meta("seed", seed)
            .meta("points", cfg.grid_m);
        for n in 0..s.resolved() {
            let r = eigen_residual(&s, n, &points)?;
            residual.push(vec![
                n.to_string(),
                num(s.lambdas[n]),
                num(r.iter().fold(0.0f64, |m, v| m.max(v.abs()))),
            ]);
        }
        files.push(residual.write(&cfg.out, &format!("pswf_residual_c{name}.csv"))?);
        rows.extend(mine);
    }
    Ok(Outcome { rows, files })
}

/// Every experiment at its default parameters, each in its own subdirectory.
pub fn run_all(out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut files = vec![];
    let with_out = |mut cfg: ExperimentConfig, dir: &str| {
        cfg.out = out.join(dir);
        cfg
    };
    files.extend(
        cmd_kernel_scan(&with_out(
            ExperimentConfig::defaults(Subcommand::KernelScan),
            "kernel-scan",
        ))?
        .files,
    );
    files.extend(
        cmd_project(&with_out(
            ExperimentConfig::defaults(Subcommand::Project),
            "project-hermite",
        ))?
        .files,
    );
    files.extend(
        cmd_project(&with_out(
            ExperimentConfig::sobolev_defaults(),
            "project-legendre-chebyshev",
        ))?
        .files,
    );
    files.extend(
        cmd_coeff_decay(&with_out(
            ExperimentConfig::defaults(Subcommand::CoeffDecay),
            "coeff-decay",
        ))?
        .files,
    );
    files.extend(cmd_pswf(&with_out(ExperimentConfig::defaults(Subcommand::Pswf), "pswf"))?.files);
    Ok(files)
}
