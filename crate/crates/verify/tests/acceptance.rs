//! One line per acceptance criterion, `PASS` or `FAIL` with the measured
//! detail. The process exits nonzero when any criterion fails.

use std::f64::consts::{E, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bandlim::concentration::Signal;
use bandlim::kernels::{residual_bounds, residual_scan};
use bandlim::orthopoly::hermite_function;
use bandlim::projections::{
    bound_chebyshev_coeff, bound_chebyshev_tail, bound_legendre_coeff, bound_legendre_tail, chebyshev_inner_products,
    chebyshev_tail_spectral, error_norm, expand, legendre_inner_products, legendre_tail_spectral, Basis, NormKind,
};
use bandlim::pswf::{
    beta_bound, certified_lower_bound_piecewise, chi_bracket, default_order, lower_bound_bk, lower_bound_naz,
    plunge_index, spectrum, DISCRETIZATION_FLOOR,
};
use bandlim::wkb::{error_envelopes, wkb_main, wkb_simplified, EnvelopeForm, PhaseParams};
use bandlim_cli::{cmd_kernel_scan, AlphaSpec, ExperimentConfig, Subcommand};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_s: u64) -> bool {
    elapsed <= Duration::from_secs(limit_s)
}

fn table_reproduction() -> Verdict {
    let target = [0.067, 0.039, 0.025, 0.023, 0.022];
    let dir = tempfile::tempdir().expect("temporary directory");
    let cfg = ExperimentConfig::parse(
        "",
        Some(Subcommand::KernelScan),
        &[format!("out={}", dir.path().display())],
    )
    .expect("default kernel-scan config");
    let start = Instant::now();
    let rows = match cmd_kernel_scan(&cfg) {
        Ok(o) => o.rows,
        Err(e) => return verdict(false, e.to_string()),
    };
    let elapsed = start.elapsed();
    let got: Vec<f64> = rows.iter().map(|r| r.scan.e_tilde).collect();
    let ok = got.len() == target.len() && got.iter().zip(target).all(|(g, t)| (g - t).abs() <= 0.005);
    let shown: Vec<String> = got.iter().map(|v| format!("{v:.4}")).collect();
    verdict(
        ok && within(elapsed, 60),
        format!("E_tilde = [{}], {:.2?}", shown.join(", "), elapsed),
    )
}

fn wkb_envelopes() -> Verdict {
    let start = Instant::now();
    let (mut checked, mut violations) = (0usize, 0usize);
    let mut tally = |err: f64, bound: f64| {
        checked += 1;
        if err > bound {
            violations += 1;
        }
    };
    let t = 2.0;
    for n in (10..=400).step_by(10) {
        let half = 0.5 * PhaseParams::new(n).lambda;
        let main = error_envelopes(n, half, EnvelopeForm::HalfDisk).expect("half-disk regime");
        let simple = error_envelopes(n, t, EnvelopeForm::Simplified).expect("simplified regime");
        for i in 0..201 {
            let x = -half + i as f64 * half / 100.0;
            let h = hermite_function(n, x).expect("hermite");
            tally((h - wkb_main(n, x).expect("main term")).abs(), main.sup_bound);
            if x.abs() <= t {
                tally(
                    (h - wkb_simplified(n, x).expect("simplified term")).abs(),
                    simple.sup_bound,
                );
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        violations == 0 && within(elapsed, 30),
        format!("{violations} violations in {checked} checks, {elapsed:.2?}"),
    )
}

fn kernel_bounds() -> Verdict {
    let (mut checked, mut violations) = (0usize, 0usize);
    for t in [1.0, 2.0] {
        for n in (10..=100).step_by(10) {
            let Ok((uniform, hs)) = residual_bounds(n, t) else {
                continue;
            };
            let scan = match residual_scan(n, t, 80) {
                Ok(s) => s,
                Err(e) => return verdict(false, e.to_string()),
            };
            checked += 1;
            if scan.e_tilde > uniform || scan.hs_norm > hs {
                violations += 1;
            }
        }
    }
    verdict(
        violations == 0,
        format!("{violations} violations in {checked} (T, n) pairs"),
    )
}

fn coefficient_bounds() -> Verdict {
    let start = Instant::now();
    let mut parts = vec![];
    let mut total = 0usize;
    for c in [10.0, 50.0] {
        let f = Signal::sinc(c).expect("catalog signal");
        let first = (E * c / 2.0).ceil() as usize + 1;
        let last = (E * c / 2.0).ceil() as usize + 60;
        let leg = legendre_inner_products(&f, last).expect("legendre");
        let cheb = chebyshev_inner_products(&f, last).expect("chebyshev");
        let leg_bad = (first..=last)
            .filter(|&k| leg[k].abs() > bound_legendre_coeff(c, k) * f.l2_norm)
            .count();
        let cheb_bad: Vec<usize> = (first..=last)
            .filter(|&k| cheb[k].abs() > bound_chebyshev_coeff(c, k) * f.l2_norm)
            .collect();
        let worst = cheb_bad
            .iter()
            .map(|&k| cheb[k].abs() / (bound_chebyshev_coeff(c, k) * f.l2_norm))
            .fold(0.0, f64::max);
        total += leg_bad + cheb_bad.len();
        parts.push(match (cheb_bad.first(), cheb_bad.last()) {
            (Some(a), Some(b)) => format!(
                "c={c}: legendre {leg_bad}, chebyshev {} (k={a}..{b}, worst ratio {worst:.3})",
                cheb_bad.len()
            ),
            _ => format!("c={c}: legendre {leg_bad}, chebyshev 0"),
        });
    }
    let elapsed = start.elapsed();
    verdict(
        total == 0 && within(elapsed, 20),
        format!("violations by family: {}; {elapsed:.2?}", parts.join("; ")),
    )
}

fn tail_bounds() -> Verdict {
    let c = 10.0;
    let f = Signal::sinc(c).expect("catalog signal");
    let start = (5.0 * E).ceil() as usize;
    let (mut leg_bad, mut cheb_bad) = (0usize, 0usize);
    for n in start..=start + 20 {
        let leg = legendre_tail_spectral(&f, n).expect("legendre tail") / f.l2_norm;
        if leg > bound_legendre_tail(c, n, NormKind::L2).expect("tail regime") {
            leg_bad += 1;
        }
        let cheb = chebyshev_tail_spectral(&f, n).expect("chebyshev tail") / f.l2_norm;
        if cheb > bound_chebyshev_tail(c, n).expect("tail regime") {
            cheb_bad += 1;
        }
    }
    verdict(
        leg_bad + cheb_bad == 0,
        format!(
            "N={start}..{}: legendre {leg_bad}, chebyshev {cheb_bad} violations",
            start + 20
        ),
    )
}

fn pswf_sandwich() -> Verdict {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = vec![];
    for c in [2.0, 5.0, 10.0] {
        let s = match spectrum(c, default_order(c)) {
            Ok(s) => s,
            Err(e) => return verdict(false, format!("c={c}: {e}")),
        };
        let target = 2.0 * c / PI;
        let trace_err = (s.trace() - target).abs() / target;
        let m = plunge_index(c);
        let plunge = (m == 0 || s.lambdas[m - 1] >= 0.5) && s.lambdas[m + 1] <= 0.5;
        let mut analytic_bad = 0usize;
        for n in 0..s.k {
            for b in [lower_bound_naz(n, c), lower_bound_bk(n, c)].into_iter().flatten() {
                let lambda = s.lambdas[b.index];
                if lambda > 1e-12 && b.value > lambda {
                    analytic_bad += 1;
                }
            }
        }
        let (mut piecewise_bad, mut skipped) = (0usize, 0usize);
        for dim in 1..=12 {
            let b = certified_lower_bound_piecewise(dim, c).expect("piecewise bound");
            let lambda = s.lambdas[b.index];
            if lambda <= DISCRETIZATION_FLOOR {
                skipped += 1;
            } else if b.value > lambda {
                piecewise_bad += 1;
            }
        }
        let mut beta_bad = 0usize;
        for n in 0..=(2.0 * c / PI).ceil() as usize + 6 {
            for k in 0..=40.min(s.k - 1) {
                if s.beta[(k, n)].abs() > beta_bound(n, k, c) {
                    beta_bad += 1;
                }
            }
        }
        ok &= trace_err <= 1e-6 && plunge && analytic_bad + piecewise_bad + beta_bad == 0;
        parts.push(format!(
            "c={c}: trace err {trace_err:.1e}, plunge {plunge}, naz/bk {analytic_bad}, piecewise {piecewise_bad} ({skipped} below floor), beta {beta_bad}"
        ));
    }
    let elapsed = start.elapsed();
    verdict(
        ok && within(elapsed, 120),
        format!("{}; {elapsed:.2?}", parts.join("; ")),
    )
}

fn hermite_scaling() -> Verdict {
    let f = Signal::indicator();
    let c = 100.0;
    let alpha = AlphaSpec::InverseSqrt.resolve(c);
    let err = |basis: Basis, n: usize| -> f64 {
        let e = expand(&f, basis, n).expect("expansion");
        error_norm(&f, &e, (-1.0, 1.0), NormKind::L2, 0).expect("error norm")
    };
    let (u40, u80) = (err(Basis::Hermite, 40), err(Basis::Hermite, 80));
    let (s40, s80) = (
        err(Basis::ScaledHermite { alpha }, 40),
        err(Basis::ScaledHermite { alpha }, 80),
    );
    verdict(
        s40 < u40 && u80 < u40 && s80 < s40,
        format!("alpha={alpha}: scaled {s40:.4} -> {s80:.4}, unscaled {u40:.4} -> {u80:.4}"),
    )
}

fn chi_brackets() -> Verdict {
    let c = 5.0;
    let s = match spectrum(c, default_order(c)) {
        Ok(s) => s,
        Err(e) => return verdict(false, e.to_string()),
    };
    let mut bad = vec![];
    for n in 0..=15 {
        match chi_bracket(n, c, Some(&s)).map(|b| b.contains_rayleigh()) {
            Ok(Some(true)) => {}
            other => bad.push(format!("n={n}: {other:?}")),
        }
    }
    if bad.is_empty() {
        verdict(true, "0 violations for n = 0..=15")
    } else {
        verdict(false, format!("{} violations: {}", bad.len(), bad.join(", ")))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 kernel-scan table", table_reproduction),
        ("2 wkb envelopes", wkb_envelopes),
        ("3 kernel bounds", kernel_bounds),
        ("4 coefficient bounds", coefficient_bounds),
        ("5 tail bounds", tail_bounds),
        ("6 pswf sandwich", pswf_sandwich),
        ("7 scaled hermite", hermite_scaling),
        ("8 chi bracket", chi_brackets),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let v = check();
        println!(
            "{} criterion {name}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
