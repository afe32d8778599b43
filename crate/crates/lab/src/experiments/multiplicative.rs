use charsum_core::multfunc::{
    delta_fit, diff_ratio, gs_difference_check, halasz_bound_check, halasz_s, mean_value, r_threshold, short_sum_scan,
    FunctionSpec, MultiplicativeFunction, ShortSumResult, DEFAULT_B, DEFAULT_GRID_DENSITY, DEFAULT_HORIZON_EXP,
    DEFAULT_K,
};
use serde_json::Value;

use super::{argmax, moduli, opt_num, par_map, sample_primes};
use crate::report::num;
use crate::table::resolve_function;
use crate::{Config, LabError, Result, ScanReport};

const HALASZ_COLUMNS: [&str; 9] = ["f", "x", "T", "gamma_star", "S", "S_prime", "M_abs", "rhs", "ratio"];

fn halasz_row(f: &MultiplicativeFunction, x: f64, t: f64, density: u32, k: f64) -> Result<Vec<Value>> {
    let h = halasz_s(f, x, t, density)?;
    let m_abs = mean_value(f, x)?.abs();
    let s_prime = charsum_core::multfunc::s_prime(f, x, k)?;
    Ok(vec![
        Value::from(f.name()),
        num(x),
        num(t),
        num(h.gamma_star),
        num(h.s_value),
        num(s_prime),
        num(m_abs),
        num(h.rhs),
        num(m_abs / h.rhs),
    ])
}

pub(super) fn halasz_scan(config: &Config) -> Result<ScanReport> {
    let t = config.f64_or("t", 10.0)?;
    let density = config.u64_or("density", DEFAULT_GRID_DENSITY as u64)? as u32;
    let k = config.f64_or("k", DEFAULT_K)?;
    let mut report = ScanReport::new("halasz-scan", &HALASZ_COLUMNS);
    report.param("t", t);
    report.param("density", density);
    report.param("k", k);

    let rows = match config.get("function") {
        // one function over a grid of x
        Some(spec) => {
            let spec: FunctionSpec = spec.parse()?;
            let xs = config.f64_list_or("x", &[100.0, 1000.0, 10_000.0])?;
            report.param("function", spec.to_string());
            report.param("x", xs.clone());
            let x_max = xs.iter().fold(3.0f64, |a, &b| a.max(b)).floor() as u64;
            let f = resolve_function(&spec, x_max)?;
            par_map(&xs, |&x| halasz_row(&f, x, t, density, k))?
        }
        // Legendre symbol mod p at x = p^x_exp. At x = p the mean value is
        // exactly 0 (a full period).
        None => {
            if config.get("x").is_some() {
                return Err(LabError::Usage("`x` needs `function`".into()));
            }
            let p_min = config.u64_or("p_min", 3)?;
            let p_max = config.u64_or("p_max", 2000)?;
            let x_exp = config.f64_or("x_exp", 1.0)?;
            if !(x_exp > 0.0 && x_exp <= 1.0) {
                return Err(LabError::Usage(format!("x_exp = {x_exp}: expected a value in (0, 1]")));
            }
            report.param("p_min", p_min);
            report.param("p_max", p_max);
            report.param("x_exp", x_exp);
            let primes: Vec<u64> = moduli("primes", p_min.max(3), p_max)?;
            let rows = par_map(&primes, |&p| {
                let x = (p as f64).powf(x_exp).floor();
                if x < 3.0 {
                    return Ok(None);
                }
                let f = MultiplicativeFunction::legendre(p, p)?;
                halasz_row(&f, x, t, density, k).map(Some)
            })?;
            rows.into_iter().flatten().collect()
        }
    };
    for row in rows {
        report.push(row);
    }
    let ratios: Vec<Option<f64>> = report.rows.iter().map(|r| r[8].as_f64()).collect();
    report.summarize("count", report.rows.len() as u64);
    match argmax(ratios) {
        Some((i, v)) => {
            let f = report.rows[i][0].clone();
            report.summarize("max_ratio", num(v));
            report.summarize("max_ratio_f", f);
        }
        None => report.summarize("max_ratio", Value::Null),
    }
    // the trivial function at the largest x, as a reference point
    let x_ref = report.numbers("x").into_iter().fold(0.0f64, f64::max);
    if x_ref >= 3.0 {
        let one = MultiplicativeFunction::one(x_ref.floor() as u64)?;
        report.summarize("one_ratio", num(halasz_bound_check(&one, x_ref, t)?.ratio));
    }
    Ok(report)
}

/// `m` log-spaced points from 3 to `top`.
fn log_grid(top: f64, m: u64) -> Vec<f64> {
    if m <= 1 || top <= 3.0 {
        return vec![3.0];
    }
    let (a, b) = (3f64.ln(), top.ln());
    (0..m)
        .map(|i| (a + (b - a) * i as f64 / (m - 1) as f64).exp().min(top))
        .collect()
}

pub(super) fn diff_scan(config: &Config) -> Result<ScanReport> {
    let p_min = config.u64_or("p_min", 11)?;
    let p_max = config.u64_or("p_max", 5000)?;
    let eps1 = config.f64_or("eps1", 0.05)?;
    let b = config.f64_or("b", DEFAULT_B)?;
    let eps = config.f64_or("eps", 0.5)?;
    let grid = config.u64_or("grid", 5)?;
    let primes = moduli("primes", p_min.max(3), p_max)?;

    let mut report = ScanReport::new(
        "diff-scan",
        &[
            "f",
            "x",
            "x2",
            "diff",
            "diff_ratio",
            "gs_ratio",
            "r_value",
            "r_alternative",
            "delta",
        ],
    );
    report.param("p_min", p_min);
    report.param("p_max", p_max);
    report.param("eps1", eps1);
    report.param("b", b);
    report.param("eps", eps);
    report.param("grid", grid);

    let rows = par_map(&primes, |&p| {
        let f = MultiplicativeFunction::legendre(p, p)?;
        let xs = log_grid(p as f64, grid);
        let mut rows = Vec::new();
        for (i, &x) in xs.iter().enumerate() {
            for &x2 in &xs[i..] {
                if x2.ln() > b * x.ln() {
                    continue;
                }
                let gs = gs_difference_check(&f, x, x2)?;
                let r = r_threshold(x, x2, eps)?;
                rows.push(vec![
                    Value::from(f.name()),
                    num(x),
                    num(x2),
                    num(gs.diff),
                    num(diff_ratio(&f, x, x2, eps1, b)?),
                    num(gs.ratio),
                    num(r.value),
                    num(r.alternative),
                    num(r.delta),
                ]);
            }
        }
        Ok(rows)
    })?;
    for row in rows.into_iter().flatten() {
        report.push(row);
    }
    let max_of = |report: &ScanReport, col: &str| {
        report
            .numbers(col)
            .into_iter()
            .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))))
    };
    report.summarize("count", report.rows.len() as u64);
    report.summarize("max_diff_ratio", opt_num(max_of(&report, "diff_ratio")));
    report.summarize("max_gs_ratio", opt_num(max_of(&report, "gs_ratio")));
    Ok(report)
}

pub(super) fn delta_scan(config: &Config) -> Result<ScanReport> {
    let p_min = config.u64_or("p_min", 1000)?;
    let p_max = config.u64_or("p_max", 100_000)?;
    let samples = config.u64_or("samples", 200)?;
    let seed = config.u64_or("seed", 1)?;
    let eps = config.eps_list_or("eps", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")?;
    let horizon_exp = config.f64_or("horizon_exp", DEFAULT_HORIZON_EXP)?;
    let primes = sample_primes(p_min, p_max, samples, seed)?;

    let mut report = ScanReport::new("delta-scan", &["p", "eps", "horizon", "N0", "censored", "delta_emp"]);
    report.param("p_min", p_min);
    report.param("p_max", p_max);
    report.param("samples", samples);
    report.param("seed", seed);
    report.param("eps", eps.iter().map(|e| e.to_string()).collect::<Vec<_>>());
    report.param("horizon_exp", horizon_exp);

    let results: Vec<ShortSumResult> = par_map(&primes, |&p| Ok(short_sum_scan(&[p], &eps, horizon_exp)?))?
        .into_iter()
        .flatten()
        .collect();
    for r in &results {
        report.push(vec![
            Value::from(r.p),
            Value::from(r.eps.to_string()),
            Value::from(r.horizon),
            Value::from(r.n0),
            Value::from(r.censored),
            num(r.delta_emp),
        ]);
    }
    report.summarize("primes", primes.len() as u64);
    report.summarize("results", results.len() as u64);
    report.summarize("censored", results.iter().filter(|r| r.censored).count() as u64);
    report.summarize("monotonicity_violations", monotonicity_violations(&results));
    match delta_fit(&results) {
        Some(fit) => {
            report.summarize("fit_count", fit.count as u64);
            report.summarize("fit_slope", num(fit.slope));
            report.summarize("fit_intercept", num(fit.intercept));
            report.summarize("fit_slope_through_origin", num(fit.slope_through_origin));
        }
        None => report.summarize("fit_count", 0u64),
    }
    Ok(report)
}

/// Primes whose `N0` increases somewhere as `ε` grows.
pub fn monotonicity_violations(results: &[ShortSumResult]) -> u64 {
    let mut count = 0;
    let mut i = 0;
    while i < results.len() {
        let p = results[i].p;
        let mut block: Vec<&ShortSumResult> = results[i..].iter().take_while(|r| r.p == p).collect();
        i += block.len();
        block.sort_by_key(|r| r.eps);
        if block.windows(2).any(|w| w[1].n0 > w[0].n0) {
            count += 1;
        }
    }
    count
}
