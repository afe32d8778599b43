use charsum_core::bounds::{
    burgess_rows, general_pv_integral_ln, pv_ratio_rows, sigma2_rows, BoundProfile, FunctionalForm, PvRow, Sigma2Row,
};
use serde_json::Value;

use super::{argmax, moduli, opt_num, par_map, sample_primes};
use crate::report::num;
use crate::{Config, Result, ScanReport};

/// Default cutoff profile of the `Σ2` scan. The general default puts `a(q)`
/// above `q` for every modulus a scan can reach, and the window is only
/// nonempty once `a > R^2 + R`.
pub const SIGMA2_PROFILE: &str = "a=logpow:3,R=logpow:1";

const SKIP: &str = "skipped";
const OK: &str = "ok";

pub(super) fn pv_scan(config: &Config) -> Result<ScanReport> {
    let q_min = config.u64_or("q_min", 3)?;
    let q_max = config.u64_or("q_max", 2000)?;
    let kind = config.str_or("moduli", "primes");
    let profile = config.profile_or(BoundProfile::default())?;
    let qs = moduli(kind, q_min, q_max)?;

    let mut report = ScanReport::new(
        "pv-scan",
        &[
            "q",
            "character",
            "N",
            "window_lo",
            "window_hi",
            "abs_sum",
            "scale",
            "ratio",
            "status",
            "reason",
        ],
    );
    report.param("q_min", q_min);
    report.param("q_max", q_max);
    report.param("moduli", kind);
    report.param("profile", profile.to_string());

    let rows: Vec<PvRow> = par_map(&qs, |&q| Ok(pv_ratio_rows(q, &profile)?))?
        .into_iter()
        .flatten()
        .collect();
    let (mut measured, mut skipped) = (0u64, 0u64);
    for row in &rows {
        match row {
            PvRow::Measured {
                q,
                label,
                n,
                window,
                abs_sum,
                scale,
                ratio,
                ..
            } => {
                measured += 1;
                report.push(vec![
                    Value::from(*q),
                    Value::from(label.as_str()),
                    Value::from(*n),
                    Value::from(window.0),
                    Value::from(window.1),
                    num(*abs_sum),
                    num(*scale),
                    num(*ratio),
                    Value::from(OK),
                    Value::Null,
                ]);
            }
            PvRow::Skipped { q, reason } => {
                skipped += 1;
                report.push(skip_row(*q, 10, reason));
            }
        }
    }
    report.summarize("measured", measured);
    report.summarize("skipped", skipped);
    summarize_max(&mut report, rows.iter().map(PvRow::ratio));
    Ok(report)
}

fn skip_row(q: u64, width: usize, reason: &str) -> Vec<Value> {
    let mut row = vec![Value::Null; width];
    row[0] = Value::from(q);
    row[width - 2] = Value::from(SKIP);
    row[width - 1] = Value::from(reason);
    row
}

/// Records `max_ratio` and the `q`, `character` of the first maximizing row.
fn summarize_max(report: &mut ScanReport, ratios: impl IntoIterator<Item = Option<f64>>) {
    match argmax(ratios) {
        Some((i, v)) => {
            let row = report.rows[i].clone();
            report.summarize("max_ratio", num(v));
            report.summarize("max_ratio_q", row[0].clone());
            report.summarize("max_ratio_character", row[1].clone());
        }
        None => {
            report.summarize("max_ratio", Value::Null);
        }
    }
}

pub(super) fn sigma2_scan(config: &Config) -> Result<ScanReport> {
    let q_min = config.u64_or("q_min", 3)?;
    let q_max = config.u64_or("q_max", 3000)?;
    let kind = config.str_or("moduli", "primes");
    let profile = config.profile_or(SIGMA2_PROFILE.parse()?)?;
    let qs = moduli(kind, q_min, q_max)?;

    let mut report = ScanReport::new(
        "sigma2-scan",
        &[
            "q",
            "character",
            "N",
            "a_q",
            "sigma2_abs",
            "bound",
            "ratio",
            "status",
            "reason",
        ],
    );
    report.param("q_min", q_min);
    report.param("q_max", q_max);
    report.param("moduli", kind);
    report.param("profile", profile.to_string());

    let rows: Vec<Sigma2Row> = par_map(&qs, |&q| Ok(sigma2_rows(q, &profile)?))?
        .into_iter()
        .flatten()
        .collect();
    let (mut measured, mut skipped) = (0u64, 0u64);
    for row in &rows {
        match row {
            Sigma2Row::Measured {
                q,
                label,
                n,
                a_q,
                sigma2_abs,
                bound,
                ratio,
                ..
            } => {
                measured += 1;
                report.push(vec![
                    Value::from(*q),
                    Value::from(label.as_str()),
                    Value::from(*n),
                    num(*a_q),
                    num(*sigma2_abs),
                    num(*bound),
                    num(*ratio),
                    Value::from(OK),
                    Value::Null,
                ]);
            }
            Sigma2Row::Skipped { q, reason } => {
                skipped += 1;
                report.push(skip_row(*q, 9, reason));
            }
        }
    }
    report.summarize("measured", measured);
    report.summarize("skipped", skipped);
    summarize_max(&mut report, rows.iter().map(Sigma2Row::ratio));
    Ok(report)
}

pub(super) fn burgess_scan(config: &Config) -> Result<ScanReport> {
    let p_min = config.u64_or("p_min", 1000)?;
    let p_max = config.u64_or("p_max", 100_000)?;
    let samples = config.u64_or("samples", 200)?;
    let seed = config.u64_or("seed", 1)?;
    let thetas = config.f64_list_or("thetas", &[0.25, 0.3, 0.35, 0.4, 0.45, 0.5])?;
    let eps = config.f64_or("eps", 0.5)?;
    let profile = config.profile_or(BoundProfile::conjecture_one(eps))?;
    let primes = sample_primes(p_min, p_max, samples, seed)?;

    let mut report = ScanReport::new("burgess-scan", &["p", "theta", "x", "abs_sum", "savings", "ratio"]);
    report.param("p_min", p_min);
    report.param("p_max", p_max);
    report.param("samples", samples);
    report.param("seed", seed);
    report.param("thetas", thetas.clone());
    report.param("eps", eps);
    report.param("profile", profile.to_string());
    report.summarize("primes", primes.len() as u64);

    let rows = par_map(&primes, |&p| Ok(burgess_rows(p, &thetas, &profile)?))?;
    let mut ratios = Vec::new();
    for row in rows.iter().flatten() {
        ratios.push(Some(row.ratio));
        report.push(vec![
            Value::from(row.p),
            num(row.theta),
            num(row.x),
            num(row.abs_sum),
            num(row.savings),
            num(row.ratio),
        ]);
    }
    match argmax(ratios) {
        Some((i, v)) => {
            let row = report.rows[i].clone();
            report.summarize("max_ratio", num(v));
            report.summarize("max_ratio_p", row[0].clone());
            report.summarize("max_ratio_theta", row[1].clone());
        }
        None => report.summarize("max_ratio", Value::Null),
    }
    Ok(report)
}

/// Conjecture-1 savings with `a(q) = exp((log log q)^{1+ε})`.
pub fn integral_profile(eps: f64) -> BoundProfile {
    BoundProfile {
        a: FunctionalForm::ExpLogLogPow(1.0 + eps),
        ..BoundProfile::conjecture_one(eps)
    }
}

pub(super) fn integral_bound(config: &Config) -> Result<ScanReport> {
    let ln_qs = config.f64_list_or("ln_q", &[600.0, 1e3, 1e4, 1e5, 1e6])?;
    let eps = config.f64_or("eps", 0.5)?;
    let profile = config.profile_or(integral_profile(eps))?;

    let mut report = ScanReport::new(
        "integral-bound",
        &[
            "ln_q", "log_a", "integral", "total", "shape", "ratio", "status", "reason",
        ],
    );
    report.param("ln_q", ln_qs.clone());
    report.param("eps", eps);
    report.param("profile", profile.to_string());

    let results = par_map(&ln_qs, |&l| Ok(general_pv_integral_ln(l, &profile)))?;
    let mut ratios = Vec::new();
    let mut prev_total = f64::NEG_INFINITY;
    let mut monotone = true;
    for (&ln_q, res) in ln_qs.iter().zip(&results) {
        match res {
            Ok(v) => {
                let shape = ln_q.ln().powf(1.0 + eps);
                let ratio = v.total() / shape;
                ratios.push(Some(ratio));
                if v.total() < prev_total {
                    monotone = false;
                }
                prev_total = v.total();
                report.push(vec![
                    num(ln_q),
                    num(v.log_a),
                    num(v.integral),
                    num(v.total()),
                    num(shape),
                    num(ratio),
                    Value::from(OK),
                    Value::Null,
                ]);
            }
            Err(e) => {
                ratios.push(None);
                report.push(vec![
                    num(ln_q),
                    Value::Null,
                    Value::Null,
                    Value::Null,
                    Value::Null,
                    Value::Null,
                    Value::from(SKIP),
                    Value::from(e.to_string()),
                ]);
            }
        }
    }
    report.summarize("max_ratio", opt_num(argmax(ratios).map(|(_, v)| v)));
    report.summarize("total_nondecreasing_in_listed_order", monotone);
    Ok(report)
}
