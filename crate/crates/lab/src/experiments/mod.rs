//! The experiment suites behind `charsum-lab <experiment>`.
//!
//! Work units (a modulus, a prime, a grid point) run on a rayon pool; rows
//! come back in input order, so reports do not depend on the worker count.

mod bounds;
mod multiplicative;
mod verify;

use std::time::Instant;

use charsum_core::arith::{is_prime, sieve_primes};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use crate::{Config, LabError, Result, ScanReport};

pub const EXPERIMENTS: [&str; 8] = [
    "verify-identities",
    "pv-scan",
    "sigma2-scan",
    "burgess-scan",
    "integral-bound",
    "halasz-scan",
    "diff-scan",
    "delta-scan",
];

/// Keys accepted by every experiment; they never change report contents
/// except `timing`, which fills the `timing` field.
const COMMON_KEYS: [&str; 2] = ["workers", "timing"];

fn accepted_keys(name: &str) -> &'static [&'static str] {
    match name {
        "verify-identities" => &["q_max", "seed", "samples", "twist_q_max", "s_max"],
        "pv-scan" => &["q_min", "q_max", "moduli", "profile"],
        "sigma2-scan" => &["q_min", "q_max", "moduli", "profile"],
        "burgess-scan" => &["p_min", "p_max", "samples", "seed", "thetas", "eps", "profile"],
        "integral-bound" => &["ln_q", "eps", "profile"],
        "halasz-scan" => &["p_min", "p_max", "x_exp", "t", "density", "k", "function", "x"],
        "diff-scan" => &["p_min", "p_max", "eps1", "b", "eps", "grid"],
        "delta-scan" => &["p_min", "p_max", "samples", "seed", "eps", "horizon_exp"],
        _ => &[],
    }
}

pub fn run_experiment(name: &str, config: &Config) -> Result<ScanReport> {
    if !EXPERIMENTS.contains(&name) {
        return Err(LabError::Usage(format!(
            "unknown experiment `{name}`; expected one of {}",
            EXPERIMENTS.join(", ")
        )));
    }
    let allowed = accepted_keys(name);
    if let Some(key) = config.keys().find(|k| !allowed.contains(k) && !COMMON_KEYS.contains(k)) {
        return Err(LabError::Usage(format!("`{key}` is not a parameter of {name}")));
    }
    let workers = config.u64_or("workers", 0)? as usize;
    let timing = config.bool_or("timing", false)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| LabError::Usage(format!("worker pool: {e}")))?;
    let start = Instant::now();
    let mut report = pool.install(|| match name {
        "verify-identities" => verify::verify_identities(config),
        "pv-scan" => bounds::pv_scan(config),
        "sigma2-scan" => bounds::sigma2_scan(config),
        "burgess-scan" => bounds::burgess_scan(config),
        "integral-bound" => bounds::integral_bound(config),
        "halasz-scan" => multiplicative::halasz_scan(config),
        "diff-scan" => multiplicative::diff_scan(config),
        "delta-scan" => multiplicative::delta_scan(config),
        _ => unreachable!("checked above"),
    })?;
    if timing {
        report.timing = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

/// Applies `f` to each item in parallel, keeping input order.
fn par_map<T, R, F>(items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Moduli in `[lo, hi]`: `primes`, `odd` or `all`.
fn moduli(kind: &str, lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo > hi {
        return Err(LabError::Usage(format!("empty range [{lo}, {hi}]")));
    }
    Ok(match kind {
        "primes" => primes_between(lo, hi),
        "odd" => (lo..=hi).filter(|q| q % 2 == 1).collect(),
        "all" => (lo..=hi).collect(),
        other => {
            return Err(LabError::Usage(format!(
                "moduli = `{other}`: expected primes, odd or all"
            )))
        }
    })
}

fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    sieve_primes(hi)
        .up_to(hi)
        .iter()
        .copied()
        .filter(|&p| p >= lo)
        .collect()
}

/// Odd primes in `[lo, hi]`, thinned to `samples` by a seeded draw when
/// there are more (`samples = 0` keeps all). Sorted.
fn sample_primes(lo: u64, hi: u64, samples: u64, seed: u64) -> Result<Vec<u64>> {
    if lo > hi {
        return Err(LabError::Usage(format!("empty range [{lo}, {hi}]")));
    }
    let all: Vec<u64> = primes_between(lo.max(3), hi);
    if samples == 0 || all.len() as u64 <= samples {
        return Ok(all);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<u64> = rand::seq::index::sample(&mut rng, all.len(), samples as usize)
        .into_iter()
        .map(|i| all[i])
        .collect();
    picked.sort_unstable();
    debug_assert!(picked.iter().all(|&p| is_prime(p)));
    Ok(picked)
}

fn opt_num(x: Option<f64>) -> Value {
    x.map(crate::report::num).unwrap_or(Value::Null)
}

/// Index and value of the largest finite entry; first wins on ties.
fn argmax(values: impl IntoIterator<Item = Option<f64>>) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.into_iter().enumerate() {
        if let Some(v) = v.filter(|v| v.is_finite()) {
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((i, v));
            }
        }
    }
    best
}
