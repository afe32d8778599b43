use charsum_core::arith::is_prime;
use serde_json::Value;

use super::par_map;
use crate::identities::{
    fourier_identity, gauss_modulus, orthogonality, sigma1_sine_identity, twist_identity, IdentityOutcome,
    TWIST_LENGTHS,
};
use crate::report::num;
use crate::{Config, Result, ScanReport};

pub(super) fn verify_identities(config: &Config) -> Result<ScanReport> {
    let q_max = config.u64_or("q_max", 200)?;
    let seed = config.u64_or("seed", 1)?;
    let samples = config.u64_or("samples", 20)? as u32;
    let twist_q_max = config.u64_or("twist_q_max", 50)?.min(q_max);
    let s_max = config.u64_or("s_max", 12)?;

    let mut report = ScanReport::new(
        "verify-identities",
        &["check", "q", "cases", "max_error", "max_ratio", "violations"],
    );
    report.param("q_max", q_max);
    report.param("seed", seed);
    report.param("samples", samples);
    report.param("twist_q_max", twist_q_max);
    report.param("s_max", s_max);
    report.param("twist_lengths", TWIST_LENGTHS.to_vec());

    let all: Vec<u64> = (1..=q_max).collect();
    let odd: Vec<u64> = (3..=q_max).filter(|q| q % 2 == 1).collect();
    let primes: Vec<u64> = (3..=twist_q_max).filter(|&q| is_prime(q)).collect();
    let suites: Vec<Vec<IdentityOutcome>> = vec![
        par_map(&all, |&q| orthogonality(q))?,
        par_map(&all, |&q| gauss_modulus(q))?,
        par_map(&odd, |&q| fourier_identity(q))?,
        par_map(&odd, |&q| sigma1_sine_identity(q, samples, seed))?,
        par_map(&primes, |&q| twist_identity(q, s_max, &TWIST_LENGTHS))?,
    ];

    let (mut cases, mut violations) = (0u64, 0u64);
    for suite in &suites {
        let mut worst = 0.0f64;
        let mut suite_cases = 0u64;
        for o in suite.iter().filter(|o| o.cases > 0) {
            report.push(vec![
                Value::from(o.check),
                Value::from(o.q),
                Value::from(o.cases),
                num(o.max_error),
                num(o.max_ratio),
                Value::from(o.violations),
            ]);
            cases += o.cases;
            suite_cases += o.cases;
            violations += o.violations;
            worst = worst.max(o.max_ratio);
        }
        if let Some(first) = suite.first() {
            report.summarize(&format!("{}.cases", first.check), suite_cases);
            report.summarize(&format!("{}.max_ratio", first.check), num(worst));
        }
    }
    report.summarize("cases", cases);
    report.summarize("violations", violations);
    Ok(report)
}
