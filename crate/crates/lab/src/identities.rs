//! Exhaustive identity checks, one outcome per `(check, q)`.

use std::sync::Arc;

use charsum_core::arith::{gcd, is_prime, unit_group};
use charsum_core::characters::{enumerate_characters, DirichletCharacter, NO_PHASE};
use charsum_core::charsums::{gauss_sum, twisted_sum, FourierExpansion, PrefixSumTable, TwistDecomposition};
use charsum_core::trig::RootTable;
use charsum_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Result;

pub const ORTHOGONALITY_TOL: f64 = 1e-10;
pub const GAUSS_TOL: f64 = 1e-8;
pub const FOURIER_TOL: f64 = 1e-8;
pub const SINE_TOL: f64 = 1e-10;
pub const TWIST_TOL: f64 = 1e-8;

/// Default `u` values for the twisted decomposition.
pub const TWIST_LENGTHS: [f64; 3] = [10.0, 50.0, 100.0];

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityOutcome {
    pub check: &'static str,
    pub q: u64,
    pub cases: u64,
    pub max_error: f64,
    /// Largest error divided by its tolerance; a violation is a ratio above 1.
    pub max_ratio: f64,
    pub violations: u64,
}

impl IdentityOutcome {
    fn new(check: &'static str, q: u64) -> Self {
        IdentityOutcome {
            check,
            q,
            cases: 0,
            max_error: 0.0,
            max_ratio: 0.0,
            violations: 0,
        }
    }

    fn record(&mut self, error: f64, tolerance: f64) {
        self.cases += 1;
        self.max_error = self.max_error.max(error);
        let ratio = error / tolerance;
        self.max_ratio = self.max_ratio.max(ratio);
        // NaN counts as a violation
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(ratio <= 1.0) {
            self.violations += 1;
        }
    }
}

fn characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(enumerate_characters(&Arc::new(unit_group(q)?)))
}

/// `|sum_{n=1}^q χ(n)| <= 1e-10 √q` for every non-principal `χ mod q`.
pub fn orthogonality(q: u64) -> Result<IdentityOutcome> {
    let mut out = IdentityOutcome::new("orthogonality", q);
    let group = Arc::new(unit_group(q)?);
    let roots = RootTable::new(group.exponent());
    let tol = ORTHOGONALITY_TOL * (q as f64).sqrt();
    for chi in enumerate_characters(&group).iter().filter(|c| !c.is_principal()) {
        let step = group.exponent() / chi.order();
        let sum: Complex64 = chi
            .phase_table()
            .into_iter()
            .filter(|&ph| ph != NO_PHASE)
            .map(|ph| roots.get(ph as u64 * step))
            .sum();
        out.record(sum.norm(), tol);
    }
    Ok(out)
}

/// `||τ(χ)| - √q| <= 1e-8` for every primitive `χ mod q`.
pub fn gauss_modulus(q: u64) -> Result<IdentityOutcome> {
    let mut out = IdentityOutcome::new("gauss_modulus", q);
    let sq = (q as f64).sqrt();
    for chi in characters(q)?.iter().filter(|c| c.is_primitive() && q > 1) {
        out.record((gauss_sum(chi).norm() - sq).abs(), GAUSS_TOL);
    }
    Ok(out)
}

/// Fourier expansion against the direct partial sum for every primitive
/// `χ mod q` and every `1 <= N <= q`; `q` odd.
pub fn fourier_identity(q: u64) -> Result<IdentityOutcome> {
    let mut out = IdentityOutcome::new("fourier_expansion", q);
    if q < 3 || q.is_multiple_of(2) {
        return Ok(out);
    }
    let tol = FOURIER_TOL * (q as f64).sqrt();
    for chi in characters(q)?.iter().filter(|c| c.is_primitive()) {
        let exp = FourierExpansion::new(chi)?;
        let table = PrefixSumTable::new(chi);
        for n in 1..=q {
            out.record((exp.sum_at(n) - table.get(n)).norm(), tol);
        }
    }
    Ok(out)
}

fn unit_seed(seed: u64, q: u64) -> u64 {
    seed ^ q.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// `Σ1` from the split against its sine form, `samples` random `(N, a_q)`
/// per even primitive `χ mod q`; `q` odd.
pub fn sigma1_sine_identity(q: u64, samples: u32, seed: u64) -> Result<IdentityOutcome> {
    let mut out = IdentityOutcome::new("sigma1_sine", q);
    if q < 3 || q.is_multiple_of(2) {
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(unit_seed(seed, q));
    let a_max = ((q - 1) / 2) as f64;
    for chi in characters(q)?.iter().filter(|c| c.is_primitive() && c.is_even()) {
        let exp = FourierExpansion::new(chi)?;
        for _ in 0..samples {
            let n = rng.random_range(1..=q);
            let a_q = if a_max > 1.0 { rng.random_range(1.0..a_max) } else { 1.0 };
            let split = exp.split(n, a_q)?;
            let sine = exp.sigma1_sine(n, a_q)?;
            out.record((split.sigma1 - sine).norm(), SINE_TOL);
        }
    }
    Ok(out)
}

/// Grouped decomposition of `sum_{n<=u} χ(n) e(rn/s)` against direct
/// summation, for prime `q`, every primitive `χ`, `s <= s_max`, `0 <= r < s`
/// coprime to `s`. Non-prime `q` yields no cases.
pub fn twist_identity(q: u64, s_max: u64, lengths: &[f64]) -> Result<IdentityOutcome> {
    let mut out = IdentityOutcome::new("twist_decomposition", q);
    if !is_prime(q) {
        return Ok(out);
    }
    for chi in characters(q)?.iter().filter(|c| c.is_primitive()) {
        for s in 1..=s_max {
            for r in (0..s).filter(|&r| gcd(r, s) == 1) {
                let dec = TwistDecomposition::new(chi, r as i64, s)?;
                for &u in lengths {
                    let direct = twisted_sum(chi, r as f64 / s as f64, u);
                    out.record((dec.evaluate(u) - direct).norm(), TWIST_TOL * (1.0 + u.sqrt()));
                }
            }
        }
    }
    Ok(out)
}
