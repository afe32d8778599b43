//! Dirichlet rational approximation and the medium-range gates.
//!
//! `N` is restricted to the open window
//! `q R / a < N < (q / R)(1 - R / a)` with `2 <= R < a <= q`. Approximating
//! `N/q` by `r/s` with `s <= M/R` and `|N/q - r/s| <= R/(sM)` then forces
//! `r != 0` and `s >= (q/N)(1 - R/a)`, so `s` is of size at least `R`.

use alloc::format;

use crate::arith::{convergents, gcd};
use crate::{Error, Result};

/// `r/s` approximating `alpha` with `1 <= s <= M/R` and
/// `|alpha - r/s| <= R/(sM)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalApproximation {
    pub alpha: f64,
    pub m: u64,
    pub r_q: f64,
    pub r: i64,
    pub s: u64,
    pub error: f64,
}

impl RationalApproximation {
    /// The Dirichlet guarantee `R/(sM)`.
    pub fn certificate(&self) -> f64 {
        self.r_q / (self.s as f64 * self.m as f64)
    }

    /// `|s alpha - r|`, rounded once.
    pub fn scaled_error(&self) -> f64 {
        libm::fabs(libm::fma(self.s as f64, self.alpha, -(self.r as f64)))
    }

    /// All three invariants: lowest terms, denominator range, error bound.
    /// The bound is tested as `|s alpha - r| <= R/M`, allowing a few ulps,
    /// since `alpha - r/s` cancels to nothing once `s` is near `sqrt(M)`.
    pub fn is_valid(&self) -> bool {
        gcd(self.r.unsigned_abs(), self.s) == 1
            && self.s >= 1
            && self.s as f64 <= self.m as f64 / self.r_q
            && self.scaled_error() <= self.r_q / self.m as f64 * (1.0 + 4.0 * f64::EPSILON)
    }
}

/// Largest-denominator continued-fraction convergent of `alpha` with
/// `s <= M/R`.
pub fn dirichlet_approx(alpha: f64, m: u64, r_q: f64) -> Result<RationalApproximation> {
    if !alpha.is_finite() {
        return Err(Error::domain("alpha", "must be finite"));
    }
    if !(r_q >= 2.0) {
        return Err(Error::domain("R", format!("{r_q} is below 2")));
    }
    if r_q > m as f64 {
        return Err(Error::domain(
            "R",
            format!("{r_q} exceeds M = {m}; no denominator fits"),
        ));
    }
    let s_max = libm::floor(m as f64 / r_q) as u64;
    let &(r, s) = convergents(alpha, s_max)
        .last()
        .expect("floor(alpha)/1 or (floor(alpha)+1)/1 always fits");
    let error = libm::fabs(libm::fma(s as f64, alpha, -(r as f64))) / s as f64;
    Ok(RationalApproximation {
        alpha,
        m,
        r_q,
        r,
        s,
        error,
    })
}

/// As [`dirichlet_approx`] with `M = floor(x)`.
pub fn dirichlet_approx_for_length(alpha: f64, x: f64, r_q: f64) -> Result<RationalApproximation> {
    if !(x >= 1.0) {
        return Err(Error::domain("x", "must be at least 1"));
    }
    dirichlet_approx(alpha, libm::floor(x) as u64, r_q)
}

/// The open window `(qR/a, (q/R)(1 - R/a))` and whether `N` lies in it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeGate {
    pub q: u64,
    pub n: u64,
    pub a_q: f64,
    pub r_q: f64,
    pub lower: f64,
    pub upper: f64,
    pub passes: bool,
}

/// Window endpoints without checking the parameter ordering.
pub fn window_endpoints(q: f64, a_q: f64, r_q: f64) -> (f64, f64) {
    (q * r_q / a_q, q / r_q * (1.0 - r_q / a_q))
}

pub fn li1_range_gate(q: u64, n: u64, a_q: f64, r_q: f64) -> Result<RangeGate> {
    if !(r_q >= 2.0) {
        return Err(Error::domain("R_q", format!("{r_q} is below 2")));
    }
    if !(r_q < a_q) {
        return Err(Error::domain("a_q", format!("{a_q} is not above R_q = {r_q}")));
    }
    if !(a_q <= q as f64) {
        return Err(Error::domain("a_q", format!("{a_q} exceeds q = {q}")));
    }
    let (lower, upper) = window_endpoints(q as f64, a_q, r_q);
    let x = n as f64;
    Ok(RangeGate {
        q,
        n,
        a_q,
        r_q,
        lower,
        upper,
        passes: lower < x && x < upper,
    })
}

/// Integer `N` strictly inside a window, as an inclusive range (possibly empty).
pub fn window_integers(lower: f64, upper: f64) -> core::ops::RangeInclusive<u64> {
    let lo = if lower < 0.0 { 0 } else { libm::floor(lower) as u64 + 1 };
    let hi_f = libm::ceil(upper) - 1.0;
    if hi_f < lo as f64 {
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    }
    lo..=hi_f as u64
}

/// The log-power window for a fixed exponent `c`:
/// `q/(log q)^{c+2} < N < q/(2 (log q)^2)`, next to the general window
/// instantiated at `a = (log q)^{c+4+ε}`, `R = (log q)^{2+ε}`.
///
/// With that choice the lower endpoints agree exactly; the upper endpoints
/// differ by the factor [`LogPowerWindow::predicted_upper_ratio`] =
/// `2 (log q)^{-ε} (1 - (log q)^{-(c+2)})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogPowerWindow {
    pub q: f64,
    pub c: f64,
    pub eps: f64,
    pub stated: (f64, f64),
    pub general: (f64, f64),
    pub a_q: f64,
    pub r_q: f64,
    /// Whether `2 <= R < a <= q` holds for the instantiated parameters.
    pub ordering_holds: bool,
}

impl LogPowerWindow {
    pub fn lower_ratio(&self) -> f64 {
        self.general.0 / self.stated.0
    }

    pub fn upper_ratio(&self) -> f64 {
        self.general.1 / self.stated.1
    }

    pub fn predicted_upper_ratio(&self) -> f64 {
        let l = libm::log(self.q);
        2.0 * libm::pow(l, -self.eps) * (1.0 - libm::pow(l, -(self.c + 2.0)))
    }
}

pub fn log_power_window(q: f64, c: f64, eps: f64) -> Result<LogPowerWindow> {
    if !(q > core::f64::consts::E) {
        return Err(Error::domain("q", "log q must exceed 1"));
    }
    if !(c > 0.0) {
        return Err(Error::domain("c", "must be positive"));
    }
    if !(eps >= 0.0) {
        return Err(Error::domain("eps", "must be nonnegative"));
    }
    let l = libm::log(q);
    let stated = (q / libm::pow(l, c + 2.0), q / (2.0 * l * l));
    let a_q = libm::pow(l, c + 4.0 + eps);
    let r_q = libm::pow(l, 2.0 + eps);
    Ok(LogPowerWindow {
        q,
        c,
        eps,
        stated,
        general: window_endpoints(q, a_q, r_q),
        a_q,
        r_q,
        ordering_holds: 2.0 <= r_q && r_q < a_q && a_q <= q,
    })
}

/// Outcome of checking the lower bound on `s` for `alpha = N/q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SLowerBoundCheck {
    pub r: i64,
    pub s: u64,
    /// `qR/(sM)`: the largest `N` compatible with `r = 0`.
    pub r_zero_limit: f64,
    /// `qR/a`: the window's lower endpoint.
    pub window_lower: f64,
    /// `r = 0` together with `N > qR/a`: the approximation would need
    /// `sM < a`, which the assumptions `a <= M`, `s >= 1` exclude.
    pub contradiction: bool,
    /// `(q/N)(r - R/M)`.
    pub first_link: f64,
    /// `(q/N)(1 - R/a)`.
    pub second_link: f64,
    /// `s >= first_link >= second_link > 0` (only meaningful for `r != 0`).
    pub chain_holds: bool,
    pub s_over_r: f64,
}

pub fn s_lower_bound_check(
    q: u64,
    n: u64,
    m: u64,
    r_q: f64,
    a_q: f64,
    approx: &RationalApproximation,
) -> SLowerBoundCheck {
    let (qf, nf, mf) = (q as f64, n as f64, m as f64);
    let s = approx.s as f64;
    let window_lower = qf * r_q / a_q;
    let first_link = qf / nf * (approx.r as f64 - r_q / mf);
    let second_link = qf / nf * (1.0 - r_q / a_q);
    let chain_holds = approx.r != 0 && s >= first_link && first_link >= second_link && second_link > 0.0;
    SLowerBoundCheck {
        r: approx.r,
        s: approx.s,
        r_zero_limit: qf * r_q / (s * mf),
        window_lower,
        contradiction: approx.r == 0 && nf > window_lower,
        first_link,
        second_link,
        chain_holds,
        s_over_r: s / r_q,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Brute force: smallest |alpha - r/s| over all s <= s_max.
    fn brute_best(alpha: f64, s_max: u64) -> f64 {
        (1..=s_max)
            .map(|s| {
                let r = libm::round(alpha * s as f64);
                libm::fabs(alpha - r / s as f64)
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn examples() {
        let a = dirichlet_approx(0.3, 100, 10.0).unwrap();
        assert_eq!((a.r, a.s), (3, 10));
        // 0.3 is not a binary fraction; what is left is its representation error
        assert!(a.error < 1e-16);
        assert_eq!(brute_best(0.3, 10), 0.0);

        let z = dirichlet_approx(0.0, 57, 3.5).unwrap();
        assert_eq!((z.r, z.s), (0, 1));

        let alpha = core::f64::consts::FRAC_1_SQRT_2;
        let a = dirichlet_approx(alpha, 10_000, 10.0).unwrap();
        assert!(a.s <= 1000);
        assert!(a.error <= 10.0 / (a.s as f64 * 1e4));
        assert!(a.is_valid());
        // 1/sqrt 2 = [0; 1, 2, 2, 2, ...]: denominators 1, 3, 7, 17, 41, 99, 239, 577
        assert_eq!(a.s, 577);

        assert!(dirichlet_approx(0.2, 10, 11.0).is_err());
        assert!(dirichlet_approx(0.2, 10, 1.5).is_err());
    }

    #[test]
    fn random_certificates() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let alpha: f64 = rng.random_range(-3.0..3.0);
            let m: u64 = rng.random_range(2..1_000_000);
            let r_q: f64 = rng.random_range(2.0..=m as f64);
            let a = dirichlet_approx(alpha, m, r_q).unwrap();
            assert!(a.is_valid(), "{a:?}");
            if m <= 1000 {
                let s_max = (m as f64 / r_q) as u64;
                let best = brute_best(alpha, s_max);
                assert!(best <= a.error + 1e-15);
                // the brute-force minimizer also meets the guarantee at its own denominator
                assert!(best <= r_q / m as f64 + 1e-15);
            }
        }
    }

    #[test]
    fn gate_examples() {
        let g = li1_range_gate(1_000_000, 1000, 1e6, 2.0).unwrap();
        assert!(g.passes);
        assert!((g.lower - 2.0).abs() < 1e-12);
        assert!((g.upper - 500_000.0 * (1.0 - 2e-6)).abs() < 1e-6);
        let edge = li1_range_gate(1_000_000, 2, 1e6, 2.0).unwrap();
        assert!(!edge.passes);
        let (lo, hi) = window_endpoints(100.0, 10.0, 2.0);
        assert_eq!((lo, hi), (20.0, 40.0));
        assert!(!li1_range_gate(100, 20, 10.0, 2.0).unwrap().passes);
        assert!(!li1_range_gate(100, 40, 10.0, 2.0).unwrap().passes);
        assert!(li1_range_gate(100, 21, 10.0, 2.0).unwrap().passes);

        assert!(li1_range_gate(100, 5, 3.0, 3.0).is_err());
        assert!(li1_range_gate(100, 5, 300.0, 3.0).is_err());
        assert!(li1_range_gate(100, 5, 30.0, 1.0).is_err());
        assert_eq!(window_integers(20.0, 40.0), 21..=39);
        assert_eq!(window_integers(20.5, 21.0).count(), 0);
        assert_eq!(window_integers(0.8, 0.96).count(), 0);
    }

    #[test]
    fn gate_monotone_in_cutoff() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5000 {
            let q: u64 = rng.random_range(100..1_000_000);
            let r_q: f64 = rng.random_range(2.0..10.0);
            let a_q: f64 = rng.random_range(r_q + 0.01..q as f64);
            let bigger = rng.random_range(a_q..=q as f64);
            let n: u64 = rng.random_range(1..q);
            if li1_range_gate(q, n, a_q, r_q).unwrap().passes {
                assert!(li1_range_gate(q, n, bigger, r_q).unwrap().passes);
            }
        }
    }

    #[test]
    fn log_power_window_gap() {
        let w = log_power_window(1e6, 1.0, 0.5).unwrap();
        assert!((w.lower_ratio() - 1.0).abs() < 1e-12);
        assert!((w.upper_ratio() - w.predicted_upper_ratio()).abs() < 1e-12);
        // a = (log q)^5.5 exceeds q = 10^6
        assert!(!w.ordering_holds);
        let far = log_power_window(1e30, 1.0, 0.5).unwrap();
        assert!(far.ordering_holds);
    }

    #[test]
    fn s_chain_on_random_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 2000 {
            let q: u64 = rng.random_range(1_000..200_000);
            let r_q: f64 = rng.random_range(2.0..6.0);
            let a_q: f64 = rng.random_range(4.0 * r_q..(q as f64).sqrt().max(4.0 * r_q + 1.0));
            if a_q > q as f64 {
                continue;
            }
            let (lo, hi) = window_endpoints(q as f64, a_q, r_q);
            let ns = window_integers(lo, hi);
            if ns.is_empty() {
                continue;
            }
            let n = rng.random_range(ns);
            let x: f64 = rng.random_range(a_q..=q as f64);
            let m = x as u64;
            if (m as f64) < a_q || r_q > m as f64 {
                continue;
            }
            let approx = dirichlet_approx(n as f64 / q as f64, m, r_q).unwrap();
            let check = s_lower_bound_check(q, n, m, r_q, a_q, &approx);
            assert_ne!(approx.r, 0, "r = 0 inside the window");
            assert!(check.chain_holds, "{check:?}");
            assert!(check.s as f64 >= check.second_link);
            checked += 1;
        }
    }

    #[test]
    fn r_zero_contradiction_flag() {
        // alpha = N/q tiny: r = 0 and N above the window's lower end
        let approx = RationalApproximation {
            alpha: 3.0 / 1000.0,
            m: 50,
            r_q: 2.0,
            r: 0,
            s: 1,
            error: 0.003,
        };
        let c = s_lower_bound_check(1000, 3, 50, 2.0, 1000.0, &approx);
        assert!(c.contradiction);
        assert!(!c.chain_holds);
        let below = s_lower_bound_check(1000, 1, 50, 2.0, 1000.0, &approx);
        assert!(!below.contradiction);
    }
}
