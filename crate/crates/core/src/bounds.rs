//! Explicit bound expressions and measured ratios against exact sums.
//!
//! Expressions carrying an unspecified implied constant are evaluated with
//! constant 1; what they bound is reported as a ratio, never asserted.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_2_PI, FRAC_PI_2, LN_2};
use core::fmt;
use core::str::FromStr;

use crate::approx::{window_endpoints, window_integers};
use crate::arith::unit_group;
use crate::characters::{enumerate_characters, legendre_character, DirichletCharacter};
use crate::charsums::{partial_sum, FourierExpansion, PrefixSumTable};
use crate::quad::adaptive_simpson;
use crate::trig::RootTable;
use crate::{Error, Result};

/// Euler–Mascheroni constant, the default for the trigonometric-sum bound.
pub const EULER_GAMMA: f64 = 0.5772156649;

/// Relative tolerance for [`general_pv_integral`].
pub const INTEGRAL_REL_TOL: f64 = 1e-6;

/// A positive function of one real variable, from a small grammar:
///
/// * `const:k` is `k`
/// * `logpow:e` is `(log x)^e`
/// * `powlog:a,e` is `x^a (log x)^e`
/// * `expll:e` is `exp((log log x)^e)`
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FunctionalForm {
    Const(f64),
    LogPow(f64),
    PowLog { power: f64, log_power: f64 },
    ExpLogLogPow(f64),
}

impl FunctionalForm {
    pub fn eval(&self, x: f64) -> f64 {
        self.eval_ln(libm::log(x))
    }

    /// Value at `x = exp(ln_x)`, usable beyond the `f64` range of `x`.
    pub fn eval_ln(&self, ln_x: f64) -> f64 {
        match *self {
            FunctionalForm::Const(k) => k,
            FunctionalForm::LogPow(e) => libm::pow(ln_x, e),
            FunctionalForm::PowLog { power, log_power } => libm::exp(power * ln_x) * libm::pow(ln_x, log_power),
            FunctionalForm::ExpLogLogPow(e) => libm::exp(libm::pow(libm::log(ln_x), e)),
        }
    }

    /// Natural log of the value at `exp(ln_x)`.
    pub fn ln_eval_ln(&self, ln_x: f64) -> f64 {
        match *self {
            FunctionalForm::Const(k) => libm::log(k),
            FunctionalForm::LogPow(e) => e * libm::log(ln_x),
            FunctionalForm::PowLog { power, log_power } => power * ln_x + log_power * libm::log(ln_x),
            FunctionalForm::ExpLogLogPow(e) => libm::pow(libm::log(ln_x), e),
        }
    }
}

impl FromStr for FunctionalForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(s, "expected `<kind>:<args>`"))?;
        let nums: Vec<f64> = args
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| Error::parse(s, "bad number")))
            .collect::<Result<_>>()?;
        if nums.iter().any(|v| !v.is_finite()) {
            return Err(Error::parse(s, "non-finite parameter"));
        }
        let form = match (kind.trim(), nums.as_slice()) {
            ("const", [k]) if *k > 0.0 => FunctionalForm::Const(*k),
            ("const", [_]) => return Err(Error::parse(s, "constant must be positive")),
            ("logpow", [e]) => FunctionalForm::LogPow(*e),
            ("powlog", [a, e]) => FunctionalForm::PowLog {
                power: *a,
                log_power: *e,
            },
            ("expll", [e]) => FunctionalForm::ExpLogLogPow(*e),
            _ => return Err(Error::parse(s, "unknown form or wrong argument count")),
        };
        Ok(form)
    }
}

impl fmt::Display for FunctionalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionalForm::Const(k) => write!(f, "const:{k}"),
            FunctionalForm::LogPow(e) => write!(f, "logpow:{e}"),
            FunctionalForm::PowLog { power, log_power } => write!(f, "powlog:{power},{log_power}"),
            FunctionalForm::ExpLogLogPow(e) => write!(f, "expll:{e}"),
        }
    }
}

/// Parameter functions and constants shared by the bound evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundProfile {
    /// Fourier cutoff `a(q)`.
    pub a: FunctionalForm,
    /// Denominator scale `R(q)` (also read as `R(x)`).
    pub r: FunctionalForm,
    /// Savings function `c(x)` of the Burgess-type hypothesis.
    pub c: FunctionalForm,
    /// Threshold `l(q)` above which the hypothesis applies.
    pub l: FunctionalForm,
    /// Constant in the trigonometric-sum bound.
    pub c_pom: f64,
    pub eps: f64,
    pub eps1: f64,
    /// Exponent in the log-power window.
    pub c_exp: f64,
}

impl Default for BoundProfile {
    fn default() -> Self {
        BoundProfile {
            a: FunctionalForm::LogPow(4.0),
            r: FunctionalForm::LogPow(2.5),
            c: FunctionalForm::LogPow(3.0),
            l: FunctionalForm::Const(1.0),
            c_pom: EULER_GAMMA,
            eps: 0.5,
            eps1: 0.05,
            c_exp: 1.0,
        }
    }
}

impl BoundProfile {
    /// Savings `c(x) = (log x)^{3+ε}` with `R(x) = (log x)^{2+ε}`.
    pub fn conjecture_one(eps: f64) -> Self {
        BoundProfile {
            r: FunctionalForm::LogPow(2.0 + eps),
            c: FunctionalForm::LogPow(3.0 + eps),
            eps,
            ..Default::default()
        }
    }
}

impl FromStr for BoundProfile {
    type Err = Error;

    /// Comma-separated `key=value` pairs; keys `a`, `R`, `c`, `l` take
    /// functional forms, `C_pom`, `eps`, `eps1`, `c_exp` take numbers.
    /// Missing keys keep their defaults.
    fn from_str(s: &str) -> Result<Self> {
        let mut profile = BoundProfile::default();
        // re-join `powlog:a,e` arguments split by the outer comma
        let mut pairs: Vec<String> = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match (tok.contains('='), pairs.last_mut()) {
                (false, Some(prev)) => {
                    prev.push(',');
                    prev.push_str(tok);
                }
                (false, None) => return Err(Error::parse(s, "expected `key=value`")),
                (true, _) => pairs.push(tok.to_string()),
            }
        }
        for pair in &pairs {
            let (key, value) = pair.split_once('=').expect("checked above");
            let num = || {
                value
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::parse(pair, "bad number"))
            };
            match key.trim() {
                "a" => profile.a = value.parse()?,
                "R" => profile.r = value.parse()?,
                "c" => profile.c = value.parse()?,
                "l" => profile.l = value.parse()?,
                "C_pom" => profile.c_pom = num()?,
                "eps" => profile.eps = num()?,
                "eps1" => profile.eps1 = num()?,
                "c_exp" => profile.c_exp = num()?,
                other => return Err(Error::parse(pair, format!("unknown profile key `{other}`"))),
            }
        }
        Ok(profile)
    }
}

impl fmt::Display for BoundProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a={},R={},c={},l={},C_pom={},eps={},eps1={},c_exp={}",
            self.a, self.r, self.c, self.l, self.c_pom, self.eps, self.eps1, self.c_exp
        )
    }
}

/// `sum_{n <= x} |sin(αn)| / n`, compensated summation.
pub fn pomerance_trig_sum(alpha: f64, x: f64) -> f64 {
    pomerance_trig_sums(alpha, &[x])[0]
}

/// The same sum at several cut points in one pass. `xs` must be
/// nondecreasing.
pub fn pomerance_trig_sums(alpha: f64, xs: &[f64]) -> Vec<f64> {
    debug_assert!(xs.windows(2).all(|w| w[0] <= w[1]));
    let mut out = Vec::with_capacity(xs.len());
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut n = 1u64;
    for &x in xs {
        let top = if x >= 1.0 { libm::floor(x) as u64 } else { 0 };
        while n <= top {
            let term = libm::fabs(libm::sin(alpha * n as f64)) / n as f64;
            // Neumaier
            let t = sum + term;
            if libm::fabs(sum) >= term {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
            n += 1;
        }
        out.push(sum + comp);
    }
    out
}

/// `(2/π) log x + (2/π)(C + log 2 + 3/x)`.
pub fn pomerance_bound(x: f64, c: f64) -> f64 {
    FRAC_2_PI * libm::log(x) + FRAC_2_PI * (c + LN_2 + 3.0 / x)
}

/// Smallest `C` for which [`pomerance_bound`] covers `sum` at `x`.
pub fn pomerance_constant_needed(x: f64, sum: f64) -> f64 {
    FRAC_PI_2 * sum - libm::log(x) - LN_2 - 3.0 / x
}

/// `N/log N + N (log R)^{3/2} / √R` with implied constant 1.
pub fn mv_bound(n: f64, r: f64) -> f64 {
    let lr = libm::log(r);
    n / libm::log(n) + n * lr * libm::sqrt(lr) / libm::sqrt(r)
}

/// Right-hand side of the medium-range bound for even primitive characters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvHildRhs {
    /// `2√q ((2/π) log a + (2/π)(C + log 2 + 3/a))`.
    pub main: f64,
    /// `√q log(log q / log a)`.
    pub log_branch: f64,
    /// `√q (log R)^{3/2}/√R · log(q/a)`.
    pub mv_branch: f64,
}

impl PvHildRhs {
    /// The error-term shape `max(log_branch, mv_branch)`; no constant.
    pub fn error_shape(&self) -> f64 {
        self.log_branch.max(self.mv_branch)
    }
}

pub fn pvhild_rhs(q: f64, profile: &BoundProfile) -> Result<PvHildRhs> {
    let a = clamp_to_modulus(profile.a.eval(q), q);
    let r = profile.r.eval(q);
    if !(2.0 <= r && r < a && a <= q) {
        return Err(Error::domain(
            "profile",
            format!("need 2 <= R(q) < a(q) <= q, got R = {r}, a = {a}, q = {q}"),
        ));
    }
    let sq = libm::sqrt(q);
    let (lq, la, lr) = (libm::log(q), libm::log(a), libm::log(r));
    Ok(PvHildRhs {
        main: sq * 2.0 * (FRAC_2_PI * la + FRAC_2_PI * (profile.c_pom + LN_2 + 3.0 / a)),
        log_branch: sq * libm::log(lq / la),
        mv_branch: sq * lr * libm::sqrt(lr) / libm::sqrt(r) * libm::log(q / a),
    })
}

// absorbs rounding in forms like `powlog:1,0` that should hit q exactly
fn clamp_to_modulus(a: f64, q: f64) -> f64 {
    if a > q && a <= q * (1.0 + 1e-12) {
        q
    } else {
        a
    }
}

/// One row of the log-power window scan.
#[derive(Debug, Clone, PartialEq)]
pub enum PvRow {
    /// Largest `|S(N, χ)|` over the window, at its first maximizer.
    Measured {
        q: u64,
        label: String,
        exponents: Vec<u64>,
        n: u64,
        window: (u64, u64),
        abs_sum: f64,
        scale: f64,
        ratio: f64,
    },
    Skipped {
        q: u64,
        reason: String,
    },
}

impl PvRow {
    pub fn ratio(&self) -> Option<f64> {
        match self {
            PvRow::Measured { ratio, .. } => Some(*ratio),
            PvRow::Skipped { .. } => None,
        }
    }
}

/// Measures `|S(N, χ)| / (√q log log q)` for every even non-principal
/// `χ mod q` over the integer window `q/(log q)^{c+2} < N < q/(2(log q)^2)`.
pub fn pv_ratio_rows(q: u64, profile: &BoundProfile) -> Result<Vec<PvRow>> {
    let skip = |reason: &str| {
        Ok(alloc::vec![PvRow::Skipped {
            q,
            reason: reason.into()
        }])
    };
    if q < 3 {
        return skip("modulus below 3");
    }
    let qf = q as f64;
    let lq = libm::log(qf);
    let lower = qf / libm::pow(lq, profile.c_exp + 2.0);
    let upper = qf / (2.0 * lq * lq);
    let window = window_integers(lower, upper);
    if window.is_empty() {
        return skip("empty window");
    }
    let group = Arc::new(unit_group(q)?);
    let chars: Vec<DirichletCharacter> = enumerate_characters(&group)
        .into_iter()
        .filter(|c| c.is_even() && !c.is_principal())
        .collect();
    if chars.is_empty() {
        return skip("no even non-principal character");
    }
    let (lo, hi) = (*window.start(), *window.end());
    let scale = libm::sqrt(qf) * libm::log(lq);
    let roots = RootTable::new(group.exponent());
    let mut rows = Vec::with_capacity(chars.len());
    for chi in &chars {
        let step = group.exponent() / chi.order();
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        let mut best = (lo, -1.0f64);
        for n in 1..=hi {
            if let Some(ph) = chi.phase(n as i64) {
                acc += roots.get(ph * step);
            }
            if n >= lo {
                let v = acc.norm();
                if v > best.1 {
                    best = (n, v);
                }
            }
        }
        rows.push(PvRow::Measured {
            q,
            label: chi.label(),
            exponents: chi.exponents().to_vec(),
            n: best.0,
            window: (lo, hi),
            abs_sum: best.1,
            scale,
            ratio: best.1 / scale,
        });
    }
    sort_by_exponents(&mut rows, |r| match r {
        PvRow::Measured { exponents, .. } => exponents.as_slice(),
        PvRow::Skipped { .. } => &[],
    });
    Ok(rows)
}

pub fn pv_ratio_scan(q_list: &[u64], profile: &BoundProfile) -> Result<Vec<PvRow>> {
    let mut rows = Vec::new();
    for &q in q_list {
        rows.extend(pv_ratio_rows(q, profile)?);
    }
    Ok(rows)
}

fn sort_by_exponents<T, F: Fn(&T) -> &[u64]>(rows: &mut [T], key: F) {
    rows.sort_by(|a, b| key(a).cmp(key(b)));
}

/// `|sum_{n<=x} χ(n)| · c(x) / x` for non-principal `χ`, `x >= max(l(q), 3)`.
pub fn burgess_profile_ratio(chi: &DirichletCharacter, x: f64, profile: &BoundProfile) -> Result<f64> {
    if chi.is_principal() {
        return Err(Error::domain("chi", "needs a non-principal character"));
    }
    let floor_x = profile.l.eval(chi.modulus() as f64).max(3.0);
    if !(x >= floor_x) {
        return Err(Error::domain("x", format!("{x} is below max(l(q), 3) = {floor_x}")));
    }
    let s = partial_sum(chi, libm::floor(x) as u64).norm();
    Ok(s * profile.c.eval(x) / x)
}

/// One row of the Burgess-profile scan over `x = p^θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BurgessRow {
    pub p: u64,
    pub theta: f64,
    pub x: f64,
    pub abs_sum: f64,
    pub savings: f64,
    pub ratio: f64,
}

/// Burgess-profile ratios for the quadratic character mod `p` at `x = p^θ`.
/// Exponents giving `x` below `max(l(p), 3)` are left out.
pub fn burgess_rows(p: u64, thetas: &[f64], profile: &BoundProfile) -> Result<Vec<BurgessRow>> {
    let chi = legendre_character(p)?;
    let table = PrefixSumTable::new(&chi);
    let floor_x = profile.l.eval(p as f64).max(3.0);
    let mut rows = Vec::new();
    for &theta in thetas {
        let x = libm::pow(p as f64, theta);
        if x < floor_x {
            continue;
        }
        let abs_sum = table.get(libm::floor(x) as u64).norm();
        let savings = profile.c.eval(x);
        rows.push(BurgessRow {
            p,
            theta,
            x,
            abs_sum,
            savings,
            ratio: abs_sum * savings / x,
        });
    }
    Ok(rows)
}

/// `log a(q) + ∫_{a(q)}^q max(x)/x dx` with
/// `max(x) = max(1/log x, (log R(x))^{3/2}/√R(x), R(x)/c(x))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralBound {
    pub log_a: f64,
    pub integral: f64,
}

impl IntegralBound {
    pub fn total(&self) -> f64 {
        self.log_a + self.integral
    }
}

/// Integrand after `u = log x`: `max(1/u, (log R)^{3/2}/√R, R/c)`.
pub fn integral_bound_integrand(u: f64, profile: &BoundProfile) -> f64 {
    let ln_r = profile.r.ln_eval_ln(u);
    let r = libm::exp(ln_r);
    let mv = ln_r * libm::sqrt(ln_r) / libm::sqrt(r);
    let burgess = libm::exp(ln_r - profile.c.ln_eval_ln(u));
    (1.0 / u).max(mv).max(burgess)
}

pub fn general_pv_integral(q: f64, profile: &BoundProfile) -> Result<IntegralBound> {
    general_pv_integral_ln(libm::log(q), profile)
}

/// As [`general_pv_integral`], taking `log q` so that moduli beyond the
/// `f64` range can be explored.
pub fn general_pv_integral_ln(ln_q: f64, profile: &BoundProfile) -> Result<IntegralBound> {
    general_pv_integral_tol(ln_q, profile, INTEGRAL_REL_TOL)
}

pub fn general_pv_integral_tol(ln_q: f64, profile: &BoundProfile, rel_tol: f64) -> Result<IntegralBound> {
    if !(ln_q > 1.0) {
        return Err(Error::domain("q", "log q must exceed 1"));
    }
    let ln_a = profile.a.ln_eval_ln(ln_q);
    let ln_a = if ln_a > ln_q && ln_a - ln_q <= 1e-12 * ln_q {
        ln_q
    } else {
        ln_a
    };
    if !(ln_a > 0.0 && ln_a <= ln_q) {
        return Err(Error::domain(
            "profile",
            format!("need 1 < a(q) <= q, got log a(q) = {ln_a}"),
        ));
    }
    if profile.l.ln_eval_ln(ln_q) > ln_a {
        return Err(Error::domain("profile", "l(q) exceeds a(q)"));
    }
    // 2 <= R(x) <= a(q) on [a(q), q], checked on a grid in log x
    const GRID: usize = 2048;
    for i in 0..=GRID {
        let u = ln_a + (ln_q - ln_a) * i as f64 / GRID as f64;
        if u <= 0.0 {
            continue;
        }
        let ln_r = profile.r.ln_eval_ln(u);
        if !(ln_r >= LN_2 && ln_r <= ln_a) {
            return Err(Error::domain(
                "profile",
                format!(
                    "R(x) = {} outside [2, a(q) = {}] at x = exp({u})",
                    libm::exp(ln_r),
                    libm::exp(ln_a)
                ),
            ));
        }
    }
    let integral = adaptive_simpson(|u| integral_bound_integrand(u, profile), ln_a, ln_q, rel_tol);
    Ok(IntegralBound { log_a: ln_a, integral })
}

/// One row of the `Σ2` scan.
#[derive(Debug, Clone, PartialEq)]
pub enum Sigma2Row {
    Measured {
        q: u64,
        label: String,
        exponents: Vec<u64>,
        n: u64,
        a_q: f64,
        sigma2_abs: f64,
        bound: f64,
        ratio: f64,
    },
    Skipped {
        q: u64,
        reason: String,
    },
}

impl Sigma2Row {
    pub fn ratio(&self) -> Option<f64> {
        match self {
            Sigma2Row::Measured { ratio, .. } => Some(*ratio),
            Sigma2Row::Skipped { .. } => None,
        }
    }
}

/// `max(log(log q / log a), (log R)^{3/2}/√R · log(q/a))`.
pub fn sigma2_bound_shape(q: f64, a: f64, r: f64) -> f64 {
    let lr = libm::log(r);
    libm::log(libm::log(q) / libm::log(a)).max(lr * libm::sqrt(lr) / libm::sqrt(r) * libm::log(q / a))
}

/// `|Σ2|` at the window midpoint for every even primitive `χ mod q`.
pub fn sigma2_rows(q: u64, profile: &BoundProfile) -> Result<Vec<Sigma2Row>> {
    let skip = |reason: String| Ok(alloc::vec![Sigma2Row::Skipped { q, reason }]);
    if q < 3 {
        return skip("modulus below 3".into());
    }
    let qf = q as f64;
    let a_q = clamp_to_modulus(profile.a.eval(qf), qf);
    let r_q = profile.r.eval(qf);
    if !(2.0 <= r_q && r_q < a_q && a_q <= qf) {
        return skip(format!("profile ordering fails: R = {r_q}, a = {a_q}"));
    }
    let (lower, upper) = window_endpoints(qf, a_q, r_q);
    let window = window_integers(lower, upper);
    if window.is_empty() {
        return skip("empty window".into());
    }
    let n = (window.start() + window.end()) / 2;
    let group = Arc::new(unit_group(q)?);
    let chars: Vec<DirichletCharacter> = enumerate_characters(&group)
        .into_iter()
        .filter(|c| c.is_even() && c.is_primitive())
        .collect();
    if chars.is_empty() {
        return skip("no even primitive character".into());
    }
    let bound = sigma2_bound_shape(qf, a_q, r_q);
    let mut rows = Vec::with_capacity(chars.len());
    for chi in &chars {
        let sigma2_abs = if 2.0 * a_q >= qf {
            0.0
        } else {
            FourierExpansion::new(chi)?.split(n, a_q)?.sigma2.norm()
        };
        let ratio = if sigma2_abs == 0.0 { 0.0 } else { sigma2_abs / bound };
        rows.push(Sigma2Row::Measured {
            q,
            label: chi.label(),
            exponents: chi.exponents().to_vec(),
            n,
            a_q,
            sigma2_abs,
            bound,
            ratio,
        });
    }
    sort_by_exponents(&mut rows, |r| match r {
        Sigma2Row::Measured { exponents, .. } => exponents.as_slice(),
        Sigma2Row::Skipped { .. } => &[],
    });
    Ok(rows)
}

pub fn sigma2_ratio_scan(q_list: &[u64], profile: &BoundProfile) -> Result<Vec<Sigma2Row>> {
    let mut rows = Vec::new();
    for &q in q_list {
        rows.extend(sigma2_rows(q, profile)?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve_primes;
    use crate::characters::characters_mod;
    use crate::quad::composite_simpson;
    use core::f64::consts::PI;

    #[test]
    fn forms_parse_and_evaluate() {
        let f: FunctionalForm = "logpow:2.5".parse().unwrap();
        assert_eq!(f, FunctionalForm::LogPow(2.5));
        assert!((f.eval(1e6) - libm::pow(libm::log(1e6), 2.5)).abs() < 1e-9);
        let g: FunctionalForm = "powlog:0.5,1".parse().unwrap();
        assert!((g.eval(100.0) - 10.0 * libm::log(100.0)).abs() < 1e-12);
        assert!("const:0".parse::<FunctionalForm>().is_err());
        assert!("cubic:2".parse::<FunctionalForm>().is_err());
        assert!("logpow:1,2".parse::<FunctionalForm>().is_err());
        for form in ["const:3", "logpow:-1", "powlog:0.25,2", "expll:1.5"] {
            let f: FunctionalForm = form.parse().unwrap();
            assert_eq!(f.to_string(), form);
            for x in [3.0, 10.0, 1e6] {
                assert!(f.eval(x) > 0.0);
                assert!((libm::log(f.eval(x)) - f.ln_eval_ln(libm::log(x))).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn profile_round_trip() {
        let p: BoundProfile = "a=powlog:0.5,1,R=const:4,c=logpow:3,l=const:1,eps=0.25"
            .parse()
            .unwrap();
        assert_eq!(p.r, FunctionalForm::Const(4.0));
        assert_eq!(
            p.a,
            FunctionalForm::PowLog {
                power: 0.5,
                log_power: 1.0
            }
        );
        assert_eq!(p.eps, 0.25);
        assert_eq!(p.to_string().parse::<BoundProfile>().unwrap(), p);
        assert!("z=const:1".parse::<BoundProfile>().is_err());
        assert!("const:1".parse::<BoundProfile>().is_err());
        assert_eq!("".parse::<BoundProfile>().unwrap(), BoundProfile::default());
    }

    #[test]
    fn pomerance_examples() {
        for x in [1.0, 10.0, 1e3] {
            assert!(pomerance_trig_sum(PI, x) < 1e-12);
        }
        assert!((pomerance_trig_sum(PI / 2.0, 4.0) - 4.0 / 3.0).abs() < 1e-15);
        let b1 = pomerance_bound(1.0, 0.5772);
        assert!((b1 - FRAC_2_PI * (0.5772 + LN_2 + 3.0)).abs() < 1e-15);
        assert!((b1 - 2.7186).abs() < 1e-4);
        let big = 1e12;
        assert!((pomerance_bound(big, EULER_GAMMA) / (FRAC_2_PI * libm::log(big)) - 1.0) < 0.05);
        let sums = pomerance_trig_sums(1.0, &[1.0, 2.0, 10.0]);
        assert!((sums[1] - (libm::sin(1.0) + libm::fabs(libm::sin(2.0)) / 2.0)).abs() < 1e-15);
        assert_eq!(sums[2], pomerance_trig_sum(1.0, 10.0));
    }

    #[test]
    fn pomerance_compensated_vs_reverse_order() {
        // oracle: summation from the smallest term upward
        for alpha in [0.1, 1.0, 2.5, 3.0] {
            let x = 100_000u64;
            let oracle: f64 = (1..=x)
                .rev()
                .map(|n| libm::fabs(libm::sin(alpha * n as f64)) / n as f64)
                .sum();
            assert!((pomerance_trig_sum(alpha, x as f64) - oracle).abs() < 1e-11);
        }
    }

    #[test]
    fn mv_bound_examples() {
        let e = core::f64::consts::E;
        let v = mv_bound(e * e, e);
        assert!((v - (e * e / 2.0 + e * e / libm::sqrt(e))).abs() < 1e-12);
        // decreasing in R beyond R = e^3
        let mut prev = f64::INFINITY;
        for k in 0..40 {
            let r = libm::exp(3.0 + k as f64 * 0.5);
            let v = mv_bound(1e6, r);
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn pvhild_rhs_examples() {
        let full = BoundProfile {
            a: FunctionalForm::PowLog {
                power: 1.0,
                log_power: 0.0,
            },
            r: FunctionalForm::Const(2.0),
            ..Default::default()
        };
        for q in [1e4, 1e6, 1e9] {
            let rhs = pvhild_rhs(q, &full).unwrap();
            let lead = 4.0 / PI * libm::sqrt(q) * libm::log(q);
            // exact gap to the leading term
            let gap = 4.0 / PI * libm::sqrt(q) * (EULER_GAMMA + LN_2 + 3.0 / q);
            assert!(((rhs.main - lead) - gap).abs() < 1e-6 * rhs.main);
        }
        let t1 = BoundProfile {
            a: FunctionalForm::LogPow(3.0),
            r: FunctionalForm::LogPow(2.5),
            ..Default::default()
        };
        let q = 1e12;
        let rhs = pvhild_rhs(q, &t1).unwrap();
        let lead = 4.0 * 3.0 / PI * libm::sqrt(q) * libm::log(libm::log(q));
        assert!((rhs.main - lead) / lead < 0.5 && rhs.main > lead);

        let p = BoundProfile {
            a: FunctionalForm::LogPow(5.0),
            r: FunctionalForm::LogPow(2.5),
            ..Default::default()
        };
        let r = pvhild_rhs(1e6, &p).unwrap();
        assert!(r.main.is_finite() && r.main > 0.0);
        assert!(r.log_branch.is_finite() && r.mv_branch > 0.0);
        assert!(pvhild_rhs(1e3, &p).is_err());
    }

    #[test]
    fn pv_scan_small_and_monotone_in_c() {
        let rows = pv_ratio_rows(11, &BoundProfile::default()).unwrap();
        assert!(matches!(rows.as_slice(), [PvRow::Skipped { .. }]));
        let rows = pv_ratio_rows(3, &BoundProfile::default()).unwrap();
        assert!(matches!(rows.as_slice(), [PvRow::Skipped { .. }]));

        let primes: Vec<u64> = sieve_primes(3000).primes().iter().copied().filter(|&p| p > 2).collect();
        let max_ratio = |c: f64| {
            let profile = BoundProfile {
                c_exp: c,
                ..Default::default()
            };
            pv_ratio_scan(&primes, &profile)
                .unwrap()
                .iter()
                .filter_map(PvRow::ratio)
                .fold(0.0f64, f64::max)
        };
        let (m1, m2, m3) = (max_ratio(0.5), max_ratio(1.0), max_ratio(2.0));
        assert!(m1.is_finite() && m1 > 0.0);
        assert!(m1 <= m2 && m2 <= m3, "{m1} {m2} {m3}");
    }

    #[test]
    fn pv_rows_match_direct_sums() {
        let rows = pv_ratio_rows(1009, &BoundProfile::default()).unwrap();
        for row in &rows {
            if let PvRow::Measured {
                label,
                n,
                abs_sum,
                window,
                ..
            } = row
            {
                let chi = DirichletCharacter::from_label(label).unwrap();
                assert!(chi.is_even() && !chi.is_principal());
                assert!((partial_sum(&chi, *n).norm() - abs_sum).abs() < 1e-9);
                for m in window.0..=window.1 {
                    assert!(partial_sum(&chi, m).norm() <= abs_sum + 1e-9);
                }
            }
        }
    }

    #[test]
    fn burgess_examples() {
        let profile = BoundProfile::conjecture_one(0.5);
        let l101 = legendre_character(101).unwrap();
        assert_eq!(burgess_profile_ratio(&l101, 101.0, &profile).unwrap(), 0.0);
        let p = &characters_mod(101).unwrap()[0];
        assert!(burgess_profile_ratio(p, 50.0, &profile).is_err());
        assert!(burgess_profile_ratio(&l101, 2.0, &profile).is_err());
        let high_l = BoundProfile {
            l: FunctionalForm::Const(60.0),
            ..profile
        };
        assert!(burgess_profile_ratio(&l101, 50.0, &high_l).is_err());
        let rows = burgess_rows(10_007, &[0.5, 0.75, 1.0], &profile).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[2].ratio, 0.0);
        for row in &rows {
            let direct = burgess_profile_ratio(&legendre_character(10_007).unwrap(), row.x, &profile).unwrap();
            assert!((row.ratio - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn integral_two_step_sizes() {
        let profile = BoundProfile {
            a: FunctionalForm::PowLog {
                power: 0.5,
                log_power: 0.0,
            },
            r: FunctionalForm::Const(4.0),
            c: FunctionalForm::LogPow(3.0),
            ..Default::default()
        };
        for q in [1e4, 1e8, 1e15] {
            let v = general_pv_integral(q, &profile).unwrap();
            let (la, lq) = (v.log_a, libm::log(q));
            let oracle = composite_simpson(|u| integral_bound_integrand(u, &profile), la, lq, 200_000);
            assert!((v.integral - oracle).abs() <= 1e-6 * oracle);
            let tight = general_pv_integral_tol(lq, &profile, 1e-9).unwrap();
            assert!((v.integral - tight.integral).abs() <= 1e-6 * tight.integral);
            // integrand >= 1/log x >= 1/log q
            assert!(v.integral >= (lq - la) / lq);
        }
    }

    #[test]
    fn integral_monotone_in_q() {
        let profile = BoundProfile {
            a: FunctionalForm::PowLog {
                power: 0.5,
                log_power: 0.0,
            },
            r: FunctionalForm::Const(4.0),
            ..Default::default()
        };
        let mut prev = 0.0;
        for k in 2..40 {
            let v = general_pv_integral(libm::pow(10.0, k as f64), &profile)
                .unwrap()
                .total();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn integral_preconditions() {
        let bad_r = BoundProfile {
            a: FunctionalForm::LogPow(2.0),
            r: FunctionalForm::LogPow(3.0),
            ..Default::default()
        };
        match general_pv_integral(1e6, &bad_r) {
            Err(Error::Domain { reason, .. }) => assert!(reason.contains("at x = exp(")),
            other => panic!("{other:?}"),
        }
        let big_a = BoundProfile {
            a: FunctionalForm::PowLog {
                power: 2.0,
                log_power: 0.0,
            },
            ..Default::default()
        };
        assert!(general_pv_integral(1e6, &big_a).is_err());
        let big_l = BoundProfile {
            a: FunctionalForm::PowLog {
                power: 0.5,
                log_power: 0.0,
            },
            r: FunctionalForm::Const(4.0),
            l: FunctionalForm::PowLog {
                power: 0.9,
                log_power: 0.0,
            },
            ..Default::default()
        };
        assert!(general_pv_integral(1e6, &big_l).is_err());
    }

    #[test]
    fn integral_conjecture_one_shape() {
        // a(q) = exp((log log q)^{1+ε}): total / (log log q)^{1+ε} stays bounded
        // and decreases (the remainder is O(log log q))
        let eps = 0.5;
        let profile = BoundProfile {
            a: FunctionalForm::ExpLogLogPow(1.0 + eps),
            ..BoundProfile::conjecture_one(eps)
        };
        let mut prev = f64::INFINITY;
        for ln_q in [600.0, 1e4, 1e6, 1e9] {
            let v = general_pv_integral_ln(ln_q, &profile).unwrap();
            let shape = libm::pow(libm::log(ln_q), 1.0 + eps);
            assert!((v.log_a - shape).abs() < 1e-9 * shape);
            let ratio = v.total() / shape;
            assert!(ratio > 1.0 && ratio < prev && ratio < 4.0, "ln q = {ln_q}: {ratio}");
            prev = ratio;
        }
    }

    #[test]
    fn sigma2_rows_examples() {
        // a(q) in [q/2, q]: Σ2 vanishes
        let wide = BoundProfile {
            a: FunctionalForm::PowLog {
                power: 1.0,
                log_power: 0.0,
            },
            r: FunctionalForm::Const(2.0),
            ..Default::default()
        };
        for row in sigma2_rows(101, &wide).unwrap() {
            match row {
                Sigma2Row::Measured { sigma2_abs, ratio, .. } => assert_eq!((sigma2_abs, ratio), (0.0, 0.0)),
                Sigma2Row::Skipped { reason, .. } => panic!("{reason}"),
            }
        }
        let profile = BoundProfile {
            a: FunctionalForm::LogPow(2.0),
            r: FunctionalForm::Const(2.0),
            ..Default::default()
        };
        let rows = sigma2_rows(1013, &profile).unwrap();
        assert!(!rows.is_empty());
        for row in &rows {
            if let Sigma2Row::Measured {
                label,
                n,
                a_q,
                sigma2_abs,
                ..
            } = row
            {
                let chi = DirichletCharacter::from_label(label).unwrap();
                let split = crate::charsums::fourier_split(&chi, *n, *a_q).unwrap();
                assert!((split.sigma2.norm() - sigma2_abs).abs() < 1e-9);
            }
        }
        assert!(matches!(
            sigma2_rows(101, &BoundProfile::default()).unwrap()[0],
            Sigma2Row::Skipped { .. }
        ));
    }
}
