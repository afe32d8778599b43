//! Real multiplicative functions bounded by 1: mean values, the Halász
//! functional, mean-value differences and the short-sum threshold scan.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith::{gcd, is_prime, pow_mod};
use crate::characters::{legendre_character, DirichletCharacter, NO_PHASE};
use crate::{Error, Result};

/// Largest supported domain limit `x_max`.
pub const MAX_DOMAIN: u64 = 50_000_000;

/// Default γ-grid density (points per unit) for [`halasz_s`].
pub const DEFAULT_GRID_DENSITY: u32 = 64;

/// Default `O(1)` constant `K` in [`s_prime`].
pub const DEFAULT_K: f64 = 0.0;

/// Default exponent `B` of the regime `x' <= x^B` in [`diff_ratio`].
pub const DEFAULT_B: f64 = 4.0;

/// Textual function specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSpec {
    One,
    Legendre(u64),
    Liouville,
    /// A real character, by label.
    Character(String),
    /// CSV of `p,k,value` rows; read by the caller.
    Table(String),
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once(':') {
            None if s == "one" => Ok(FunctionSpec::One),
            None if s == "liouville" => Ok(FunctionSpec::Liouville),
            Some(("legendre", p)) => p
                .trim()
                .parse()
                .map(FunctionSpec::Legendre)
                .map_err(|_| Error::parse(s, "bad prime")),
            Some(("char", label)) => Ok(FunctionSpec::Character(label.trim().to_string())),
            Some(("table", path)) if !path.trim().is_empty() => Ok(FunctionSpec::Table(path.trim().to_string())),
            _ => Err(Error::parse(
                s,
                "expected one, legendre:<p>, liouville, char:<label> or table:<path>",
            )),
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::One => f.write_str("one"),
            FunctionSpec::Legendre(p) => write!(f, "legendre:{p}"),
            FunctionSpec::Liouville => f.write_str("liouville"),
            FunctionSpec::Character(label) => write!(f, "char:{label}"),
            FunctionSpec::Table(path) => write!(f, "table:{path}"),
        }
    }
}

/// A real multiplicative `f` with `|f| <= 1`, tabulated on `[1, x_max]`.
#[derive(Debug, Clone)]
pub struct MultiplicativeFunction {
    name: String,
    x_max: u64,
    // index 0 unused
    values: Vec<f64>,
    prefix: Vec<f64>,
    primes: Vec<u64>,
}

impl MultiplicativeFunction {
    /// `f ≡ 1`.
    pub fn one(x_max: u64) -> Result<Self> {
        Self::build("one".into(), x_max, |_, _| 1.0)
    }

    /// `f(p^k) = (-1)^k`.
    pub fn liouville(x_max: u64) -> Result<Self> {
        Self::build("liouville".into(), x_max, |_, k| if k % 2 == 0 { 1.0 } else { -1.0 })
    }

    pub fn legendre(p: u64, x_max: u64) -> Result<Self> {
        let chi = legendre_character(p)?;
        let mut f = Self::from_character(&chi, x_max)?;
        f.name = format!("legendre:{p}");
        Ok(f)
    }

    /// Backed by a real Dirichlet character.
    pub fn from_character(chi: &DirichletCharacter, x_max: u64) -> Result<Self> {
        if !chi.is_real() {
            return Err(Error::domain("chi", format!("{} is not real", chi.label())));
        }
        check_domain(x_max)?;
        let q = chi.modulus();
        let period: Vec<f64> = chi
            .phase_table()
            .into_iter()
            .map(|ph| match ph {
                NO_PHASE => 0.0,
                0 => 1.0,
                _ => -1.0,
            })
            .collect();
        let mut values = vec![0.0; x_max as usize + 1];
        for (n, v) in values.iter_mut().enumerate().skip(1) {
            *v = period[(n as u64 % q) as usize];
        }
        Ok(Self::finish(format!("char:{}", chi.label()), x_max, values))
    }

    /// From explicit prime-power values. A missing `(p, k)` with `k >= 2`
    /// defaults to `f(p)^k`; a missing prime `p <= x_max` is an error.
    pub fn from_table(name: String, table: &BTreeMap<(u64, u32), f64>, x_max: u64) -> Result<Self> {
        for (&(p, k), &v) in table {
            if k == 0 || !is_prime(p) {
                return Err(Error::domain("table", format!("({p}, {k}) is not a prime power")));
            }
            if !(-1.0..=1.0).contains(&v) {
                return Err(Error::domain("table", format!("f({p}^{k}) = {v} outside [-1, 1]")));
            }
        }
        check_domain(x_max)?;
        let spf = smallest_prime_factors(x_max);
        for p in (2..=x_max).filter(|&n| spf[n as usize] as u64 == n) {
            if !table.contains_key(&(p, 1)) {
                return Err(Error::domain("table", format!("no value for prime {p}")));
            }
        }
        Self::build(name, x_max, |p, k| {
            table
                .get(&(p, k))
                .copied()
                .unwrap_or_else(|| libm::pow(table[&(p, 1)], k as f64))
        })
    }

    pub fn from_spec(spec: &FunctionSpec, x_max: u64) -> Result<Self> {
        match spec {
            FunctionSpec::One => Self::one(x_max),
            FunctionSpec::Liouville => Self::liouville(x_max),
            FunctionSpec::Legendre(p) => Self::legendre(*p, x_max),
            FunctionSpec::Character(label) => Self::from_character(&DirichletCharacter::from_label(label)?, x_max),
            FunctionSpec::Table(path) => Err(Error::domain(
                "function",
                format!("table:{path} must be loaded by the caller"),
            )),
        }
    }

    fn build<F: Fn(u64, u32) -> f64>(name: String, x_max: u64, prime_power: F) -> Result<Self> {
        check_domain(x_max)?;
        let spf = smallest_prime_factors(x_max);
        let mut values = vec![0.0; x_max as usize + 1];
        values[1] = 1.0;
        for n in 2..=x_max as usize {
            let p = spf[n] as usize;
            let (mut pk, mut k) = (p, 1u32);
            while (n / pk) % p == 0 {
                pk *= p;
                k += 1;
            }
            values[n] = if pk == n {
                prime_power(p as u64, k)
            } else {
                values[pk] * values[n / pk]
            };
        }
        Ok(Self::finish(name, x_max, values))
    }

    fn finish(name: String, x_max: u64, values: Vec<f64>) -> Self {
        let spf = smallest_prime_factors(x_max);
        let primes = (2..=x_max).filter(|&n| spf[n as usize] as u64 == n).collect();
        let mut prefix = Vec::with_capacity(values.len());
        let mut acc = 0.0;
        for v in &values {
            acc += v;
            prefix.push(acc);
        }
        MultiplicativeFunction {
            name,
            x_max,
            values,
            prefix,
            primes,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn x_max(&self) -> u64 {
        self.x_max
    }

    /// `f(n)` for `1 <= n <= x_max`.
    pub fn value(&self, n: u64) -> Option<f64> {
        (1..=self.x_max).contains(&n).then(|| self.values[n as usize])
    }

    /// `sum_{n <= x} f(n)`.
    pub fn summatory(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        Ok(self.prefix[libm::floor(x) as usize])
    }

    /// Primes up to `x`.
    pub fn primes_up_to(&self, x: f64) -> &[u64] {
        let end = self.primes.partition_point(|&p| (p as f64) <= x);
        &self.primes[..end]
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if !(x >= 1.0) {
            return Err(Error::domain("x", format!("{x} is below 1")));
        }
        if x >= (self.x_max + 1) as f64 {
            return Err(Error::domain(
                "x",
                format!("{x} exceeds the domain limit {}", self.x_max),
            ));
        }
        Ok(())
    }

    /// `sum_{p <= x} (1 - f(p)) / p`.
    pub fn prime_defect(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        Ok(self
            .primes_up_to(x)
            .iter()
            .map(|&p| (1.0 - self.values[p as usize]) / p as f64)
            .sum())
    }
}

fn check_domain(x_max: u64) -> Result<()> {
    if x_max == 0 || x_max > MAX_DOMAIN {
        return Err(Error::domain("x_max", format!("{x_max} outside [1, {MAX_DOMAIN}]")));
    }
    Ok(())
}

// linear sieve; spf[0] = spf[1] = 0
fn smallest_prime_factors(limit: u64) -> Vec<u32> {
    let n = limit as usize;
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        for &p in &primes {
            let m = i * p as usize;
            if p > spf[i] || m > n {
                break;
            }
            spf[m] = p;
        }
    }
    spf
}

/// `(1/x) sum_{n <= x} f(n)`.
pub fn mean_value(f: &MultiplicativeFunction, x: f64) -> Result<f64> {
    Ok(f.summatory(x)? / x)
}

/// Result of minimizing the Halász functional over `|γ| <= 2T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalaszEvaluation {
    pub x: f64,
    pub t: f64,
    pub gamma_star: f64,
    /// `sum_{p<=x} (1 - f(p) cos(γ* log p)) / p`.
    pub s_value: f64,
    /// [`s_prime`] with `K = DEFAULT_K`.
    pub s_prime_value: f64,
    /// `(1 + S) e^{-S} + 1/√T`.
    pub rhs: f64,
}

/// `sum_{p <= x} (1 - f(p) cos(γ log p)) / p`, the real part of the
/// Halász summand for real `f`.
pub fn halasz_objective(f: &MultiplicativeFunction, x: f64, gamma: f64) -> f64 {
    f.primes_up_to(x)
        .iter()
        .map(|&p| {
            let pf = p as f64;
            (1.0 - f.values[p as usize] * libm::cos(gamma * libm::log(pf))) / pf
        })
        .sum()
}

/// Grid search with `density` points per unit over `[-2T, 2T]` (0 always
/// included), then golden-section refinement around the best point.
pub fn halasz_s(f: &MultiplicativeFunction, x: f64, t: f64, density: u32) -> Result<HalaszEvaluation> {
    if !(x >= 3.0) {
        return Err(Error::domain("x", format!("{x} is below 3")));
    }
    if !(t >= 1.0) {
        return Err(Error::domain("T", format!("{t} is below 1")));
    }
    if density == 0 {
        return Err(Error::domain("grid_density", "must be positive"));
    }
    f.check_x(x)?;
    let logs: Vec<(f64, f64)> = f
        .primes_up_to(x)
        .iter()
        .map(|&p| (libm::log(p as f64), f.values[p as usize] / p as f64))
        .collect();
    let base: f64 = f.primes_up_to(x).iter().map(|&p| 1.0 / p as f64).sum();
    let objective = |g: f64| base - logs.iter().map(|&(lp, w)| w * libm::cos(g * lp)).sum::<f64>();

    let span = 2.0 * t;
    let steps = libm::floor(span * density as f64) as i64;
    let h = 1.0 / density as f64;
    let mut best = (0.0, objective(0.0));
    // order 0, +h, -h, +2h, ... so that ties keep the smallest |γ|
    let mut candidates: Vec<f64> = Vec::with_capacity(2 * steps as usize + 2);
    for j in 1..=steps {
        candidates.push(j as f64 * h);
        candidates.push(-(j as f64) * h);
    }
    if (steps as f64) * h < span {
        candidates.push(span);
        candidates.push(-span);
    }
    for g in candidates {
        let v = objective(g);
        if v < best.1 {
            best = (g, v);
        }
    }
    let (lo, hi) = ((best.0 - h).max(-span), (best.0 + h).min(span));
    let refined = golden_section(&objective, lo, hi, 1e-8);
    let refined_value = objective(refined);
    if refined_value < best.1 {
        best = (refined, refined_value);
    }
    let s = best.1.max(0.0);
    Ok(HalaszEvaluation {
        x,
        t,
        gamma_star: best.0,
        s_value: s,
        s_prime_value: s_prime(f, x, DEFAULT_K)?,
        rhs: (1.0 + s) * libm::exp(-s) + 1.0 / libm::sqrt(t),
    })
}

fn golden_section<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalaszCheck {
    pub m_abs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub evaluation: HalaszEvaluation,
}

/// `|M(x, f)|` against `(1 + S(x,T)) e^{-S(x,T)} + 1/√T`.
pub fn halasz_bound_check(f: &MultiplicativeFunction, x: f64, t: f64) -> Result<HalaszCheck> {
    let evaluation = halasz_s(f, x, t, DEFAULT_GRID_DENSITY)?;
    let m_abs = libm::fabs(mean_value(f, x)?);
    Ok(HalaszCheck {
        m_abs,
        rhs: evaluation.rhs,
        ratio: m_abs / evaluation.rhs,
        evaluation,
    })
}

/// `min(log log x + K, sum_{p <= x} (1 - f(p)) / p)`.
pub fn s_prime(f: &MultiplicativeFunction, x: f64, k: f64) -> Result<f64> {
    if !(x >= 3.0) {
        return Err(Error::domain("x", format!("{x} is below 3")));
    }
    let first = libm::log(libm::log(x)) + k;
    Ok(first.min(f.prime_defect(x)?))
}

fn check_pair(f: &MultiplicativeFunction, x: f64, x2: f64) -> Result<()> {
    if !(x >= 3.0 && x <= x2) {
        return Err(Error::domain("x", format!("need 3 <= x <= x', got x = {x}, x' = {x2}")));
    }
    f.check_x(x2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferenceCheck {
    pub diff: f64,
    pub rhs_shape: f64,
    pub ratio: f64,
}

/// `|M(x') - M(x)|` against `(log(2x'/x) / log x') exp(sum_{p<=x'} (1-f(p))/p)`.
pub fn gs_difference_check(f: &MultiplicativeFunction, x: f64, x2: f64) -> Result<DifferenceCheck> {
    check_pair(f, x, x2)?;
    let diff = libm::fabs(mean_value(f, x2)? - mean_value(f, x)?);
    let rhs_shape = libm::log(2.0 * x2 / x) / libm::log(x2) * libm::exp(f.prime_defect(x2)?);
    Ok(DifferenceCheck {
        diff,
        rhs_shape,
        ratio: diff / rhs_shape,
    })
}

/// `|M(x') - M(x)| / (log(2x'/x) / log x')^{1/2 - ε₁}` for `x' <= x^B`.
pub fn diff_ratio(f: &MultiplicativeFunction, x: f64, x2: f64, eps1: f64, b: f64) -> Result<f64> {
    check_pair(f, x, x2)?;
    if libm::log(x2) > b * libm::log(x) {
        return Err(Error::domain("x'", format!("{x2} exceeds x^B = {x}^{b}")));
    }
    let diff = libm::fabs(mean_value(f, x2)? - mean_value(f, x)?);
    let scale = libm::pow(libm::log(2.0 * x2 / x) / libm::log(x2), 0.5 - eps1);
    Ok(diff / scale)
}

/// Both readings of `log(log x' / log(2x'/x))^{1/2+ε}`, with `x' = x^{1+δ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RThreshold {
    /// `log(L^{1/2+ε}) = (1/2+ε) log L`, the value used.
    pub value: f64,
    /// `(log L)^{1/2+ε}`.
    pub alternative: f64,
    /// `L = log x' / log(2x'/x)`.
    pub inner: f64,
    pub delta: f64,
}

pub fn r_threshold(x: f64, x2: f64, eps: f64) -> Result<RThreshold> {
    if !(x >= 3.0 && x <= x2) {
        return Err(Error::domain("x", format!("need 3 <= x <= x', got x = {x}, x' = {x2}")));
    }
    let inner = libm::log(x2) / libm::log(2.0 * x2 / x);
    let li = libm::log(inner);
    Ok(RThreshold {
        value: (0.5 + eps) * li,
        alternative: libm::pow(li, 0.5 + eps),
        inner,
        delta: libm::log(x2) / libm::log(x) - 1.0,
    })
}

/// A rational `ε = num/den` in `(0, 1]` with `den <= 100`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Epsilon {
    num: u32,
    den: u32,
}

impl Epsilon {
    pub const MAX_DENOMINATOR: u32 = 100;

    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::domain("eps", "zero denominator"));
        }
        let g = gcd(num as u64, den as u64).max(1) as u32;
        let (num, den) = (num / g, den / g);
        if den > Self::MAX_DENOMINATOR {
            return Err(Error::domain(
                "eps",
                format!("{num}/{den}: reduced denominator exceeds 100"),
            ));
        }
        if num == 0 || num > den {
            return Err(Error::domain("eps", format!("{num}/{den} outside (0, 1]")));
        }
        Ok(Epsilon { num, den })
    }

    /// The rational with denominator at most 100 equal to `x` up to 1e-12.
    pub fn from_f64(x: f64) -> Result<Self> {
        for den in 1..=Self::MAX_DENOMINATOR {
            let num = libm::round(x * den as f64);
            if num >= 0.0 && libm::fabs(x - num / den as f64) <= 1e-12 {
                return Self::new(num as u32, den);
            }
        }
        Err(Error::domain(
            "eps",
            format!("{x} is not a rational with denominator <= 100"),
        ))
    }

    pub fn num(&self) -> u32 {
        self.num
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact test of `|s| <= ε n`.
    pub fn admits(&self, s: i64, n: u64) -> bool {
        s.unsigned_abs() as u128 * self.den as u128 <= self.num as u128 * n as u128
    }
}

// by value; fractions are kept reduced, so this agrees with `Eq`
impl Ord for Epsilon {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.num as u64 * other.den as u64).cmp(&(other.num as u64 * self.den as u64))
    }
}

impl PartialOrd for Epsilon {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    /// Accepts `num/den` or a decimal.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = n.trim().parse().map_err(|_| Error::parse(s, "bad numerator"))?;
                let d = d.trim().parse().map_err(|_| Error::parse(s, "bad denominator"))?;
                Self::new(n, d)
            }
            None => Self::from_f64(s.parse().map_err(|_| Error::parse(s, "bad number"))?),
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Threshold `N0` beyond which `|S(N, (·/p))| <= εN` up to the horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortSumResult {
    pub p: u64,
    pub eps: Epsilon,
    pub horizon: u64,
    /// `horizon + 1` when the inequality already fails at the horizon.
    pub n0: u64,
    pub censored: bool,
    /// `δ` with `N0 = p^{1/4 - δ}`.
    pub delta_emp: f64,
}

/// Default horizon exponent: the scan runs up to `p^{1/2}`.
pub const DEFAULT_HORIZON_EXP: f64 = 0.5;

/// Prefix sums `S(1), ..., S(h)` of the Legendre symbol mod `p`.
pub fn legendre_prefix_sums(p: u64, h: u64) -> Result<Vec<i64>> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::domain("p", format!("{p} is not an odd prime")));
    }
    let half = (p - 1) / 2;
    let mut sums = Vec::with_capacity(h as usize);
    let mut acc = 0i64;
    for n in 1..=h {
        acc += match pow_mod(n % p, half, p) {
            0 => 0,
            1 => 1,
            _ => -1,
        };
        sums.push(acc);
    }
    Ok(sums)
}

fn horizon_for(p: u64, horizon_exp: f64) -> Result<u64> {
    let h = libm::floor(libm::pow(p as f64, horizon_exp));
    if !(h >= 1.0) {
        return Err(Error::domain(
            "horizon_exp",
            format!("horizon p^{horizon_exp} is below 1"),
        ));
    }
    Ok(h as u64)
}

fn threshold_from_sums(p: u64, eps: Epsilon, sums: &[i64]) -> ShortSumResult {
    let horizon = sums.len() as u64;
    let mut n0 = horizon + 1;
    while n0 > 1 && eps.admits(sums[n0 as usize - 2], n0 - 1) {
        n0 -= 1;
    }
    ShortSumResult {
        p,
        eps,
        horizon,
        n0,
        censored: n0 == horizon + 1,
        delta_emp: 0.25 - libm::log(n0 as f64) / libm::log(p as f64),
    }
}

pub fn short_sum(p: u64, eps: Epsilon, horizon_exp: f64) -> Result<ShortSumResult> {
    let sums = legendre_prefix_sums(p, horizon_for(p, horizon_exp)?)?;
    Ok(threshold_from_sums(p, eps, &sums))
}

/// All `(p, ε)` pairs, ordered by `p` then by the order of `eps_list`.
pub fn short_sum_scan(p_list: &[u64], eps_list: &[Epsilon], horizon_exp: f64) -> Result<Vec<ShortSumResult>> {
    let mut out = Vec::with_capacity(p_list.len() * eps_list.len());
    for &p in p_list {
        let sums = legendre_prefix_sums(p, horizon_for(p, horizon_exp)?)?;
        out.extend(eps_list.iter().map(|&e| threshold_from_sums(p, e, &sums)));
    }
    Ok(out)
}

/// Least-squares fits of `δ_emp` against `ε²`, uncensored results only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaFit {
    pub count: usize,
    pub slope: f64,
    pub intercept: f64,
    pub slope_through_origin: f64,
}

pub fn delta_fit(results: &[ShortSumResult]) -> Option<DeltaFit> {
    let pts: Vec<(f64, f64)> = results
        .iter()
        .filter(|r| !r.censored)
        .map(|r| (r.eps.value() * r.eps.value(), r.delta_emp))
        .collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return None;
    }
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let sxx: f64 = pts.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    let sxy: f64 = pts.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let x2: f64 = pts.iter().map(|&(x, _)| x * x).sum();
    let xy: f64 = pts.iter().map(|&(x, y)| x * y).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some(DeltaFit {
        count: pts.len(),
        slope,
        intercept: my - slope * mx,
        slope_through_origin: xy / x2,
    })
}
