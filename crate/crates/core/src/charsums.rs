//! Character sums: prefix sums, Gauss sums, the Fourier expansion of a
//! primitive character and the twisted-sum decomposition by `gcd(n, s)`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::arith::{euler_phi, factorize, gcd, unit_group};
use crate::characters::{enumerate_characters, DirichletCharacter, NO_PHASE};
use crate::trig::{e, unit_root, RootTable};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `S(0), S(1), ..., S(q)` with `S(N) = sum_{n <= N} χ(n)`.
#[derive(Debug, Clone)]
pub struct PrefixSumTable {
    label: String,
    modulus: u64,
    principal: bool,
    phi: u64,
    sums: Vec<Complex64>,
}

impl PrefixSumTable {
    pub fn new(chi: &DirichletCharacter) -> Self {
        let q = chi.modulus();
        let values = chi.value_table();
        let mut sums = Vec::with_capacity(q as usize + 1);
        let mut acc = ZERO;
        sums.push(acc);
        for n in 1..=q {
            acc += values[(n % q) as usize];
            sums.push(acc);
        }
        PrefixSumTable {
            label: chi.label(),
            modulus: q,
            principal: chi.is_principal(),
            phi: chi.group().phi(),
            sums,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `S(0..=q)`.
    pub fn values(&self) -> &[Complex64] {
        &self.sums
    }

    /// `S(N)` for any `N`, using periodicity. For the principal character
    /// every full period contributes `φ(q)`.
    pub fn get(&self, n: u64) -> Complex64 {
        let periods = n / self.modulus;
        let rest = self.sums[(n % self.modulus) as usize];
        if self.principal {
            rest + Complex64::new((periods * self.phi) as f64, 0.0)
        } else {
            rest
        }
    }

    /// `(N*, |S(N*)|)` maximizing `|S(N)|` over `1 <= N <= q`, smallest `N`
    /// on ties.
    pub fn max_abs(&self) -> (u64, f64) {
        let mut best = (1u64, self.sums[1].norm());
        for (n, s) in self.sums.iter().enumerate().skip(2) {
            let v = s.norm();
            if v > best.1 {
                best = (n as u64, v);
            }
        }
        best
    }
}

/// `S(N, χ) = sum_{n=1}^N χ(n)`, reducing `N` modulo `q` first.
pub fn partial_sum(chi: &DirichletCharacter, n: u64) -> Complex64 {
    let q = chi.modulus();
    let rest: Complex64 = (1..=n % q).map(|k| chi.evaluate(k as i64)).sum();
    if chi.is_principal() {
        rest + Complex64::new(((n / q) * chi.group().phi()) as f64, 0.0)
    } else {
        rest
    }
}

/// Largest `|S(N, χ)|` over one period; see [`PrefixSumTable::max_abs`].
pub fn max_partial_sum(chi: &DirichletCharacter) -> Result<(u64, f64)> {
    if chi.is_principal() {
        return Err(Error::domain("chi", "principal character sums grow without bound"));
    }
    Ok(PrefixSumTable::new(chi).max_abs())
}

/// `τ(χ) = sum_{a=1}^q χ(a) e(a/q)` by direct summation.
pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    let q = chi.modulus();
    gauss_sum_from_values(&chi.value_table(), &RootTable::new(q))
}

fn gauss_sum_from_values(values: &[Complex64], roots: &RootTable) -> Complex64 {
    let q = values.len() as u64;
    (1..=q).map(|a| values[(a % q) as usize] * roots.get(a)).sum()
}

/// The finite Fourier expansion of a primitive character,
/// `χ(n) = τ(χ̄)^{-1} sum_{0<|a|<q/2} χ̄(a) e(an/q)`, summed over `n <= N`.
///
/// Values of `χ̄` and the roots `e(j/q)` are tabulated once so that each
/// query costs `O(q)`.
#[derive(Debug, Clone)]
pub struct FourierExpansion {
    modulus: u64,
    even: bool,
    conj_values: Vec<Complex64>,
    roots: RootTable,
    gauss_conj: Complex64,
}

impl FourierExpansion {
    pub fn new(chi: &DirichletCharacter) -> Result<Self> {
        let q = chi.modulus();
        if !chi.is_primitive() || q < 3 {
            return Err(Error::domain(
                "chi",
                format!("{chi} is not primitive with modulus >= 3"),
            ));
        }
        let conj_values = chi.conj().value_table();
        let roots = RootTable::new(q);
        let gauss_conj = gauss_sum_from_values(&conj_values, &roots);
        Ok(FourierExpansion {
            modulus: q,
            even: chi.is_even(),
            conj_values,
            roots,
            gauss_conj,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `τ(χ̄)`.
    pub fn gauss_sum_conj(&self) -> Complex64 {
        self.gauss_conj
    }

    /// Residues `a` with `0 < |a| < q/2`, as signed integers.
    fn range(&self) -> impl Iterator<Item = i64> + '_ {
        let half = ((self.modulus - 1) / 2) as i64;
        (1..=half).flat_map(|a| [a, -a])
    }

    fn conj(&self, a: i64) -> Complex64 {
        self.conj_values[a.rem_euclid(self.modulus as i64) as usize]
    }

    fn root(&self, a: i64) -> Complex64 {
        self.roots.get(a.rem_euclid(self.modulus as i64) as u64)
    }

    /// `τ(χ̄)^{-1} sum_{0<|a|<q/2} χ̄(a) (e(aN/q) - 1) / (1 - e(-a/q))`.
    pub fn sum_at(&self, n: u64) -> Complex64 {
        let n = (n % self.modulus) as i64;
        let total: Complex64 = self
            .range()
            .map(|a| {
                let c = self.conj(a);
                if c == ZERO {
                    return ZERO;
                }
                c * (self.root(a * n) - 1.0) / (1.0 - self.root(-a))
            })
            .sum();
        total / self.gauss_conj
    }

    fn inner_term(&self, a: i64, n: i64) -> Complex64 {
        self.conj(a) * (self.root(a * n) - 1.0) / a as f64
    }

    /// `sum_{0<|a|<q/2} χ̄(a) (e(aN/q) - 1) / a`.
    pub fn inner_sum(&self, n: u64) -> Complex64 {
        let n = (n % self.modulus) as i64;
        self.range().map(|a| self.inner_term(a, n)).sum()
    }

    /// The inner sum split at `|a| <= a_q`.
    pub fn split(&self, n: u64, a_q: f64) -> Result<FourierSplit> {
        check_cut(a_q, self.modulus)?;
        let n = (n % self.modulus) as i64;
        let mut out = FourierSplit {
            sigma1: ZERO,
            sigma2: ZERO,
        };
        for a in self.range() {
            let t = self.inner_term(a, n);
            if a.unsigned_abs() as f64 <= a_q {
                out.sigma1 += t;
            } else {
                out.sigma2 += t;
            }
        }
        Ok(out)
    }

    /// `2i sum_{1<=a<=a_q} χ̄(a) sin(2πaN/q) / a`, valid for even `χ`.
    pub fn sigma1_sine(&self, n: u64, a_q: f64) -> Result<Complex64> {
        if !self.even {
            return Err(Error::domain("chi", "the sine form needs an even character"));
        }
        check_cut(a_q, self.modulus)?;
        Ok(sine_form(&self.conj_values, &self.roots, n, a_q))
    }

    /// `(|S(N)| - (√q/2π)|inner sum|) / √q`: the constant absorbed by the
    /// `O(√q)` term when passing from the expansion to the `1/a` form.
    pub fn residual_constant(&self, n: u64, partial: Complex64) -> f64 {
        let sq = libm::sqrt(self.modulus as f64);
        (partial.norm() - sq / TAU * self.inner_sum(n).norm()) / sq
    }
}

fn sine_form(conj_values: &[Complex64], roots: &RootTable, n: u64, a_q: f64) -> Complex64 {
    let q = roots.order();
    let n = n % q;
    let top = libm::floor(a_q) as u64;
    let sum: Complex64 = (1..=top)
        .map(|a| conj_values[(a % q) as usize] * (roots.get(a * n % q).im / a as f64))
        .sum();
    Complex64::new(0.0, 2.0) * sum
}

fn check_cut(a_q: f64, q: u64) -> Result<()> {
    if !(a_q >= 1.0 && 2.0 * a_q < q as f64) {
        return Err(Error::domain("a_q", format!("{a_q} outside [1, q/2) for q = {q}")));
    }
    Ok(())
}

/// The two parts of the inner sum: `Σ1` over `0<|a|<=a_q`, `Σ2` over
/// `a_q<|a|<q/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierSplit {
    pub sigma1: Complex64,
    pub sigma2: Complex64,
}

pub fn fourier_expansion_sum(chi: &DirichletCharacter, n: u64) -> Result<Complex64> {
    Ok(FourierExpansion::new(chi)?.sum_at(n))
}

pub fn fourier_split(chi: &DirichletCharacter, n: u64, a_q: f64) -> Result<FourierSplit> {
    FourierExpansion::new(chi)?.split(n, a_q)
}

/// `Σ1` in sine form; needs only an even character.
pub fn sigma1_sine_form(chi: &DirichletCharacter, n: u64, a_q: f64) -> Result<Complex64> {
    if !chi.is_even() {
        return Err(Error::domain("chi", "the sine form needs an even character"));
    }
    let q = chi.modulus();
    check_cut(a_q, q)?;
    Ok(sine_form(&chi.conj().value_table(), &RootTable::new(q), n, a_q))
}

/// `sum_{n <= x} χ(n) e(αn)` by direct summation.
pub fn twisted_sum(chi: &DirichletCharacter, alpha: f64, x: f64) -> Complex64 {
    let top = if x >= 1.0 { libm::floor(x) as u64 } else { 0 };
    (1..=top)
        .map(|n| {
            let v = chi.evaluate(n as i64);
            if v == ZERO {
                ZERO
            } else {
                v * e(alpha * n as f64)
            }
        })
        .sum()
}

/// One `(d, t, ψ)` term of the decomposition.
#[derive(Debug, Clone)]
pub struct TwistTerm {
    pub d: u64,
    pub t: u64,
    pub psi: DirichletCharacter,
    /// `χ(d)/φ(t) · sum_{1<=a<=t} e(ra/t) ψ̄(a)`.
    pub coefficient: Complex64,
}

/// `T(u) = sum_{n<=u} χ(n) e(rn/s)` regrouped by `d = gcd(n, s)`:
///
/// `T(u) = sum_{dt=s} χ(d)/φ(t) sum_{ψ mod t} sum_{a<=t} e(ra/t) ψ̄(a) sum_{m<=u/d} χψ(m)`.
#[derive(Debug, Clone)]
pub struct TwistDecomposition {
    chi: DirichletCharacter,
    r: i64,
    s: u64,
    terms: Vec<TwistTerm>,
}

impl TwistDecomposition {
    pub fn new(chi: &DirichletCharacter, r: i64, s: u64) -> Result<Self> {
        if s == 0 {
            return Err(Error::domain("s", "denominator must be positive"));
        }
        if gcd(r.unsigned_abs(), s) != 1 {
            return Err(Error::domain("r", format!("gcd({r}, {s}) > 1")));
        }
        let divisors = if s == 1 {
            alloc::vec![1]
        } else {
            factorize(s)?.divisors()
        };
        let mut terms = Vec::new();
        for d in divisors {
            let t = s / d;
            let group = Arc::new(unit_group(t)?);
            let phi_t = if t == 1 { 1 } else { euler_phi(&factorize(t)?) };
            let chi_d = chi.evaluate(d as i64);
            for psi in enumerate_characters(&group) {
                let g: Complex64 = (1..=t)
                    .map(|a| unit_root(r * a as i64, t) * psi.evaluate(a as i64).conj())
                    .sum();
                terms.push(TwistTerm {
                    d,
                    t,
                    psi,
                    coefficient: chi_d * g / phi_t as f64,
                });
            }
        }
        Ok(TwistDecomposition {
            chi: chi.clone(),
            r,
            s,
            terms,
        })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn terms(&self) -> &[TwistTerm] {
        &self.terms
    }

    /// Divisor pairs `(d, t)` with `dt = s`, each once.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        let mut pairs: Vec<(u64, u64)> = self.terms.iter().map(|t| (t.d, t.t)).collect();
        pairs.dedup();
        pairs
    }

    /// Reassembles `T(u)` from the decomposition.
    pub fn evaluate(&self, u: f64) -> Complex64 {
        let top = if u >= 1.0 { libm::floor(u) as u64 } else { 0 };
        let chi_table = self.chi.phase_table();
        let q = self.chi.modulus();
        let chi_roots = RootTable::new(self.chi.order());
        let chi_at = |m: u64| match chi_table[(m % q) as usize] {
            NO_PHASE => ZERO,
            ph => chi_roots.get(ph as u64),
        };
        let mut total = ZERO;
        for term in &self.terms {
            if term.coefficient == ZERO {
                continue;
            }
            let inner: Complex64 = (1..=top / term.d)
                .map(|m| chi_at(m) * term.psi.evaluate(m as i64))
                .sum();
            total += term.coefficient * inner;
        }
        total
    }
}

pub fn twisted_decompose(chi: &DirichletCharacter, r: i64, s: u64, u: f64) -> Result<Complex64> {
    Ok(TwistDecomposition::new(chi, r, s)?.evaluate(u))
}
