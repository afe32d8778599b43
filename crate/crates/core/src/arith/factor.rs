use alloc::format;
use alloc::vec::Vec;

use super::{gcd, mul_mod, pow_mod};
use crate::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

/// A positive integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The empty factorization of 1.
    pub fn one() -> Self {
        Factorization {
            n: 1,
            factors: Vec::new(),
        }
    }

    /// Builds a factorization from `(prime, exponent)` pairs, checking every
    /// invariant. Pairs may come in any order.
    pub fn from_factors(mut factors: Vec<(u64, u32)>) -> Result<Self> {
        factors.sort_unstable();
        let mut n: u64 = 1;
        for (i, &(p, k)) in factors.iter().enumerate() {
            if k == 0 {
                return Err(Error::domain("factors", format!("zero exponent on {p}")));
            }
            if i > 0 && factors[i - 1].0 == p {
                return Err(Error::domain("factors", format!("repeated prime {p}")));
            }
            if !is_prime(p) {
                return Err(Error::domain("factors", format!("{p} is not prime")));
            }
            for _ in 0..k {
                n = n
                    .checked_mul(p)
                    .filter(|&v| v < 1 << 63)
                    .ok_or_else(|| Error::domain("factors", "product exceeds 2^63 - 1"))?;
            }
        }
        Ok(Factorization { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// All positive divisors in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = alloc::vec![1u64];
        for &(p, k) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..k {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Factorizes `2 <= n <= 2^63 - 1`: trial division up to 10^6, then
/// deterministic Miller–Rabin and Pollard rho on the cofactor.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::domain("n", format!("{n} is below 2")));
    }
    if n >= 1 << 63 {
        return Err(Error::domain("n", "exceeds 2^63 - 1"));
    }
    let mut factors = Vec::new();
    let mut m = n;
    for p in [2u64, 3] {
        let k = strip(&mut m, p);
        if k > 0 {
            factors.push((p, k));
        }
    }
    let mut d = 5u64;
    while d <= TRIAL_LIMIT && d * d <= m {
        for p in [d, d + 2] {
            let k = strip(&mut m, p);
            if k > 0 {
                factors.push((p, k));
            }
        }
        d += 6;
    }
    if m > 1 {
        if d * d > m {
            factors.push((m, 1));
        } else {
            let mut big = Vec::new();
            split(m, &mut big);
            big.sort_unstable();
            for p in big {
                match factors.last_mut() {
                    Some((q, k)) if *q == p => *k += 1,
                    _ => factors.push((p, 1)),
                }
            }
        }
    }
    Ok(Factorization { n, factors })
}

fn strip(m: &mut u64, p: u64) -> u32 {
    let mut k = 0;
    while *m % p == 0 {
        *m /= p;
        k += 1;
    }
    k
}

fn split(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let mut c = 1;
    loop {
        if let Some(d) = pollard_brent(n, c) {
            split(d, out);
            split(n / d, out);
            return;
        }
        c += 1;
    }
}

fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
    let mut g = 1u64;
    let mut r = 1u64;
    let mut q = 1u64;
    const BATCH: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Euler's totient from a factorization.
pub fn euler_phi(f: &Factorization) -> u64 {
    f.factors.iter().map(|&(p, k)| (p - 1) * p.pow(k - 1)).product()
}
