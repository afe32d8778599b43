use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{euler_phi, factorize, gcd, inv_mod, lcm, mul_mod, pow_mod, Factorization};
use crate::{Error, Result};

/// Largest modulus for which a dense discrete-log table is built.
pub const MAX_MODULUS: u64 = 10_000_000;

const NOT_A_UNIT: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Smallest primitive root of an odd prime power.
    PrimitiveRoot,
    /// `-1` modulo `2^e`, `e >= 2`.
    MinusOne,
    /// `5` modulo `2^e`, `e >= 3`.
    Five,
}

/// One cyclic factor of `(Z/qZ)^*`, lifted to a residue mod `q` that is 1
/// on every other prime-power component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub residue: u64,
    pub order: u64,
    pub prime: u64,
    pub prime_power: u64,
    pub kind: GeneratorKind,
}

/// Structure of `(Z/qZ)^*` with a dense discrete-log table.
///
/// A unit `n` is identified with its exponent vector `(k_1, ..., k_r)`,
/// `n = prod g_i^{k_i} mod q`, packed in mixed radix:
/// `index = k_1 + ord_1 * (k_2 + ord_2 * (...))`.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    modulus: u64,
    factorization: Factorization,
    phi: u64,
    exponent: u64,
    generators: Vec<Generator>,
    dlog: Vec<u32>,
}

/// Builds the unit group of `q`. `q = 1` gives the trivial group.
pub fn unit_group(q: u64) -> Result<UnitGroup> {
    if q == 0 {
        return Err(Error::domain("q", "modulus must be positive"));
    }
    if q > MAX_MODULUS {
        return Err(Error::domain(
            "q",
            format!("{q} exceeds the dense discrete-log limit {MAX_MODULUS}"),
        ));
    }
    let factorization = if q == 1 { Factorization::one() } else { factorize(q)? };
    let mut generators = Vec::new();
    for &(p, k) in factorization.factors() {
        let pk = p.pow(k);
        let lift = |g: u64| crt_lift(g, pk, q);
        if p == 2 {
            if k >= 2 {
                generators.push(Generator {
                    residue: lift(pk - 1),
                    order: 2,
                    prime: 2,
                    prime_power: pk,
                    kind: GeneratorKind::MinusOne,
                });
            }
            if k >= 3 {
                generators.push(Generator {
                    residue: lift(5),
                    order: pk / 4,
                    prime: 2,
                    prime_power: pk,
                    kind: GeneratorKind::Five,
                });
            }
        } else {
            let order = (p - 1) * (pk / p);
            generators.push(Generator {
                residue: lift(primitive_root(p, pk)),
                order,
                prime: p,
                prime_power: pk,
                kind: GeneratorKind::PrimitiveRoot,
            });
        }
    }
    let phi = euler_phi(&factorization);
    let exponent = generators.iter().fold(1, |acc, g| lcm(acc, g.order));

    let mut dlog = vec![NOT_A_UNIT; q as usize];
    let mut digits = vec![0u64; generators.len()];
    let mut cur = 1 % q;
    for idx in 0..phi {
        dlog[cur as usize] = idx as u32;
        // odometer step: g_i^{ord_i} = 1, so a wrapping digit needs no correction
        for (i, g) in generators.iter().enumerate() {
            cur = mul_mod(cur, g.residue, q);
            digits[i] += 1;
            if digits[i] < g.order {
                break;
            }
            digits[i] = 0;
        }
    }
    Ok(UnitGroup {
        modulus: q,
        factorization,
        phi,
        exponent,
        generators,
        dlog,
    })
}

/// `x ≡ g (mod pk)`, `x ≡ 1 (mod q/pk)`.
fn crt_lift(g: u64, pk: u64, q: u64) -> u64 {
    let rest = q / pk;
    if rest == 1 {
        return g % q;
    }
    // x = g + pk * t with pk * t ≡ 1 - g (mod rest)
    let inv = inv_mod(pk % rest, rest).expect("coprime components");
    let target = (1 + rest - g % rest) % rest;
    let t = mul_mod(target, inv, rest);
    (g + pk * t) % q
}

/// Smallest primitive root modulo an odd prime power `pk = p^k`.
fn primitive_root(p: u64, pk: u64) -> u64 {
    let phi = (p - 1) * (pk / p);
    let mut tests: Vec<u64> = factorize(p - 1).map(|f| f.primes().collect()).unwrap_or_default();
    if pk != p && !tests.contains(&p) {
        tests.push(p);
    }
    (2..pk)
        .find(|&g| gcd(g, p) == 1 && tests.iter().all(|&l| pow_mod(g, phi / l, pk) != 1))
        .unwrap_or(1)
}

impl UnitGroup {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    /// `φ(q)`, the group order.
    pub fn phi(&self) -> u64 {
        self.phi
    }

    /// Least common multiple of the generator orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Mixed-radix discrete-log index of `n`, or `None` if `gcd(n, q) > 1`.
    #[inline]
    pub fn index(&self, n: i64) -> Option<u64> {
        let r = n.rem_euclid(self.modulus as i64) as usize;
        match self.dlog[r] {
            NOT_A_UNIT => None,
            idx => Some(idx as u64),
        }
    }

    /// Exponent vector of `n` with respect to [`Self::generators`].
    pub fn dlog(&self, n: i64) -> Option<Vec<u64>> {
        self.index(n).map(|idx| self.unpack(idx))
    }

    pub fn unpack(&self, mut idx: u64) -> Vec<u64> {
        self.generators
            .iter()
            .map(|g| {
                let k = idx % g.order;
                idx /= g.order;
                k
            })
            .collect()
    }

    /// `prod g_i^{k_i} mod q`.
    pub fn element(&self, exponents: &[u64]) -> u64 {
        self.generators
            .iter()
            .zip(exponents)
            .fold(1 % self.modulus, |acc, (g, &k)| {
                mul_mod(acc, pow_mod(g.residue, k, self.modulus), self.modulus)
            })
    }

    /// Raw table: residue -> index, `u32::MAX` on non-units.
    pub(crate) fn dlog_table(&self) -> &[u32] {
        &self.dlog
    }

    pub fn is_unit(&self, n: i64) -> bool {
        self.index(n).is_some()
    }
}
