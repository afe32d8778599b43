//! Dirichlet characters modulo `q`.
//!
//! A character is stored as its exponent vector with respect to the
//! deterministic generators of [`UnitGroup`]: `χ(g_i) = e(k_i / ord_i)`.
//! Values are exact phases `χ(n) = e(phase / order)`; complex floats are
//! produced only on request.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::arith::{gcd, is_prime, lcm, unit_group, valuation, GeneratorKind, UnitGroup};
use crate::trig::{unit_root, RootTable};
use crate::{Error, Result};

/// Marks non-units in phase tables.
pub const NO_PHASE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

/// Summary of a character's invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub order: u64,
    pub parity: Parity,
    pub conductor: u64,
    pub principal: bool,
    pub primitive: bool,
    pub real: bool,
}

#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exponents: Vec<u64>,
    // χ(g_i) = e(steps[i] / order)
    steps: Vec<u64>,
    order: u64,
    parity: Parity,
    conductor: u64,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirichletCharacter")
            .field("label", &format_args!("{self}"))
            .field("order", &self.order)
            .field("parity", &self.parity)
            .field("conductor", &self.conductor)
            .finish()
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    /// Character with `χ(g_i) = e(exponents[i] / ord_i)`. Exponents are
    /// reduced modulo the generator orders.
    pub fn new(group: Arc<UnitGroup>, exponents: &[u64]) -> Result<Self> {
        if exponents.len() != group.rank() {
            return Err(Error::domain(
                "exponents",
                format!(
                    "modulus {} has {} generators, got {} exponents",
                    group.modulus(),
                    group.rank(),
                    exponents.len()
                ),
            ));
        }
        let exponents: Vec<u64> = exponents
            .iter()
            .zip(group.generators())
            .map(|(&k, g)| k % g.order)
            .collect();
        let local_orders: Vec<u64> = exponents
            .iter()
            .zip(group.generators())
            .map(|(&k, g)| g.order / gcd(g.order, k))
            .collect();
        let order = local_orders.iter().fold(1, |acc, &o| lcm(acc, o));
        let steps = exponents
            .iter()
            .zip(group.generators())
            .map(|(&k, g)| {
                let d = gcd(g.order, k);
                (k / d) * (order / (g.order / d))
            })
            .collect();
        let conductor = conductor_from_local_orders(&group, &local_orders);
        let mut chi = DirichletCharacter {
            group,
            exponents,
            steps,
            order,
            parity: Parity::Even,
            conductor,
        };
        chi.parity = match chi.phase(-1) {
            Some(0) => Parity::Even,
            _ => Parity::Odd,
        };
        Ok(chi)
    }

    pub fn principal(group: Arc<UnitGroup>) -> Self {
        let zeros = vec![0; group.rank()];
        Self::new(group, &zeros).expect("rank matches")
    }

    /// Parses a label of the form `q=<q>;e=<v1,v2,...>`.
    pub fn from_label(label: &str) -> Result<Self> {
        let bad = |why: &str| Error::parse(label, why);
        let (q_part, e_part) = label
            .trim()
            .split_once(';')
            .ok_or_else(|| bad("expected `q=<q>;e=<list>`"))?;
        let q: u64 = q_part
            .strip_prefix("q=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("bad modulus"))?;
        let list = e_part.strip_prefix("e=").ok_or_else(|| bad("missing `e=`"))?;
        let exps: Vec<u64> = if list.is_empty() {
            Vec::new()
        } else {
            list.split(',')
                .map(|s| s.trim().parse().map_err(|_| bad("bad exponent")))
                .collect::<Result<_>>()?
        };
        let group = Arc::new(unit_group(q)?);
        for (k, g) in exps.iter().zip(group.generators()) {
            if *k >= g.order {
                return Err(bad("exponent not reduced modulo its generator order"));
            }
        }
        Self::new(group, &exps)
    }

    pub fn label(&self) -> String {
        format!("{self}")
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    pub fn classify(&self) -> Classification {
        Classification {
            order: self.order,
            parity: self.parity,
            conductor: self.conductor,
            principal: self.is_principal(),
            primitive: self.is_primitive(),
            real: self.is_real(),
        }
    }

    /// `χ(n) = e(phase / order)`, or `None` when `gcd(n, q) > 1`.
    #[inline]
    pub fn phase(&self, n: i64) -> Option<u64> {
        let mut idx = self.group.index(n)?;
        let mut acc = 0u64;
        for (g, &step) in self.group.generators().iter().zip(&self.steps) {
            acc += step * (idx % g.order);
            idx /= g.order;
        }
        Some(acc % self.order)
    }

    pub fn evaluate(&self, n: i64) -> Complex64 {
        match self.phase(n) {
            Some(ph) => unit_root(ph as i64, self.order),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Exact value in `{-1, 0, 1}` for real characters, `None` otherwise.
    pub fn real_value(&self, n: i64) -> Option<i32> {
        if !self.is_real() {
            return None;
        }
        Some(match self.phase(n) {
            None => 0,
            Some(0) => 1,
            Some(_) => -1,
        })
    }

    /// Phases of `χ(0), ..., χ(q-1)`; [`NO_PHASE`] on non-units.
    pub fn phase_table(&self) -> Vec<u32> {
        let group = &*self.group;
        let gens = group.generators();
        let mut by_index = Vec::with_capacity(group.phi() as usize);
        let mut digits = vec![0u64; gens.len()];
        let mut phase = 0u64;
        for _ in 0..group.phi() {
            by_index.push(phase as u32);
            for (i, g) in gens.iter().enumerate() {
                phase += self.steps[i];
                if phase >= self.order {
                    phase -= self.order;
                }
                digits[i] += 1;
                if digits[i] < g.order {
                    break;
                }
                digits[i] = 0;
            }
        }
        group
            .dlog_table()
            .iter()
            .map(|&idx| {
                if idx == u32::MAX {
                    NO_PHASE
                } else {
                    by_index[idx as usize]
                }
            })
            .collect()
    }

    /// `χ(0), ..., χ(q-1)` as complex numbers.
    pub fn value_table(&self) -> Vec<Complex64> {
        let roots = RootTable::new(self.order);
        self.value_table_with(&roots)
    }

    /// Like [`Self::value_table`], reusing a root table whose order is a
    /// multiple of the character order (e.g. the group exponent).
    pub fn value_table_with(&self, roots: &RootTable) -> Vec<Complex64> {
        assert_eq!(roots.order() % self.order, 0, "root table order mismatch");
        let scale = roots.order() / self.order;
        self.phase_table()
            .into_iter()
            .map(|ph| {
                if ph == NO_PHASE {
                    Complex64::new(0.0, 0.0)
                } else {
                    roots.get(ph as u64 * scale)
                }
            })
            .collect()
    }

    pub fn conj(&self) -> Self {
        let exps: Vec<u64> = self
            .exponents
            .iter()
            .zip(self.group.generators())
            .map(|(&k, g)| (g.order - k) % g.order)
            .collect();
        Self::new(self.group.clone(), &exps).expect("rank matches")
    }

    /// Pointwise product of two characters to the same modulus.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.modulus() != other.modulus() {
            return Err(Error::domain("other", "characters have different moduli"));
        }
        let exps: Vec<u64> = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.group.clone(), &exps)
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={};e=", self.modulus())?;
        for (i, k) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

// conductor is multiplicative over prime-power components
fn conductor_from_local_orders(group: &UnitGroup, local_orders: &[u64]) -> u64 {
    let mut conductor = 1u64;
    let mut two_minus = 1u64;
    let mut two_five = 1u64;
    let mut two_power = 1u64;
    for (g, &o) in group.generators().iter().zip(local_orders) {
        match g.kind {
            GeneratorKind::PrimitiveRoot => {
                if o > 1 {
                    let f = 1 + valuation(o, g.prime);
                    conductor *= g.prime.pow(f);
                }
            }
            GeneratorKind::MinusOne => {
                two_minus = o;
                two_power = g.prime_power;
            }
            GeneratorKind::Five => {
                two_five = o;
                two_power = g.prime_power;
            }
        }
    }
    let two_part = if two_five > 1 {
        1u64 << (valuation(two_five, 2) + 2)
    } else if two_minus > 1 {
        4
    } else {
        1
    };
    debug_assert!(two_part <= two_power.max(1));
    conductor * two_part
}

/// All `φ(q)` characters modulo `q`, ordered by packed exponent vector
/// (the principal character first).
pub fn enumerate_characters(group: &Arc<UnitGroup>) -> Vec<DirichletCharacter> {
    (0..group.phi())
        .map(|idx| DirichletCharacter::new(group.clone(), &group.unpack(idx)).expect("rank"))
        .collect()
}

/// Convenience: builds the unit group and enumerates its characters.
pub fn characters_mod(q: u64) -> Result<Vec<DirichletCharacter>> {
    let group = Arc::new(unit_group(q)?);
    Ok(enumerate_characters(&group))
}

/// The quadratic character modulo an odd prime `p`.
pub fn legendre_character(p: u64) -> Result<DirichletCharacter> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::domain("p", format!("{p} is not an odd prime")));
    }
    let group = Arc::new(unit_group(p)?);
    DirichletCharacter::new(group, &[(p - 1) / 2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Conductor by definition: least d | q with χ trivial on units ≡ 1 mod d.
    fn brute_conductor(chi: &DirichletCharacter) -> u64 {
        let q = chi.modulus();
        (1..=q)
            .filter(|d| q % d == 0)
            .find(|&d| {
                (1..q.max(2))
                    .filter(|&n| gcd(n, q) == 1 && n % d == 1 % d)
                    .all(|n| chi.phase(n as i64) == Some(0))
            })
            .unwrap()
    }

    fn legendre_symbol(a: u64, p: u64) -> i32 {
        let a = a % p;
        if a == 0 {
            0
        } else if (1..p).any(|x| x * x % p == a) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn counts_and_orders() {
        let c3 = characters_mod(3).unwrap();
        assert_eq!(c3.len(), 2);
        assert!(c3[0].is_principal() && c3[1].is_real() && !c3[1].is_principal());

        let c8 = characters_mod(8).unwrap();
        assert_eq!(c8.len(), 4);
        assert!(c8.iter().all(|c| c.is_real()));

        let c5 = characters_mod(5).unwrap();
        let mut orders: Vec<u64> = c5.iter().map(|c| c.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 4, 4]);
        assert_eq!(c5.iter().filter(|c| c.is_real() && !c.is_principal()).count(), 1);
    }

    #[test]
    fn evaluation_examples() {
        let principal7 = &characters_mod(7).unwrap()[0];
        assert_eq!(principal7.evaluate(3), Complex64::new(1.0, 0.0));
        for chi in characters_mod(6).unwrap() {
            assert_eq!(chi.evaluate(3), Complex64::new(0.0, 0.0));
        }
        let leg7 = legendre_character(7).unwrap();
        assert_eq!(leg7.evaluate(3), Complex64::new(-1.0, 0.0));
        let vals: Vec<i32> = (1..=6).map(|n| leg7.real_value(n).unwrap()).collect();
        assert_eq!(vals, vec![1, 1, -1, 1, -1, -1]);
    }

    #[test]
    fn legendre_matches_quadratic_residues() {
        for p in [3u64, 5, 7, 11, 13, 101, 997] {
            let chi = legendre_character(p).unwrap();
            assert_eq!(chi.order(), 2);
            for a in 0..2 * p {
                assert_eq!(chi.real_value(a as i64).unwrap(), legendre_symbol(a, p));
            }
        }
        let l3 = legendre_character(3).unwrap();
        assert_eq!((l3.real_value(1), l3.real_value(2)), (Some(1), Some(-1)));
        assert_eq!(legendre_character(13).unwrap().parity(), Parity::Even);
        assert!(legendre_character(2).is_err());
        assert!(legendre_character(9).is_err());
    }

    #[test]
    fn classification_examples() {
        let p12 = &characters_mod(12).unwrap()[0];
        assert_eq!(
            p12.classify(),
            Classification {
                order: 1,
                parity: Parity::Even,
                conductor: 1,
                principal: true,
                primitive: false,
                real: true
            }
        );
        let l5 = legendre_character(5).unwrap();
        assert_eq!(l5.evaluate(4), Complex64::new(1.0, 0.0));
        let c = l5.classify();
        assert_eq!(
            (c.conductor, c.parity, c.order, c.primitive, c.real),
            (5, Parity::Even, 2, true, true)
        );

        // mod 9: the quadratic character mod 3 lifted
        let induced: Vec<_> = characters_mod(9)
            .unwrap()
            .into_iter()
            .filter(|c| c.order() == 2)
            .collect();
        assert_eq!(induced.len(), 1);
        assert_eq!(induced[0].conductor(), 3);
        assert!(!induced[0].is_primitive());
        assert_eq!(brute_conductor(&induced[0]), 3);
    }

    #[test]
    fn conductor_matches_definition() {
        for q in 1..=300u64 {
            for chi in characters_mod(q).unwrap() {
                assert_eq!(chi.conductor(), brute_conductor(&chi), "{chi}");
                assert_eq!(q % chi.conductor(), 0);
            }
        }
    }

    #[test]
    fn classification_invariants() {
        for q in 1..=400u64 {
            let chars = characters_mod(q).unwrap();
            assert_eq!(chars.iter().filter(|c| c.is_principal()).count(), 1);
            for chi in &chars {
                let minus_one = chi.evaluate(q as i64 - 1);
                let rounded = if minus_one.re > 0.0 { 1 } else { -1 };
                assert_eq!(rounded, chi.parity().sign());
                assert!((minus_one.im).abs() < 1e-12);
                assert_eq!(chi.is_real(), chi.order() <= 2);
                // real values exactly
                if chi.is_real() {
                    for n in 0..q as i64 {
                        assert_eq!(chi.evaluate(n).im, 0.0);
                    }
                }
            }
            let reals: Vec<_> = chars.iter().filter(|c| c.is_real()).collect();
            for a in &reals {
                for b in &reals {
                    assert!(a.product(b).unwrap().is_real());
                }
            }
        }
    }

    #[test]
    fn group_closure_and_distinctness() {
        for q in [7u64, 8, 12, 15, 16, 45, 63] {
            let chars = characters_mod(q).unwrap();
            for a in &chars {
                for b in &chars {
                    let ab = a.product(b).unwrap();
                    assert!(chars.contains(&ab));
                }
            }
            for (i, a) in chars.iter().enumerate() {
                for b in &chars[i + 1..] {
                    let differ =
                        (1..q as i64).any(|n| a.phase(n).map(|x| x * b.order()) != b.phase(n).map(|x| x * a.order()));
                    assert!(differ, "{a} == {b} pointwise");
                }
            }
        }
    }

    #[test]
    fn complete_multiplicativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [5u64, 24, 35, 97, 360, 1001, 4096] {
            let chars = characters_mod(q).unwrap();
            for chi in chars.iter().take(12) {
                for _ in 0..10_000 / 12 {
                    let m = rng.random_range(-10_000..10_000i64);
                    let n = rng.random_range(-10_000..10_000i64);
                    let lhs = chi.evaluate(m * n);
                    let rhs = chi.evaluate(m) * chi.evaluate(n);
                    assert!((lhs - rhs).norm() < 1e-12);
                    if gcd((m * n).unsigned_abs(), q) == 1 {
                        assert!((lhs.norm() - 1.0).abs() < 1e-15);
                    } else {
                        assert_eq!(lhs, Complex64::new(0.0, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn tables_match_pointwise_evaluation() {
        for q in [1u64, 2, 9, 20, 77, 128] {
            for chi in characters_mod(q).unwrap() {
                let table = chi.value_table();
                for n in 0..q {
                    assert!((table[n as usize] - chi.evaluate(n as i64)).norm() < 1e-14);
                }
                let phases = chi.phase_table();
                for n in 0..q {
                    let ph = chi.phase(n as i64).map(|p| p as u32).unwrap_or(NO_PHASE);
                    assert_eq!(phases[n as usize], ph);
                }
            }
        }
    }

    #[test]
    fn labels_round_trip() {
        for q in [1u64, 2, 3, 8, 15, 360] {
            for chi in characters_mod(q).unwrap() {
                let label = chi.label();
                assert_eq!(DirichletCharacter::from_label(&label).unwrap(), chi);
            }
        }
        assert_eq!(legendre_character(7).unwrap().label(), "q=7;e=3");
        assert_eq!(characters_mod(2).unwrap()[0].label(), "q=2;e=");
        assert!(DirichletCharacter::from_label("q=7;e=9").is_err());
        assert!(DirichletCharacter::from_label("q=7").is_err());
        assert!(DirichletCharacter::from_label("q=8;e=1").is_err());
    }

    #[test]
    fn conjugate_inverts() {
        for chi in characters_mod(63).unwrap() {
            let one = chi.product(&chi.conj()).unwrap();
            assert!(one.is_principal());
            assert_eq!(chi.conj().conductor(), chi.conductor());
        }
    }
}
