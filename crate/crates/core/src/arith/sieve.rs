use alloc::vec;
use alloc::vec::Vec;

/// All primes up to `limit`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Primes `<= x` (clamped to the table limit).
    pub fn up_to(&self, x: u64) -> &[u64] {
        let end = self.primes.partition_point(|&p| p <= x);
        &self.primes[..end]
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }
}

// odd numbers per segment; 32 KiB of flags
const SEGMENT: usize = 1 << 15;

/// Segmented sieve of Eratosthenes over odd numbers.
pub fn sieve_primes(limit: u64) -> PrimeTable {
    let mut primes = Vec::new();
    if limit < 2 {
        return PrimeTable { limit, primes };
    }
    primes.push(2);
    let root = isqrt(limit);
    let base = small_odd_primes(root);

    // flag i of a segment stands for lo + 2i
    let mut flags = vec![true; SEGMENT];
    // next odd multiple to cross off, per base prime
    let mut next: Vec<u64> = base.iter().map(|&p| p * p).collect();
    let mut lo = 3u64;
    while lo <= limit {
        let hi = (lo + 2 * SEGMENT as u64 - 2).min(limit);
        let span = ((hi - lo) / 2 + 1) as usize;
        flags[..span].fill(true);
        for (k, &p) in base.iter().enumerate() {
            let mut m = next[k];
            while m <= hi {
                flags[((m - lo) / 2) as usize] = false;
                m += 2 * p;
            }
            next[k] = m;
        }
        primes.extend(
            flags[..span]
                .iter()
                .enumerate()
                .filter(|(_, &f)| f)
                .map(|(i, _)| lo + 2 * i as u64),
        );
        lo += 2 * SEGMENT as u64;
    }
    PrimeTable { limit, primes }
}

fn small_odd_primes(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    let mut i = 3;
    while i <= n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    out
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (libm::sqrt(n as f64) as u64).min(u32::MAX as u64);
    while r * r > n {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain sieve used as an oracle.
    fn eratosthenes(limit: usize) -> Vec<u64> {
        let mut is = vec![true; limit + 1];
        is[0] = false;
        if limit >= 1 {
            is[1] = false;
        }
        let mut i = 2;
        while i * i <= limit {
            if is[i] {
                for j in (i * i..=limit).step_by(i) {
                    is[j] = false;
                }
            }
            i += 1;
        }
        (0..=limit).filter(|&i| is[i]).map(|i| i as u64).collect()
    }

    #[test]
    fn small_limits() {
        assert_eq!(sieve_primes(10).primes(), &[2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).primes(), &[2]);
        assert_eq!(sieve_primes(3).primes(), &[2, 3]);
        assert_eq!(sieve_primes(100).len(), 25);
        for limit in 0..300 {
            assert_eq!(sieve_primes(limit).primes(), eratosthenes(limit as usize), "{limit}");
        }
    }

    #[test]
    fn segment_boundaries() {
        for limit in [65_535u64, 65_536, 65_537, 65_539, 131_071, 131_072, 200_003] {
            assert_eq!(sieve_primes(limit).primes(), eratosthenes(limit as usize), "{limit}");
        }
    }

    #[test]
    fn pi_of_a_million() {
        let table = sieve_primes(1_000_000);
        assert_eq!(table.len(), 78_498);
        assert_eq!(table.primes(), eratosthenes(1_000_000));
        assert_eq!(table.up_to(100).len(), 25);
        assert!(table.contains(999_983));
        assert!(!table.contains(999_981));
    }

    #[test]
    fn isqrt_exact() {
        for n in 0..10_000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        assert_eq!(isqrt(u64::MAX), u32::MAX as u64);
    }
}
