//! Roots of unity and the additive character `e(t) = exp(2πit)`.

use alloc::vec::Vec;
use core::f64::consts::TAU;
use num_complex::Complex64;

/// `e(t) = exp(2πi t)`, reducing `t` modulo 1 first.
pub fn e(t: f64) -> Complex64 {
    let frac = t - libm::floor(t);
    let (s, c) = libm::sincos(TAU * frac);
    Complex64::new(c, s)
}

/// `e(num/den)` for integers. Multiples of a quarter turn are exact.
pub fn unit_root(num: i64, den: u64) -> Complex64 {
    debug_assert!(den > 0);
    let m = den as i128;
    let j = (num as i128).rem_euclid(m);
    if (4 * j) % m == 0 {
        return match (4 * j) / m {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    // keep the angle in (-π, π]
    let j = if 2 * j > m { j - m } else { j };
    let (s, c) = libm::sincos(TAU * (j as f64 / den as f64));
    Complex64::new(c, s)
}

/// Table of `e(j/m)` for `0 <= j < m`.
#[derive(Debug, Clone)]
pub struct RootTable {
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(m: u64) -> Self {
        assert!(m > 0, "root table of order 0");
        RootTable {
            roots: (0..m).map(|j| unit_root(j as i64, m)).collect(),
        }
    }

    pub fn order(&self) -> u64 {
        self.roots.len() as u64
    }

    /// `e(j/m)`, with `j` taken modulo the table order.
    #[inline]
    pub fn get(&self, j: u64) -> Complex64 {
        self.roots[(j % self.roots.len() as u64) as usize]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.roots
    }
}
