use alloc::vec::Vec;

/// Exact rational value of a finite `f64` fraction in `[0, 1)` as
/// `num / den`, or `None` if it is below `2^-67` (and nonzero).
fn exact_fraction(frac: f64) -> Option<(u128, u128)> {
    if frac == 0.0 {
        return Some((0, 1));
    }
    let bits = frac.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i32;
    let (mant, exp) = if raw_exp == 0 {
        (bits & ((1 << 52) - 1), -1074)
    } else {
        ((bits & ((1 << 52) - 1)) | (1 << 52), raw_exp - 1075)
    };
    let tz = mant.trailing_zeros() as i32;
    let (mant, exp) = (mant >> tz, exp + tz);
    if exp >= 0 || -exp > 120 {
        return if exp >= 0 { Some((0, 1)) } else { None };
    }
    Some((mant as u128, 1u128 << (-exp)))
}

/// Partial quotients of the exact rational value of `alpha`.
///
/// A finite `f64` is a dyadic rational, so the expansion terminates. For a
/// fractional part below `2^-67` the expansion stops after the integer
/// part, since its next quotient already exceeds every `u64` denominator.
pub fn continued_fraction(alpha: f64) -> Vec<i128> {
    assert!(alpha.is_finite(), "continued fraction of a non-finite value");
    let a0 = libm::floor(alpha);
    let mut terms = alloc::vec![a0 as i128];
    if let Some((mut p, mut q)) = exact_fraction(alpha - a0) {
        // p/q in [0, 1): expand q/p
        while p != 0 {
            let a = q / p;
            terms.push(a as i128);
            (q, p) = (p, q - a * p);
        }
    }
    terms
}

/// Continued-fraction convergents `r/s` of `alpha` with `s <= s_max`,
/// in lowest terms and increasing `s`.
///
/// When the first partial quotient after the integer part is 1, the
/// integer-part convergent `floor(alpha)/1` is skipped: `(floor(alpha)+1)/1`
/// shares its denominator and is strictly closer, so every returned pair is
/// a best approximation among denominators up to its own.
pub fn convergents(alpha: f64, s_max: u64) -> Vec<(i64, u64)> {
    let terms = continued_fraction(alpha);
    let mut out = Vec::new();
    let (mut h1, mut h2) = (1i128, 0i128);
    let (mut k1, mut k2) = (0i128, 1i128);
    for (i, &a) in terms.iter().enumerate() {
        let h = a * h1 + h2;
        let k = a * k1 + k2;
        if k > s_max as i128 {
            break;
        }
        let skip = i == 0 && terms.get(1) == Some(&1);
        if !skip {
            out.push((h as i64, k as u64));
        }
        (h2, h1) = (h1, h);
        (k2, k1) = (k1, k);
    }
    out
}
