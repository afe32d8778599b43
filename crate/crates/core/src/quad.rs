//! One-dimensional quadrature.

/// Adaptive Simpson on `[a, b]` to relative tolerance `rel_tol`.
///
/// The interval is first cut into 16 panels so that kinks of a piecewise
/// smooth integrand (e.g. a pointwise maximum) do not hide between the
/// initial sample points.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    const PANELS: usize = 16;
    const MAX_DEPTH: u32 = 48;
    let h = (b - a) / PANELS as f64;
    let coarse: f64 = (0..PANELS)
        .map(|i| {
            let (x0, x1) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            simpson(&f, x0, x1)
        })
        .sum();
    let tol = (rel_tol * libm::fabs(coarse)).max(f64::MIN_POSITIVE);
    (0..PANELS)
        .map(|i| {
            let (x0, x1) = (
                a + i as f64 * h,
                if i + 1 == PANELS { b } else { a + (i + 1) as f64 * h },
            );
            let (fa, fm, fb) = (f(x0), f(0.5 * (x0 + x1)), f(x1));
            let whole = (x1 - x0) / 6.0 * (fa + 4.0 * fm + fb);
            recurse(&f, x0, x1, fa, fm, fb, whole, tol / PANELS as f64, MAX_DEPTH)
        })
        .sum()
}

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || libm::fabs(delta) <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Composite Simpson with `n` (rounded up to even) panels.
pub fn composite_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = (n + n % 2).max(2);
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n)
        .map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    h / 3.0 * (f(a) + inner + f(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_integrands() {
        let v = adaptive_simpson(libm::sin, 0.0, core::f64::consts::PI, 1e-10);
        assert!((v - 2.0).abs() < 1e-9);
        let v = adaptive_simpson(|x| 1.0 / x, 1.0, 1e3, 1e-10);
        assert!((v - libm::log(1e3)).abs() < 1e-8);
    }

    #[test]
    fn kinked_integrand() {
        let f = |x: f64| x.max(1.0 - x);
        let v = adaptive_simpson(f, 0.0, 1.0, 1e-10);
        assert!((v - 0.75).abs() < 1e-9);
        let c = composite_simpson(f, 0.0, 1.0, 10_000);
        assert!((c - 0.75).abs() < 1e-6);
    }
}
