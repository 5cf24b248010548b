//! Shared numerical primitives: quadrature, root bracketing, 1D minimization.

use crate::scalar::{c, Real};

/// Composite Simpson rule on `[a, b]` with `n` panels (`n` rounded up to even).
pub fn simpson<F: Real>(a: F, b: F, n: usize, f: impl Fn(F) -> F) -> F {
    let n = if n % 2 == 0 { n.max(2) } else { n + 1 };
    let h = (b - a) / F::from_usize(n).unwrap();
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let x = a + h * F::from_usize(k).unwrap();
        let w: F = if k % 2 == 1 { c(4.0) } else { c(2.0) };
        acc = acc + w * f(x);
    }
    acc * h / c::<F>(3.0)
}

/// Simpson with one mandatory refinement; errors if the two levels disagree.
///
/// Returns the refined value and the relative deviation between levels.
pub fn simpson_refined<F: Real>(
    a: F,
    b: F,
    n: usize,
    rel_tol: F,
    f: impl Fn(F) -> F,
) -> Result<(F, F), F> {
    let coarse = simpson(a, b, n, &f);
    let fine = simpson(a, b, 2 * n, &f);
    let scale = fine.abs().max(coarse.abs()).max(F::min_positive_value());
    let dev = (fine - coarse).abs() / scale;
    if dev > rel_tol {
        Err(dev)
    } else {
        Ok((fine, dev))
    }
}

/// Tensor-product Simpson on a rectangle.
pub fn simpson2d<F: Real>(
    (x0, x1): (F, F),
    (y0, y1): (F, F),
    (nx, ny): (usize, usize),
    f: impl Fn(F, F) -> F,
) -> F {
    simpson(y0, y1, ny, |y| simpson(x0, x1, nx, |x| f(x, y)))
}

/// Bisection for a sign change of `f` on `[lo, hi]`; `f(lo)` and `f(hi)` must
/// have opposite signs. Refines until the interval is below `tol`.
pub fn bisect<F: Real>(mut lo: F, mut hi: F, tol: F, f: impl Fn(F) -> F) -> F {
    let mut flo = f(lo);
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        let mid = (lo + hi) / c(2.0);
        let fm = f(mid);
        if fm == F::zero() {
            return mid;
        }
        if (flo < F::zero()) != (fm < F::zero()) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    (lo + hi) / c(2.0)
}

/// Golden-section minimization of a unimodal `f` on `[a, b]`.
pub fn golden_min<F: Real>(mut a: F, mut b: F, tol: F, f: impl Fn(F) -> F) -> (F, F) {
    let phi: F = (F::one() + c::<F>(5.0).sqrt()) / c(2.0);
    let inv = F::one() / phi;
    let mut x1 = b - (b - a) * inv;
    let mut x2 = a + (b - a) * inv;
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..300 {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - (b - a) * inv;
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + (b - a) * inv;
            f2 = f(x2);
        }
    }
    let xm = (a + b) / c(2.0);
    (xm, f(xm))
}

/// SplitMix64: tiny deterministic PRNG for randomized verifiers.
///
/// Bit-stable across platforms and releases, which the seeded test suites
/// rely on.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53-bit resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn range_usize(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        lo + (self.next_u64() % (hi_inclusive - lo + 1) as u64) as usize
    }
}

/// `n` evenly spaced values covering `[a, b]` inclusive.
pub fn linspace<F: Real>(a: F, b: F, n: usize) -> Vec<F> {
    assert!(n >= 2);
    let step = (b - a) / F::from_usize(n - 1).unwrap();
    (0..n).map(|k| a + step * F::from_usize(k).unwrap()).collect()
}

/// Brute-force 1D maximization of `f` over `[a, b]`: coarse scan plus local
/// golden refinement around the best sample.
pub fn scan_max<F: Real>(a: F, b: F, n: usize, tol: F, f: impl Fn(F) -> F) -> (F, F) {
    let xs = linspace(a, b, n);
    let mut best = (xs[0], f(xs[0]));
    for &x in &xs[1..] {
        let v = f(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    let h = (b - a) / F::from_usize(n - 1).unwrap();
    let lo = (best.0 - h).max(a);
    let hi = (best.0 + h).min(b);
    let (x, neg) = golden_min(lo, hi, tol, |x| -f(x));
    if -neg > best.1 {
        (x, -neg)
    } else {
        best
    }
}
