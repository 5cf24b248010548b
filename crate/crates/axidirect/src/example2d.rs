//! Fully analytic two-dimensional solution family with a migrating zero:
//! the harmonic field `B_λ` solves the planar direction problem for the
//! rotation-number-3 boundary field `D = cos 2φ e_r + sin 2φ e_φ`, and its
//! single zero travels along the axis, splits into a boundary pair, and
//! re-enters as `λ` sweeps `(-1, 1)`.

use crate::numeric::bisect;
use crate::scalar::{c, Real};
use serde::{Deserialize, Serialize};

/// Field value of `B_λ` in polar components at `(r, φ)`, `r >= 1`.
pub fn field_lambda<F: Real>(lambda: F, r: F, phi: F) -> (F, F) {
    let one = F::one();
    let amp = one - lambda * lambda;
    let r2 = r * r;
    let r3 = r2 * r;
    let r4 = r2 * r2;
    let three = c::<F>(3.0);
    let b_r = amp * (phi.cos() / r2 + (three * phi).cos() / r4)
        - three * lambda * (c::<F>(2.0) * phi).cos() / r3;
    let b_phi = amp * (phi.sin() / r2 + (three * phi).sin() / r4)
        - three * lambda * (c::<F>(2.0) * phi).sin() / r3;
    (b_r, b_phi)
}

/// The potential with `B_λ = grad Υ_λ`.
pub fn potential_lambda<F: Real>(lambda: F, r: F, phi: F) -> F {
    let amp = F::one() - lambda * lambda;
    let three = c::<F>(3.0);
    three * lambda * (c::<F>(2.0) * phi).cos() / (c::<F>(2.0) * r * r)
        - amp * (phi.cos() / r + (three * phi).cos() / (three * r * r * r))
}

/// Boundary amplitude: `B_λ(1, φ) = a_λ(φ) D(φ)` with
/// `a_λ = 2(1-λ²) cos φ - 3λ`.
pub fn boundary_amplitude<F: Real>(lambda: F, phi: F) -> F {
    c::<F>(2.0) * (F::one() - lambda * lambda) * phi.cos() - c::<F>(3.0) * lambda
}

/// Zero-trajectory regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// Single zero on the positive axis (`μ > 1`).
    InteriorRight,
    /// Symmetric boundary pair at `(1, ±φ0)` (`|μ| <= 1`).
    BoundaryPair,
    /// Single zero on the negative axis (`μ < -1`).
    InteriorLeft,
}

/// The trajectory parameter `μ = 3λ / (2 - 2λ²)`.
pub fn mu_of_lambda<F: Real>(lambda: F) -> F {
    c::<F>(3.0) * lambda / (c::<F>(2.0) * (F::one() - lambda * lambda))
}

/// Closed-form zero position of `B_λ` for `λ` in `(-1, 1)`:
/// `(μ+sqrt(μ²-1), 0)` for `μ > 1`, `(1, arccos μ)` for `|μ| <= 1`,
/// `(-μ+sqrt(μ²-1), π)` for `μ < -1`.
pub fn zero_position<F: Real>(lambda: F) -> (Regime, F, F) {
    let mu = mu_of_lambda(lambda);
    if mu > F::one() {
        (Regime::InteriorRight, mu + (mu * mu - F::one()).sqrt(), F::zero())
    } else if mu < -F::one() {
        (Regime::InteriorLeft, -mu + (mu * mu - F::one()).sqrt(), F::PI())
    } else {
        (Regime::BoundaryPair, F::one(), mu.acos())
    }
}

/// One row of the zero-trajectory table.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PathPoint<F> {
    pub lambda: F,
    pub regime: Regime,
    pub r0: F,
    pub phi0: F,
    /// `|B_λ|` at the reported position.
    pub residual: F,
}

/// Tabulate the zero position across the given `λ` samples, verifying that
/// each reported position nulls the field.
pub fn trace_zero_path<F: Real>(lambdas: &[F]) -> Vec<PathPoint<F>> {
    lambdas
        .iter()
        .map(|&lambda| {
            let (regime, r0, phi0) = zero_position(lambda);
            let (br, bp) = field_lambda(lambda, r0, phi0);
            PathPoint { lambda, regime, r0, phi0, residual: br.hypot(bp) }
        })
        .collect()
}

/// Independent root-finding oracle: 2D Newton iteration on the polar field
/// components with finite-difference Jacobian (interior regimes), or
/// bisection of the boundary amplitude `a_λ` (boundary regime).
pub fn find_zero_numerically<F: Real>(lambda: F) -> Option<(F, F)> {
    let mu = mu_of_lambda(lambda);
    if mu.abs() <= F::one() {
        // boundary pair: root of a_lambda on (0, pi)
        let f = |phi: F| boundary_amplitude(lambda, phi);
        let mut lo = c::<F>(1e-9);
        let mut hi = F::PI() - c::<F>(1e-9);
        if f(lo) * f(hi) > F::zero() {
            return None;
        }
        // a_lambda is monotone in cos(phi): a single bracket suffices
        let phi = bisect(lo, hi, c(1e-14), f);
        let _ = (&mut lo, &mut hi);
        return Some((F::one(), phi));
    }
    // interior: Newton on (B_r, B_phi) from a nearby start
    let phi0 = if mu > F::one() { F::zero() } else { F::PI() };
    let mut r = mu.abs() + (mu * mu - F::one()).sqrt().max(c(0.5));
    let mut phi = phi0;
    for _ in 0..100 {
        let (fr, fp) = field_lambda(lambda, r, phi);
        let h = c::<F>(1e-7);
        let (fr_r, fp_r) = field_lambda(lambda, r + h, phi);
        let (fr_p, fp_p) = field_lambda(lambda, r, phi + h);
        let j11 = (fr_r - fr) / h;
        let j12 = (fr_p - fr) / h;
        let j21 = (fp_r - fp) / h;
        let j22 = (fp_p - fp) / h;
        let det = j11 * j22 - j12 * j21;
        if det.abs() < c(1e-30) {
            return None;
        }
        let dr = (fr * j22 - fp * j12) / det;
        let dp = (fp * j11 - fr * j21) / det;
        r -= dr;
        phi -= dp;
        if dr.abs() + dp.abs() < c(1e-14) {
            break;
        }
    }
    let (fr, fp) = field_lambda(lambda, r, phi);
    if fr.hypot(fp) < c(1e-10) {
        Some((r, phi))
    } else {
        None
    }
}
