//! Shooting solver for the Euler–Lagrange ODE system of the min-max
//! problem: adaptive Runge–Kutta–Fehlberg integration from both interval
//! ends, a 4x4 matching determinant at the center, and an eigenvalue scan
//! with bisection refinement.
//!
//! The second-order system in `f± = w ± χ` reads, with
//! `P = α(α+2)/(4z²)`, `Q = γ²/(4z²)`, `S = γ/(2z²)`:
//!
//! ```text
//! (1-μ) f+'' = (1-μ) P f+ - (1+μ) Q f+ + (1 - μ(d²+e²)/2) f+
//!              - (γ/z) f-' + (1 - μ(α+1)) S f- - (μ/2)(d²-e²) f-
//! (1+μ) f-'' = (1+μ) P f- - (1-μ) Q f- + (1 + μ(d²+e²)/2) f-
//!              - (γ/z) f+' + (1 + μ(α+1)) S f+ + (μ/2)(d²-e²) f+
//! ```
//!
//! The reduced (x-independent) variant drops the `(1 ∓ μ(d²+e²)/2) f±` and
//! `∓(μ/2)(d²-e²) f∓` terms and has the closed-form eigenvalue of the
//! analytic test case.

use crate::hardy::WeightParams;
use crate::numeric::{bisect, golden_min, linspace};
use crate::scalar::{c, Real};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ShootingError {
    #[error("step size underflow at z = {z} (h = {h:.3e})")]
    StepSizeUnderflow { z: f64, h: f64 },
    #[error("trajectory blow-up could not be tamed by rescaling at z = {z}")]
    BlowUp { z: f64 },
    #[error("no eigenvalue found in the scan window [{lo}, {hi}]")]
    NoEigenvalueFound { lo: f64, hi: f64 },
    #[error("mu = {mu} too close to ±1 (leading coefficients degenerate)")]
    MuNearDegenerate { mu: f64 },
    #[error("invalid problem: {0}")]
    BadProblem(String),
}

/// Where the left and right trajectories are matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatchPoint {
    /// Arithmetic center `(b0 + b~)/2`.
    ArithmeticCenter,
    /// Geometric center `sqrt(b0 b~)` (useful when the left end is tiny).
    LogCenter,
}

/// The ODE eigenvalue problem on `[b0, b~]` with zero boundary values.
#[derive(Debug, Clone, Copy)]
pub struct ShootingProblem<F> {
    pub params: WeightParams<F>,
    pub b0: F,
    pub b_tilde: F,
    /// Select the x-independent system (analytic test case).
    pub reduced: bool,
    pub matching: MatchPoint,
    /// Local error tolerance of the adaptive integrator.
    pub tol: F,
}

/// Guard distance from the degenerate leading coefficients at `μ = ±1`.
pub const EPS_MU: f64 = 1e-3;

impl<F: Real> ShootingProblem<F> {
    pub fn new(params: WeightParams<F>, b0: F, b_tilde: F, reduced: bool) -> Result<Self, ShootingError> {
        if !(F::zero() < b0 && b0 < b_tilde) {
            return Err(ShootingError::BadProblem(format!(
                "need 0 < b0 < b~, got [{b0}, {b_tilde}]"
            )));
        }
        Ok(Self {
            params,
            b0,
            b_tilde,
            reduced,
            matching: MatchPoint::ArithmeticCenter,
            tol: c(1e-10),
        })
    }

    fn match_z(&self) -> F {
        match self.matching {
            MatchPoint::ArithmeticCenter => (self.b0 + self.b_tilde) / c(2.0),
            MatchPoint::LogCenter => (self.b0 * self.b_tilde).sqrt(),
        }
    }

    /// Right-hand side of the first-order system
    /// `y = (f+, f+', f-, f-')`.
    fn rhs(&self, mu: F, z: F, y: &[F; 4]) -> [F; 4] {
        let p = &self.params;
        let (alpha, gamma, d, e) = (p.alpha, p.gamma, p.d, p.e);
        let z2 = z * z;
        let four = c::<F>(4.0);
        let two = c::<F>(2.0);
        let pp = alpha * (alpha + two) / (four * z2);
        let qq = gamma * gamma / (four * z2);
        let ss = gamma / (two * z2);
        let gz = gamma / z;
        let (fp, dfp, fm, dfm) = (y[0], y[1], y[2], y[3]);

        let one_m = F::one() - mu;
        let one_p = F::one() + mu;
        let mut rhs_p = one_m * pp * fp - one_p * qq * fp - gz * dfm
            + (F::one() - mu * (alpha + F::one())) * ss * fm;
        let mut rhs_m = one_p * pp * fm - one_m * qq * fm - gz * dfp
            + (F::one() + mu * (alpha + F::one())) * ss * fp;
        if !self.reduced {
            let sum_sq = (d * d + e * e) / two;
            let diff_sq = (d * d - e * e) / two;
            rhs_p += (F::one() - mu * sum_sq) * fp - mu * diff_sq * fm;
            rhs_m += (F::one() + mu * sum_sq) * fm + mu * diff_sq * fp;
        }
        [dfp, rhs_p / one_m, dfm, rhs_m / one_p]
    }
}

const SAFETY: f64 = 0.9;
const MIN_SCALE: f64 = 0.2;
const MAX_SCALE: f64 = 5.0;

/// One adaptive RKF45 integration of a single state from `z0` to `z1`
/// (either direction).
pub fn integrate_state<F: Real>(
    problem: &ShootingProblem<F>,
    mu: F,
    z0: F,
    z1: F,
    y0: [F; 4],
) -> Result<[F; 4], ShootingError> {
    check_mu(mu)?;
    let mut states = [y0];
    integrate_many(problem, mu, z0, z1, &mut states, false)?;
    Ok(states[0])
}

fn check_mu<F: Real>(mu: F) -> Result<(), ShootingError> {
    if (F::one() - mu.abs()).abs() < c(EPS_MU) {
        return Err(ShootingError::MuNearDegenerate { mu: mu.f64() });
    }
    Ok(())
}

/// Integrate several states simultaneously with shared adaptive steps.
/// With `orthonormalize` set, the pair is re-orthonormalized whenever it
/// grows large (the transformations have positive determinant, so matching
/// determinants keep their zeroes and signs).
fn integrate_many<F: Real, const N: usize>(
    problem: &ShootingProblem<F>,
    mu: F,
    z0: F,
    z1: F,
    states: &mut [[F; 4]; N],
    orthonormalize: bool,
) -> Result<(), ShootingError> {
    let span = (z1 - z0).abs();
    let dir = if z1 >= z0 { F::one() } else { -F::one() };
    let mut z = z0;
    let mut h = dir * (span * c(1e-4)).min(z0.abs() * c(0.1)).max(span * c::<F>(1e-12));
    let tol = problem.tol;
    let h_min = span * c::<F>(1e-14);
    let mut rescues = 0usize;
    loop {
        let remaining = (z1 - z) * dir;
        if remaining <= F::zero() {
            break;
        }
        if h.abs() > remaining {
            h = dir * remaining;
        }
        // shared step: take the worst error over the bundle
        let mut max_err = F::zero();
        let mut proposals = [[F::zero(); 4]; N];
        for (s, proposal) in states.iter().zip(proposals.iter_mut()) {
            let (y4, y5) = rkf45_step(problem, mu, z, s, h);
            let mut err = F::zero();
            for i in 0..4 {
                let scale = c::<F>(1.0) + y5[i].abs();
                err = err.max((y5[i] - y4[i]).abs() / scale);
            }
            max_err = max_err.max(err / tol);
            *proposal = y5;
        }
        if max_err <= F::one() {
            z += h;
            *states = proposals;
            if orthonormalize {
                renormalize_pair(states);
            }
            let grow = c::<F>(SAFETY) * max_err.powf(c(-0.2));
            h *= grow.min(c(MAX_SCALE)).max(F::one());
        } else {
            let shrink = c::<F>(SAFETY) * max_err.powf(c(-0.25));
            h *= shrink.max(c(MIN_SCALE));
            if h.abs() < h_min {
                return Err(ShootingError::StepSizeUnderflow { z: z.f64(), h: h.f64() });
            }
        }
        if !orthonormalize {
            // single trajectories may legitimately grow; rescue by rescaling
            // is reserved for the pair integration
            let norm = states.iter().flat_map(|s| s.iter()).fold(F::zero(), |m, v| m.max(v.abs()));
            if !norm.is_finite() {
                return Err(ShootingError::BlowUp { z: z.f64() });
            }
            if norm > c(1e290) {
                rescues += 1;
                if rescues > 10_000 {
                    return Err(ShootingError::BlowUp { z: z.f64() });
                }
            }
        }
    }
    Ok(())
}

/// Keep a trajectory pair well-conditioned: normalize the first, project it
/// out of the second, normalize the rest. Applied only when the bundle grows
/// beyond 1e8 so cheap cases stay untouched.
fn renormalize_pair<F: Real, const N: usize>(states: &mut [[F; 4]; N]) {
    if N != 2 {
        return;
    }
    let norm = |s: &[F; 4]| (s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3]).sqrt();
    let big = c::<F>(1e8);
    if norm(&states[0]).max(norm(&states[1])) < big {
        return;
    }
    let n0 = norm(&states[0]).max(F::min_positive_value());
    for v in states[0].iter_mut() {
        *v /= n0;
    }
    let dot = (0..4).fold(F::zero(), |acc, i| acc + states[0][i] * states[1][i]);
    for i in 0..4 {
        let s0 = states[0][i];
        states[1][i] -= dot * s0;
    }
    let n1 = norm(&states[1]).max(F::min_positive_value());
    for v in states[1].iter_mut() {
        *v /= n1;
    }
}

fn rkf45_step<F: Real>(
    problem: &ShootingProblem<F>,
    mu: F,
    z: F,
    y: &[F; 4],
    h: F,
) -> ([F; 4], [F; 4]) {
    let f = |zz: F, yy: &[F; 4]| problem.rhs(mu, zz, yy);
    let lin = |y: &[F; 4], terms: &[(F, [F; 4])]| {
        let mut out = *y;
        for (w, k) in terms {
            for i in 0..4 {
                out[i] += h * *w * k[i];
            }
        }
        out
    };
    let k1 = f(z, y);
    let k2 = f(z + h * c(0.25), &lin(y, &[(c(0.25), k1)]));
    let k3 = f(
        z + h * c(0.375),
        &lin(y, &[(c(3.0 / 32.0), k1), (c(9.0 / 32.0), k2)]),
    );
    let k4 = f(
        z + h * c(12.0 / 13.0),
        &lin(
            y,
            &[
                (c(1932.0 / 2197.0), k1),
                (c(-7200.0 / 2197.0), k2),
                (c(7296.0 / 2197.0), k3),
            ],
        ),
    );
    let k5 = f(
        z + h,
        &lin(
            y,
            &[
                (c(439.0 / 216.0), k1),
                (c(-8.0), k2),
                (c(3680.0 / 513.0), k3),
                (c(-845.0 / 4104.0), k4),
            ],
        ),
    );
    let k6 = f(
        z + h * c(0.5),
        &lin(
            y,
            &[
                (c(-8.0 / 27.0), k1),
                (c(2.0), k2),
                (c(-3544.0 / 2565.0), k3),
                (c(1859.0 / 4104.0), k4),
                (c(-11.0 / 40.0), k5),
            ],
        ),
    );
    let y4 = lin(
        y,
        &[
            (c(25.0 / 216.0), k1),
            (c(1408.0 / 2565.0), k3),
            (c(2197.0 / 4104.0), k4),
            (c(-0.2), k5),
        ],
    );
    let y5 = lin(
        y,
        &[
            (c(16.0 / 135.0), k1),
            (c(6656.0 / 12825.0), k3),
            (c(28561.0 / 56430.0), k4),
            (c(-9.0 / 50.0), k5),
            (c(2.0 / 55.0), k6),
        ],
    );
    (y4, y5)
}

/// States of the two left and two right trajectories at the matching point.
pub struct MatchedTrajectories<F> {
    pub left: [[F; 4]; 2],
    pub right: [[F; 4]; 2],
    pub z_match: F,
}

/// Integrate the two unit-derivative starts from each end to the matching
/// point.
pub fn integrate_system<F: Real>(
    problem: &ShootingProblem<F>,
    mu: F,
) -> Result<MatchedTrajectories<F>, ShootingError> {
    check_mu(mu)?;
    let z_match = problem.match_z();
    let mut left = [
        [F::zero(), F::one(), F::zero(), F::zero()],
        [F::zero(), F::zero(), F::zero(), F::one()],
    ];
    integrate_many(problem, mu, problem.b0, z_match, &mut left, true)?;
    let mut right = [
        [F::zero(), F::one(), F::zero(), F::zero()],
        [F::zero(), F::zero(), F::zero(), F::one()],
    ];
    integrate_many(problem, mu, problem.b_tilde, z_match, &mut right, true)?;
    Ok(MatchedTrajectories { left, right, z_match })
}

/// Column-normalized 4x4 matching determinant; vanishes exactly at the
/// eigenvalues, and Hadamard's bound keeps it in `[-1, 1]`.
pub fn matching_determinant<F: Real>(
    problem: &ShootingProblem<F>,
    mu: F,
) -> Result<F, ShootingError> {
    let m = integrate_system(problem, mu)?;
    let mut cols = [m.left[0], m.left[1], m.right[0], m.right[1]];
    for col in cols.iter_mut() {
        let norm = (col.iter().fold(F::zero(), |acc, &v| acc + v * v)).sqrt();
        if norm > F::zero() {
            for v in col.iter_mut() {
                *v /= norm;
            }
        }
    }
    Ok(det4(&cols))
}

fn det4<F: Real>(cols: &[[F; 4]; 4]) -> F {
    // a[i][j] = cols[j][i]
    let a = |i: usize, j: usize| cols[j][i];
    let m3 = |r: [usize; 3], s: [usize; 3]| {
        a(r[0], s[0]) * (a(r[1], s[1]) * a(r[2], s[2]) - a(r[1], s[2]) * a(r[2], s[1]))
            - a(r[0], s[1]) * (a(r[1], s[0]) * a(r[2], s[2]) - a(r[1], s[2]) * a(r[2], s[0]))
            + a(r[0], s[2]) * (a(r[1], s[0]) * a(r[2], s[1]) - a(r[1], s[1]) * a(r[2], s[0]))
    };
    a(0, 0) * m3([1, 2, 3], [1, 2, 3]) - a(0, 1) * m3([1, 2, 3], [0, 2, 3])
        + a(0, 2) * m3([1, 2, 3], [0, 1, 3])
        - a(0, 3) * m3([1, 2, 3], [0, 1, 2])
}

/// Eigenvalues found in a scan window, with the determinant trace for
/// diagnostics.
#[derive(Debug, Clone)]
pub struct EigenResult<F> {
    pub eigenvalues: Vec<F>,
    pub mu_min: F,
    /// `(mu, det)` pairs of the scan.
    pub trace: Vec<(F, F)>,
}

/// Threshold below which a refined |det| minimum counts as a (double) root.
const DOUBLE_ROOT_TOL: f64 = 1e-6;

/// Scan the window, bracket sign changes, refine by bisection to 1e-8 in mu;
/// additionally inspect local minima of |det| for double roots.
pub fn find_eigenvalues<F: Real>(
    problem: &ShootingProblem<F>,
    window: (F, F),
    n_scan: usize,
) -> Result<EigenResult<F>, ShootingError> {
    let (lo, hi) = window;
    if !(lo < hi) || lo <= -F::one() + c(EPS_MU) || hi >= F::one() - c(EPS_MU) {
        return Err(ShootingError::BadProblem(format!(
            "scan window [{lo}, {hi}] must stay inside (-1+eps, 1-eps)"
        )));
    }
    let mus = linspace(lo, hi, n_scan.max(8));
    let mut trace = Vec::with_capacity(mus.len());
    for &mu in &mus {
        let det = matching_determinant(problem, mu)?;
        trace.push((mu, det));
    }
    let mut eigenvalues: Vec<F> = vec![];
    for k in 0..trace.len() - 1 {
        let (m0, d0) = trace[k];
        let (m1, d1) = trace[k + 1];
        if d0 == F::zero() {
            eigenvalues.push(m0);
        } else if (d0 < F::zero()) != (d1 < F::zero()) {
            let root = bisect(m0, m1, c(1e-8), |mu| {
                matching_determinant(problem, mu).unwrap_or(F::nan())
            });
            eigenvalues.push(root);
        }
    }
    // local minima of |det| without a sign change: candidate double roots
    for k in 1..trace.len().saturating_sub(1) {
        let (mu_prev, d_prev) = trace[k - 1];
        let (mu_k, d_k) = trace[k];
        let (mu_next, d_next) = trace[k + 1];
        let same_sign = (d_prev < F::zero()) == (d_k < F::zero())
            && (d_k < F::zero()) == (d_next < F::zero());
        if same_sign && d_k.abs() < d_prev.abs() && d_k.abs() < d_next.abs() {
            let (mu_star, det_star) = golden_min(mu_prev, mu_next, c(1e-9), |mu| {
                matching_determinant(problem, mu).map_or(F::infinity(), |d| d.abs())
            });
            if det_star < c(DOUBLE_ROOT_TOL)
                && !eigenvalues.iter().any(|&e| (e - mu_star).abs() < c(1e-6))
            {
                eigenvalues.push(mu_star);
            }
        }
        let _ = mu_k;
    }
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigenvalues.dedup_by(|a, b| (*a - *b).abs() < c(1e-7));
    match eigenvalues.first().copied() {
        Some(mu_min) => Ok(EigenResult { eigenvalues, mu_min, trace }),
        None => Err(ShootingError::NoEigenvalueFound { lo: lo.f64(), hi: hi.f64() }),
    }
}

/// Smallest eigenvalue of the reduced system on `[ratio, 1]`, for the
/// analytic-curve reproductions.
pub fn reduced_mu_min<F: Real>(
    params: &WeightParams<F>,
    ratio: F,
) -> Result<F, ShootingError> {
    let problem = ShootingProblem::new(*params, ratio, F::one(), true)?;
    let result = find_eigenvalues(&problem, (c(EPS_MU), F::one() - c::<F>(2.0) * c(EPS_MU)), 160)?;
    Ok(result.mu_min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minmax::mu_analytic;

    fn params() -> WeightParams<f64> {
        WeightParams::solvable_default()
    }

    /// The reduced system has the closed-form power solutions of the
    /// analytic test case; the integrator must track them.
    #[test]
    fn reduced_system_tracks_power_solutions() {
        let p = params();
        let problem = ShootingProblem::new(p, 0.5, 3.0, true).unwrap();
        let mu = 0.47;
        let (bp, bm) = (p.beta_plus(), p.beta_minus());
        let beta0 = bp + bm + 1.0;
        // (w, chi) amplitude pairs and exponents of the four solutions
        let basis: [(f64, f64, f64); 4] = [
            (1.0, 0.0, -bp),
            (0.0, 1.0, -bm),
            (mu * beta0, 2.0 * bp + 1.0, bp + 1.0),
            (2.0 * bm + 1.0, mu * beta0, bm + 1.0),
        ];
        for (w_amp, chi_amp, expo) in basis {
            let fval = |z: f64| {
                let pow = z.powf(expo);
                let dpow = expo * z.powf(expo - 1.0);
                [
                    (w_amp + chi_amp) * pow,
                    (w_amp + chi_amp) * dpow,
                    (w_amp - chi_amp) * pow,
                    (w_amp - chi_amp) * dpow,
                ]
            };
            let got = integrate_state(&problem, mu, 0.5, 3.0, fval(0.5)).unwrap();
            let want = fval(3.0);
            for i in 0..4 {
                let scale = want.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
                assert!(
                    (got[i] - want[i]).abs() < 1e-8 * scale,
                    "exponent {expo}: component {i}: {} vs {}",
                    got[i],
                    want[i]
                );
            }
        }
    }

    /// At mu = 0 the equations decouple up to the gamma terms; cross-check
    /// the adaptive integrator against a dense fixed-step RK4 reference.
    #[test]
    fn adaptive_integration_matches_dense_rk4_at_mu_zero() {
        let p = params();
        let problem = ShootingProblem::new(p, 0.5, 2.0, false).unwrap();
        let y0 = [0.3, -1.0, 0.7, 0.2];
        let got = integrate_state(&problem, 0.0, 0.5, 2.0, y0).unwrap();
        // reference: classical RK4, fixed step
        let mut y = y0;
        let n = 300_000;
        let h = 1.5 / n as f64;
        let mut z = 0.5;
        for _ in 0..n {
            let k1 = problem.rhs(0.0, z, &y);
            let add = |y: &[f64; 4], k: &[f64; 4], s: f64| {
                [y[0] + s * k[0], y[1] + s * k[1], y[2] + s * k[2], y[3] + s * k[3]]
            };
            let k2 = problem.rhs(0.0, z + h / 2.0, &add(&y, &k1, h / 2.0));
            let k3 = problem.rhs(0.0, z + h / 2.0, &add(&y, &k2, h / 2.0));
            let k4 = problem.rhs(0.0, z + h, &add(&y, &k3, h));
            for i in 0..4 {
                y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
            z += h;
        }
        for i in 0..4 {
            assert!((got[i] - y[i]).abs() < 1e-8, "{:?} vs {:?}", got, y);
        }
    }

    #[test]
    fn forward_then_backward_recovers_initial_state() {
        let p = params();
        let problem = ShootingProblem::new(p, 0.3, 3.0, false).unwrap();
        let y0 = [0.2, 1.0, -0.4, 0.6];
        let fwd = integrate_state(&problem, 0.35, 0.3, 3.0, y0).unwrap();
        let back = integrate_state(&problem, 0.35, 3.0, 0.3, fwd).unwrap();
        for i in 0..4 {
            assert!((back[i] - y0[i]).abs() < 1e-7, "{back:?} vs {y0:?}");
        }
    }

    #[test]
    fn matching_determinant_vanishes_at_the_analytic_eigenvalue() {
        let p = params();
        let ratio = 0.01;
        let problem = ShootingProblem::new(p, ratio, 1.0, true).unwrap();
        let b = ratio.powf(1.0 + p.alpha);
        let mu0 = mu_analytic(p.alpha, p.gamma, b).unwrap();
        let at_root = matching_determinant(&problem, mu0).unwrap();
        assert!(at_root.abs() < 1e-6, "det(mu0) = {at_root}");
        // away from the eigenvalue the normalized determinant is O(1)
        for dmu in [-0.2, 0.15] {
            let d = matching_determinant(&problem, mu0 + dmu).unwrap();
            assert!(d.abs() > 1e-3, "det({}) = {d}", mu0 + dmu);
        }
    }

    #[test]
    fn determinant_trace_is_continuous_in_mu() {
        let p = params();
        let problem = ShootingProblem::new(p, 0.01, 1.0, true).unwrap();
        let mus = linspace(0.05, 0.95, 91);
        let dets: Vec<f64> = mus
            .iter()
            .map(|&mu| matching_determinant(&problem, mu).unwrap())
            .collect();
        for w in dets.windows(2) {
            assert!((w[1] - w[0]).abs() < 0.5, "jump {} -> {}", w[0], w[1]);
        }
    }

    #[test]
    fn reduced_eigenvalue_reproduces_analytic_curve() {
        let alpha = 0.39;
        for gamma in [0.2, 0.6, 1.0, 1.4] {
            let p = WeightParams::for_sweep(alpha, gamma, 0.1, 1.2).unwrap();
            let ratio = 1e-2_f64;
            let mu = reduced_mu_min(&p, ratio).unwrap();
            let expected = mu_analytic(alpha, gamma, ratio.powf(1.0 + alpha)).unwrap();
            assert!(
                (mu - expected).abs() < 1e-3,
                "gamma={gamma}: {mu} vs {expected}"
            );
        }
    }

    #[test]
    fn eigenvalues_stable_under_tolerance_and_matching_choices() {
        let p = params();
        let mut problem = ShootingProblem::new(p, 0.01, 1.0, true).unwrap();
        let base = find_eigenvalues(&problem, (0.05, 0.98), 80).unwrap().mu_min;
        problem.tol = 5e-11;
        let tighter = find_eigenvalues(&problem, (0.05, 0.98), 80).unwrap().mu_min;
        assert!((base - tighter).abs() < 1e-6, "{base} vs {tighter}");
        problem.tol = 1e-10;
        problem.matching = MatchPoint::LogCenter;
        let log_center = find_eigenvalues(&problem, (0.05, 0.98), 80).unwrap().mu_min;
        assert!((base - log_center).abs() < 1e-6, "{base} vs {log_center}");
    }

    #[test]
    fn full_system_eigenvalue_dominates_lower_bound_smoke() {
        // small-interval smoke version of the full-system property
        let p = WeightParams::for_sweep(0.39, 0.7, 0.1, 1.2).unwrap();
        let problem = ShootingProblem::new(p, 1e-2, 10.0, false).unwrap();
        let result = find_eigenvalues(&problem, (0.2, 0.99), 120).unwrap();
        let lb = crate::minmax::lower_bound(&p).unwrap();
        assert!(
            result.mu_min >= lb - 1e-9,
            "mu_min = {} < LB = {lb}",
            result.mu_min
        );
    }

    #[test]
    fn empty_window_reports_no_eigenvalue() {
        let p = params();
        let problem = ShootingProblem::new(p, 0.5, 1.0, true).unwrap();
        // B close to 1 pushes mu0 toward 1; a low window finds nothing
        let err = find_eigenvalues(&problem, (0.01, 0.3), 40);
        assert!(matches!(err, Err(ShootingError::NoEigenvalueFound { .. })));
    }

    #[test]
    fn mu_guard_rejects_degenerate_values() {
        let p = params();
        let problem = ShootingProblem::new(p, 0.1, 1.0, true).unwrap();
        assert!(matches!(
            matching_determinant(&problem, 0.9999),
            Err(ShootingError::MuNearDegenerate { .. })
        ));
    }
}
