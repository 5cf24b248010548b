//! Reconstruction of the full field from the solved angle: the amplitude
//! exponent `p` by a discrete Poisson solve, assembly of
//! `f = h e^{(p+iq)/2}`, far-field decay analysis, and shifting of zeroes to
//! the symmetry axis by linear combinations.

use super::{coefficient_a, PdeError};
use crate::boundary::HarmonicInterpolant;
use crate::geometry::{
    legendre_with_derivative, winding_of_samples, DirectionField, GridScalar, PolarGrid,
    ZeroConfig,
};
use crate::numeric::linspace;
use crate::scalar::{c, Real};
use crate::sparse::{cg, Triplets};
use crate::Complex;

/// A reconstructed solution of the direction problem: the field components,
/// and, for direct solves, the correction functions it was assembled from.
#[derive(Debug, Clone)]
pub struct ReconstructedSolution<F> {
    pub grid: PolarGrid<F>,
    pub b_zeta: GridScalar<F>,
    pub b_rho: GridScalar<F>,
    /// Amplitude exponent (`None` for linear combinations).
    pub p: Option<GridScalar<F>>,
    /// Direction correction (`None` for linear combinations).
    pub q: Option<GridScalar<F>>,
    /// Signed amplitude `B·D/|D|²` against the prescribed direction at the
    /// inner circle, per direction sample.
    pub amplitude: Vec<F>,
    pub config: ZeroConfig<F>,
}

impl<F: Real> ReconstructedSolution<F> {
    /// Bilinear interpolation of `(B_ζ, B_ρ)` at `(r, φ)`, `φ ∈ (0, π)`.
    pub fn field_at(&self, r: F, phi: F) -> (F, F) {
        (self.b_zeta.interp(r, phi), self.b_rho.interp(r, phi))
    }

    /// `B_ζ` on the symmetry axis at `ζ > 0` by even extension (quadratic in
    /// `φ` near the axis, so the first ring value is second-order accurate).
    pub fn b_zeta_on_axis(&self, zeta: F) -> F {
        self.b_zeta.interp(zeta, self.grid.phi(0))
    }

    /// Minimum of `|B|` over the innermost cell ring.
    pub fn min_boundary_field(&self) -> F {
        let mut min = F::infinity();
        for j in 0..self.grid.n_phi {
            let b = self.b_zeta.at(0, j).hypot(self.b_rho.at(0, j));
            min = min.min(b);
        }
        min
    }

    /// Winding-number audit: rotation numbers of the sampled field along the
    /// circles `r_lo` and `r_hi` and their difference (= zeroes enclosed).
    pub fn audit_zero_count(&self, r_lo: F, r_hi: F) -> Result<(i32, i32), PdeError> {
        let sample = |r: F| -> Result<i32, PdeError> {
            let m = 2 * self.grid.n_phi;
            let mut vx = Vec::with_capacity(2 * m + 1);
            let mut vy = Vec::with_capacity(2 * m + 1);
            for k in 0..=(2 * m) {
                // full circle by symmetry: B_ζ even, B_ρ odd
                let phi = -F::PI()
                    + c::<F>(2.0) * F::PI() * F::from_usize(k).unwrap()
                        / F::from_usize(2 * m).unwrap();
                let (bz, br) = self.field_at(r, phi.abs());
                vx.push(bz);
                vy.push(if phi < F::zero() { -br } else { br });
            }
            Ok(winding_of_samples(&vx, &vy)?)
        };
        Ok((sample(r_lo)?, sample(r_hi)?))
    }
}

/// Gradient data of the amplitude exponent:
/// `G = (∂_ρ q + a_ρ[x] x/ρ, -∂_ζ q - a_ζ[x] x/ρ)` with `x = q - Ψ`.
pub fn amplitude_gradient<F: Real>(
    q: &GridScalar<F>,
    psi: &GridScalar<F>,
) -> (GridScalar<F>, GridScalar<F>) {
    let grid = q.grid;
    let (h_r, h_phi) = (grid.h_r(), grid.h_phi());
    let mut g_zeta = GridScalar::zeros(grid);
    let mut g_rho = GridScalar::zeros(grid);
    let value = |f: &GridScalar<F>, i: i64, j: i64| -> F {
        // odd reflection across the axis; one-sided handled by the caller
        let (i, j, sign) = if j < 0 {
            (i, -1 - j, -F::one())
        } else if j >= grid.n_phi as i64 {
            (i, 2 * grid.n_phi as i64 - 1 - j, -F::one())
        } else {
            (i, j, F::one())
        };
        sign * f.at(i as usize, j as usize)
    };
    for i in 0..grid.n_r {
        for j in 0..grid.n_phi {
            let (r, phi) = (grid.r(i), grid.phi(j));
            let (ii, jj) = (i as i64, j as i64);
            // radial derivative: central inside, second-order one-sided at
            // the circles (first-order there pollutes the curl diagnostics
            // of the adjacent ring)
            let dq_dr = if i == 0 {
                (-c::<F>(3.0) * value(q, 0, jj) + c::<F>(4.0) * value(q, 1, jj)
                    - value(q, 2, jj))
                    / (c::<F>(2.0) * h_r)
            } else if i == grid.n_r - 1 {
                (c::<F>(3.0) * value(q, ii, jj) - c::<F>(4.0) * value(q, ii - 1, jj)
                    + value(q, ii - 2, jj))
                    / (c::<F>(2.0) * h_r)
            } else {
                (value(q, ii + 1, jj) - value(q, ii - 1, jj)) / (c::<F>(2.0) * h_r)
            };
            let dq_dphi =
                (value(q, ii, jj + 1) - value(q, ii, jj - 1)) / (c::<F>(2.0) * h_phi);
            let (sin_p, cos_p) = (phi.sin(), phi.cos());
            let dq_dzeta = cos_p * dq_dr - sin_p * dq_dphi / r;
            let dq_drho = sin_p * dq_dr + cos_p * dq_dphi / r;
            let x = q.at(i, j) - psi.at(i, j);
            let quotient = x / (r * sin_p);
            let (a_z, a_r) = coefficient_a(x);
            *g_zeta.at_mut(i, j) = dq_drho + a_r * quotient;
            *g_rho.at_mut(i, j) = -dq_dzeta - a_z * quotient;
        }
    }
    (g_zeta, g_rho)
}

/// Cells whose finite-difference stencil crosses a 2π wrap of the
/// zero-positions angle (branch curves and the rings around prescribed
/// zeroes). Gradient data there is hypersensitive to the grid, while the
/// assembled field is not (the ansatz multiplies by `h`).
pub fn wrap_mask<F: Real>(psi: &GridScalar<F>) -> Vec<bool> {
    let grid = psi.grid;
    let mut mask = vec![false; grid.len()];
    let wrap_between = |a: F, b: F| (a - b).abs() > F::PI();
    for i in 0..grid.n_r {
        for j in 0..grid.n_phi {
            let me = psi.at(i, j);
            let mut near_wrap = false;
            if i > 0 {
                near_wrap |= wrap_between(me, psi.at(i - 1, j));
            }
            if i + 1 < grid.n_r {
                near_wrap |= wrap_between(me, psi.at(i + 1, j));
            }
            if j > 0 {
                near_wrap |= wrap_between(me, psi.at(i, j - 1));
            }
            if j + 1 < grid.n_phi {
                near_wrap |= wrap_between(me, psi.at(i, j + 1));
            }
            if near_wrap {
                // widen by one stencil radius in each direction
                for di in -2_i64..=2 {
                    for dj in -2_i64..=2 {
                        let (ii, jj) = (i as i64 + di, j as i64 + dj);
                        if ii >= 0
                            && jj >= 0
                            && (ii as usize) < grid.n_r
                            && (jj as usize) < grid.n_phi
                        {
                            mask[grid.idx(ii as usize, jj as usize)] = true;
                        }
                    }
                }
            }
        }
    }
    mask
}

/// Discrete curl residual of the gradient data, RMS over interior cells
/// relative to the RMS of `|G|`, skipping masked cells.
pub fn curl_residual<F: Real>(
    g_zeta: &GridScalar<F>,
    g_rho: &GridScalar<F>,
    mask: &[bool],
) -> F {
    let grid = g_zeta.grid;
    let (h_r, h_phi) = (grid.h_r(), grid.h_phi());
    let mut curl2 = F::zero();
    let mut norm2 = F::zero();
    let mut count = 0usize;
    for i in 1..grid.n_r.saturating_sub(1) {
        for j in 1..grid.n_phi.saturating_sub(1) {
            if !mask.is_empty() && mask[grid.idx(i, j)] {
                continue;
            }
            let (r, phi) = (grid.r(i), grid.phi(j));
            let (sin_p, cos_p) = (phi.sin(), phi.cos());
            let ddr = |f: &GridScalar<F>| (f.at(i + 1, j) - f.at(i - 1, j)) / (c::<F>(2.0) * h_r);
            let ddp =
                |f: &GridScalar<F>| (f.at(i, j + 1) - f.at(i, j - 1)) / (c::<F>(2.0) * h_phi);
            let dzeta = |f: &GridScalar<F>| cos_p * ddr(f) - sin_p * ddp(f) / r;
            let drho = |f: &GridScalar<F>| sin_p * ddr(f) + cos_p * ddp(f) / r;
            let curl = dzeta(g_rho) - drho(g_zeta);
            curl2 += curl * curl;
            norm2 += g_zeta.at(i, j).powi(2) + g_rho.at(i, j).powi(2);
            count += 1;
        }
    }
    let _ = count;
    (curl2 / norm2.max(F::min_positive_value())).sqrt()
}

/// Recover the amplitude exponent `p` from `q` and the exact-branch Ψ by a
/// least-squares potential solve (Poisson with natural boundary conditions),
/// normalized to `p = p0` at the node nearest `(1, π/2)`.
pub fn reconstruct_p<F: Real>(
    q: &GridScalar<F>,
    psi: &GridScalar<F>,
    p0: F,
    curl_tol: F,
) -> Result<GridScalar<F>, PdeError> {
    let grid = q.grid;
    let (g_zeta, g_rho) = amplitude_gradient(q, psi);
    let curl = curl_residual(&g_zeta, &g_rho, &wrap_mask(psi));
    if curl > curl_tol {
        return Err(PdeError::LargeCurl { got: curl.f64(), tol: curl_tol.f64() });
    }

    // FV Poisson: interior faces only (natural boundary conditions make the
    // boundary flux terms cancel against the data). The singular constant
    // mode is pinned by a rank-one diagonal shift at cell 0, which selects
    // the solution vanishing there.
    let (n_r, n_phi) = (grid.n_r, grid.n_phi);
    let (h_r, h_phi) = (grid.h_r(), grid.h_phi());
    let n = grid.len();
    let mut t = Triplets::new(n);
    let mut rhs = vec![F::zero(); n];
    let half = c::<F>(0.5);
    for i in 1..n_r {
        let r_f = grid.r_face(i);
        for j in 0..n_phi {
            let phi = grid.phi(j);
            let area = r_f * h_phi;
            let grad = area / h_r;
            let (lo, hi) = (grid.idx(i - 1, j), grid.idx(i, j));
            t.push(lo, lo, -grad);
            t.push(lo, hi, grad);
            t.push(hi, lo, grad);
            t.push(hi, hi, -grad);
            // G · e_r at the face
            let g_r = half
                * ((g_zeta.at(i - 1, j) + g_zeta.at(i, j)) * phi.cos()
                    + (g_rho.at(i - 1, j) + g_rho.at(i, j)) * phi.sin());
            rhs[lo] += area * g_r;
            rhs[hi] -= area * g_r;
        }
    }
    for i in 0..n_r {
        let r_c = grid.r(i);
        for j in 1..n_phi {
            let phi_f = grid.phi_face(j);
            let area = h_r;
            let grad = area / (r_c * h_phi);
            let (lo, hi) = (grid.idx(i, j - 1), grid.idx(i, j));
            t.push(lo, lo, -grad);
            t.push(lo, hi, grad);
            t.push(hi, lo, grad);
            t.push(hi, hi, -grad);
            let g_p = half
                * (-(g_zeta.at(i, j - 1) + g_zeta.at(i, j)) * phi_f.sin()
                    + (g_rho.at(i, j - 1) + g_rho.at(i, j)) * phi_f.cos());
            rhs[lo] += area * g_p;
            rhs[hi] -= area * g_p;
        }
    }
    // flip sign to make the operator positive definite for CG and pin the
    // constant mode
    let mut t_pos = Triplets::new(n);
    t_pos.push(0, 0, F::one());
    let m = t.to_csr();
    for i in 0..n {
        for k in m.row_ptr[i]..m.row_ptr[i + 1] {
            t_pos.push(i, m.col_idx[k], -m.values[k]);
        }
    }
    let rhs_neg: Vec<F> = rhs.iter().map(|&v| -v).collect();
    let matrix = t_pos.to_csr();
    let x = cg(&matrix, &rhs_neg, None, c(1e-12), 40_000)
        .map_err(|source| PdeError::LinearSolveFailed { source, inf_sup: None })?;
    let mut p = GridScalar { grid, data: x };
    // gauge: p = p0 at the node nearest (1, π/2)
    let anchor = p.at(0, n_phi / 2);
    for v in p.data.iter_mut() {
        *v = *v - anchor + p0;
    }
    Ok(p)
}

/// Assemble `f = h(z) e^{(p + i q)/2}` into the field components and the
/// signed boundary amplitude against the given direction field.
pub fn assemble_field<F: Real>(
    config: &ZeroConfig<F>,
    p: &GridScalar<F>,
    q: &GridScalar<F>,
    interp: &HarmonicInterpolant<F>,
    inner_trace: &[F],
    direction: &DirectionField<F>,
) -> Result<ReconstructedSolution<F>, PdeError> {
    let grid = p.grid;
    let mut b_zeta = GridScalar::zeros(grid);
    let mut b_rho = GridScalar::zeros(grid);
    for i in 0..grid.n_r {
        for j in 0..grid.n_phi {
            let (zeta, rho) = grid.node(i, j);
            let h = config.h(Complex::new(zeta, rho));
            let g = Complex::new(p.at(i, j), q.at(i, j)) * c::<F>(0.5);
            let f = h * g.exp();
            *b_zeta.at_mut(i, j) = f.re;
            *b_rho.at_mut(i, j) = -f.im;
        }
    }
    let _ = interp;

    // boundary amplitude a = B·D/|D|² at r = 1: q there is the exact trace,
    // p is extrapolated linearly from the first two rings
    let mut amplitude = Vec::with_capacity(direction.phis.len());
    for (k, &phi) in direction.phis.iter().enumerate() {
        let phi_fold = phi.abs().max(grid.phi(0)).min(grid.phi(grid.n_phi - 1));
        let p0 = p.interp(grid.r(0), phi_fold);
        let p1 = p.interp(grid.r(1), phi_fold);
        let p_at_wall = p0 - (p1 - p0) / c(2.0);
        // the trace is sampled over the full circle, aligned with the
        // direction samples
        let q_at_wall = inner_trace[k];
        let z = Complex::from_polar(F::one(), phi.abs().max(c(1e-12)) * phi.signum());
        let h = config.h(z);
        let f = h * (Complex::new(p_at_wall, q_at_wall) * c::<F>(0.5)).exp();
        let (bz, br) = (f.re, -f.im);
        let (dz, dr) = (direction.d_zeta[k], direction.d_rho[k]);
        amplitude.push((bz * dz + br * dr) / (dz * dz + dr * dr));
    }

    Ok(ReconstructedSolution {
        grid,
        b_zeta,
        b_rho,
        p: Some(p.clone()),
        q: Some(q.clone()),
        amplitude,
        config: config.clone(),
    })
}

/// Fit of the far-field multipole content.
#[derive(Debug, Clone)]
pub struct DecayFit<F> {
    /// Exact decay order: smallest `n` with a surviving coefficient, plus 2.
    pub delta: i32,
    /// Fitted coefficients `c_n` for `n = 0..`, averaged over the radii.
    pub coeffs: Vec<F>,
    /// Log-log slopes of the per-mode projections.
    pub slopes: Vec<F>,
}

/// Project `B·e_r` onto Legendre modes on the given circles and fit the
/// decay: `c_n(r) = -r^{n+2} (2n+1)/(2(n+1)) ∫ B_r P_n(cos φ) sin φ dφ`
/// is radius-independent exactly when the field is the pure multipole sum.
pub fn decay_order<F: Real>(
    field: impl Fn(F, F) -> (F, F),
    radii: &[F],
    n_max: usize,
) -> Result<DecayFit<F>, PdeError> {
    if radii.len() < 2 {
        return Err(PdeError::BadInput("need at least two radii".into()));
    }
    let n_quad = 1024;
    let phis = linspace(F::zero(), F::PI(), n_quad + 1);
    let h = F::PI() / F::from_usize(n_quad).unwrap();
    // raw projections m_n(r) = ∫ B_r P_n sinφ dφ, composite Simpson
    let mut proj = vec![vec![F::zero(); radii.len()]; n_max + 1];
    for (ri, &r) in radii.iter().enumerate() {
        for (k, &phi) in phis.iter().enumerate() {
            if k == 0 || k == n_quad {
                continue; // integrand vanishes at the axis ends
            }
            let weight: F = if k % 2 == 1 { c(4.0 / 3.0) } else { c(2.0 / 3.0) };
            let (bz, brho) = field(r, phi);
            let b_r = bz * phi.cos() + brho * phi.sin();
            let (pn, _) = legendre_with_derivative(n_max, phi.cos());
            for (n, row) in proj.iter_mut().enumerate() {
                row[ri] += b_r * pn[n] * phi.sin() * h * weight;
            }
        }
    }
    // per-mode coefficients, their spread across radii, and log-log slopes
    let mut coeffs = Vec::with_capacity(n_max + 1);
    let mut spreads = Vec::with_capacity(n_max + 1);
    let mut slopes = Vec::with_capacity(n_max + 1);
    for (n, row) in proj.iter().enumerate() {
        let nf = F::from_usize(n).unwrap();
        let c_of_r: Vec<F> = row
            .iter()
            .zip(radii)
            .map(|(&m, &r)| {
                -r.powf(nf + c(2.0)) * (c::<F>(2.0) * nf + F::one())
                    / (c::<F>(2.0) * (nf + F::one()))
                    * m
            })
            .collect();
        let mean = c_of_r.iter().fold(F::zero(), |a, &b| a + b)
            / F::from_usize(c_of_r.len()).unwrap();
        coeffs.push(mean);
        let spread = c_of_r
            .iter()
            .fold(F::zero(), |a, &b| a.max((b - mean).abs()))
            / mean.abs().max(F::min_positive_value());
        spreads.push(spread);
        // log-log slope of |m_n| between first and last radius
        let (m0, m1) = (row[0].abs(), row[row.len() - 1].abs());
        let slope = if m0 > F::zero() && m1 > F::zero() {
            (m1 / m0).ln() / (radii[radii.len() - 1] / radii[0]).ln()
        } else {
            F::nan()
        };
        slopes.push(slope);
    }
    let leading = coeffs.iter().fold(F::zero(), |a, &b| a.max(b.abs()));
    let threshold = c::<F>(1e-6) * leading;
    // a genuine mode is radius-consistent; cancellation residue from field
    // combinations is not. Axisymmetric harmonic fields have no monopole
    // (n starts at 1).
    let n_min = match (1..coeffs.len())
        .find(|&n| coeffs[n].abs() > threshold && spreads[n] < c(0.5))
    {
        Some(n) => n,
        None => {
            // content above threshold that is not radius-consistent is a
            // noisy (non-power-law) field
            if let Some(n) = (1..coeffs.len()).find(|&n| coeffs[n].abs() > threshold) {
                return Err(PdeError::NoisyFit { slope: slopes[n].f64() });
            }
            return Err(PdeError::BadInput("field has no multipole content".into()));
        }
    };
    // slope sanity for the surviving leading mode
    let slope = slopes[n_min];
    if slope.is_finite() {
        let expected = -(F::from_usize(n_min).unwrap() + c(2.0));
        if (slope - expected).abs() > c(0.1) {
            return Err(PdeError::NoisyFit { slope: slope.f64() });
        }
    }
    Ok(DecayFit { delta: n_min as i32 + 2, coeffs, slopes })
}

/// Which linear system governs the combination weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisShiftMode<F> {
    /// Null `B_ζ(ζ_S, 0)` and cancel the leading multipole coefficient:
    /// one zero moves to the axis, the other is expelled to infinity, and
    /// the decay order rises by exactly one.
    Expel,
    /// Null `B_ζ` at two axis positions `ζ_S` and the given second point.
    SecondAxis(F),
}

/// Shift a zero to the symmetry axis by a linear combination of three
/// solutions sharing their remaining zeroes: `B^δ[.., z, z̄]`,
/// `B~^δ[.., z~, z̄~]` (distinct pair), and `B^{δ+2}[..]`.
pub fn shift_zero_to_axis<F: Real>(
    solutions: [&ReconstructedSolution<F>; 3],
    zeta_s: F,
    mode: AxisShiftMode<F>,
) -> Result<ReconstructedSolution<F>, PdeError> {
    let [b1, b2, b3] = solutions;
    // the two δ-order solutions must carry distinct zero pairs
    let z1 = b1.config.upper_pairs();
    let z2 = b2.config.upper_pairs();
    if let (Some(&za), Some(&zb)) = (z1.last(), z2.last()) {
        if (za - zb).norm() < c::<F>(1e-9) * za.norm() {
            return Err(PdeError::DegenerateSystem(
                "the two pair-carrying solutions share the same zero pair".into(),
            ));
        }
    }
    let grid = b1.grid;
    let radii: Vec<F> = vec![
        grid.r_max * c(0.55),
        grid.r_max * c(0.65),
        grid.r_max * c(0.75),
    ];
    let n_lead = (b1.config.rho_hat_effective() - 1).max(0) as usize;
    let lead_coeff = |b: &ReconstructedSolution<F>| -> Result<F, PdeError> {
        let fit = decay_order(|r, phi| b.field_at(r, phi), &radii, n_lead + 3)?;
        Ok(fit.coeffs[n_lead])
    };

    let a1 = b1.b_zeta_on_axis(zeta_s);
    let a2 = b2.b_zeta_on_axis(zeta_s);
    let a3 = b3.b_zeta_on_axis(zeta_s);
    // unknowns (λ, λ~) with λ̂ = 1
    let (m11, m12, r1) = (a1, a2, -a3);
    let (m21, m22, r2) = match mode {
        AxisShiftMode::Expel => {
            let c1 = lead_coeff(b1)?;
            let c2 = lead_coeff(b2)?;
            (c1, c2, F::zero())
        }
        AxisShiftMode::SecondAxis(zeta_t) => {
            let a1t = b1.b_zeta_on_axis(zeta_t);
            let a2t = b2.b_zeta_on_axis(zeta_t);
            let a3t = b3.b_zeta_on_axis(zeta_t);
            (a1t, a2t, -a3t)
        }
    };
    let det = m11 * m22 - m12 * m21;
    let scale = m11.abs().max(m12.abs()).max(m21.abs()).max(m22.abs());
    if det.abs() < c::<F>(1e-12) * scale * scale {
        return Err(PdeError::DegenerateSystem(format!(
            "2x2 combination system singular (det = {det})"
        )));
    }
    let lam1 = (r1 * m22 - r2 * m12) / det;
    let lam2 = (r2 * m11 - r1 * m21) / det;

    let mut b_zeta = GridScalar::zeros(grid);
    let mut b_rho = GridScalar::zeros(grid);
    for k in 0..grid.len() {
        b_zeta.data[k] =
            lam1 * b1.b_zeta.data[k] + lam2 * b2.b_zeta.data[k] + b3.b_zeta.data[k];
        b_rho.data[k] = lam1 * b1.b_rho.data[k] + lam2 * b2.b_rho.data[k] + b3.b_rho.data[k];
    }
    let amplitude = (0..b1.amplitude.len())
        .map(|k| lam1 * b1.amplitude[k] + lam2 * b2.amplitude[k] + b3.amplitude[k])
        .collect();
    Ok(ReconstructedSolution {
        grid,
        b_zeta,
        b_rho,
        p: None,
        q: None,
        amplitude,
        config: b3.config.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::MultipoleSpec;
    use std::f64::consts::PI;

    #[test]
    fn zero_data_gives_constant_p() {
        let grid = PolarGrid::annulus(2.0, 24, 32).unwrap();
        let q = GridScalar::zeros(grid);
        let psi = GridScalar::zeros(grid);
        let p = reconstruct_p(&q, &psi, 0.7, 1e-3).unwrap();
        for &v in &p.data {
            assert!((v - 0.7_f64).abs() < 1e-10, "{v}");
        }
    }

    /// The exact dipole: q and Ψ are known in closed form; p must match
    /// `2 ln |f/h|` up to the gauge constant.
    #[test]
    fn dipole_p_reconstruction_matches_closed_form() {
        let grid = PolarGrid::annulus(4.0, 128, 256).unwrap();
        let q_exact = |phi: f64| {
            2.0 * Complex::new(3.0 + (2.0 * phi).cos(), (2.0 * phi).sin()).arg()
        };
        let q = GridScalar::from_fn(grid, |_r, phi| q_exact(phi));
        // Ψ for h = z^{-2}: exact branch = wrapped 4φ
        let cfg = ZeroConfig::<f64>::exterior_no_zeroes(2);
        let psi = GridScalar::from_fn(grid, |r, phi| {
            crate::boundary::zero_angle_exact(&cfg, (r * phi.cos(), r * phi.sin())).unwrap()
        });
        let p = reconstruct_p(&q, &psi, 0.0, 1e-3).unwrap();
        // exact: p = 2 ln |f/h| = 2 ln( |3 + e^{2iφ}| / (2 r) )
        let p_exact = |r: f64, phi: f64| {
            2.0 * (Complex::new(3.0 + (2.0 * phi).cos(), (2.0 * phi).sin()).norm()
                / (2.0 * r))
                .ln()
        };
        let gauge = p_exact(grid.r(0), grid.phi(grid.n_phi / 2));
        let mut worst = 0.0_f64;
        for i in 0..grid.n_r {
            for j in 0..grid.n_phi {
                let want = p_exact(grid.r(i), grid.phi(j)) - gauge;
                worst = worst.max((p.at(i, j) - want).abs());
            }
        }
        assert!(worst < 1e-3, "max p error {worst}");
    }

    /// Analytic integrability: the curl of the dipole's gradient data, with
    /// exact fields sampled at a fine step, is at rounding level.
    #[test]
    fn dipole_gradient_data_is_curl_free_analytically() {
        let q_exact = |phi: f64| {
            2.0 * Complex::new(3.0 + (2.0 * phi).cos(), (2.0 * phi).sin()).arg()
        };
        let cfg = ZeroConfig::<f64>::exterior_no_zeroes(2);
        let g = |r: f64, phi: f64| -> (f64, f64) {
            let (zeta, rho) = (r * phi.cos(), r * phi.sin());
            let psi =
                crate::boundary::zero_angle_exact(&cfg, (zeta, rho)).unwrap();
            let x: f64 = q_exact(phi) - psi;
            let (az, ar) = coefficient_a(x);
            // dq/dρ and dq/dζ from the closed form (q depends on φ only)
            let h = 1e-5;
            let dq_dphi = (q_exact(phi + h) - q_exact(phi - h)) / (2.0 * h);
            let dq_dzeta = -phi.sin() * dq_dphi / r;
            let dq_drho = phi.cos() * dq_dphi / r;
            (dq_drho + ar * x / rho, -dq_dzeta - az * x / rho)
        };
        // finite-difference curl at a fine independent step
        let (r, phi) = (1.8_f64, 0.9_f64);
        let h = 1e-4;
        let (zeta, rho) = (r * phi.cos(), r * phi.sin());
        let at = |z: f64, rr: f64| {
            let rad = z.hypot(rr);
            let ang = rr.atan2(z);
            g(rad, ang)
        };
        let (_, grho_e) = at(zeta + h, rho);
        let (_, grho_w) = at(zeta - h, rho);
        let (gz_n, _) = at(zeta, rho + h);
        let (gz_s, _) = at(zeta, rho - h);
        let curl = (grho_e - grho_w) / (2.0 * h) - (gz_n - gz_s) / (2.0 * h);
        assert!(curl.abs() < 1e-6, "curl = {curl}");
    }

    #[test]
    fn curl_check_rejects_non_solutions() {
        let grid = PolarGrid::annulus(2.0, 32, 48).unwrap();
        // a q that is NOT a solution for Ψ = 0
        let q = GridScalar::from_fn(grid, |r: f64, phi: f64| (3.0 * r).sin() * phi.sin());
        let psi = GridScalar::zeros(grid);
        assert!(matches!(
            reconstruct_p(&q, &psi, 0.0, 1e-6),
            Err(PdeError::LargeCurl { .. })
        ));
    }

    #[test]
    fn pure_pole_assembles_to_h_itself() {
        let grid = PolarGrid::annulus(3.0, 32, 64).unwrap();
        let cfg = ZeroConfig::<f64>::exterior_no_zeroes(2);
        let p = GridScalar::zeros(grid);
        let q = GridScalar::zeros(grid);
        let phis = linspace(-PI, PI, 129);
        let trace = vec![0.0; phis.len()];
        // direction of h = z^{-2} on the unit circle: f = e^{-2iφ}
        let dir = DirectionField::from_samples(
            phis.iter().map(|&p| p).collect(),
            phis.iter().map(|&p| (2.0 * p).cos()).collect(),
            phis.iter().map(|&p| (2.0 * p).sin()).collect(),
        )
        .unwrap();
        let interp = crate::boundary::HarmonicInterpolant::<f64> {
            inner: vec![0.0],
            outer: Some(vec![0.0]),
            r_outer: Some(3.0),
        };
        let sol = assemble_field(&cfg, &p, &q, &interp, &trace, &dir).unwrap();
        for i in (0..grid.n_r).step_by(7) {
            for j in (0..grid.n_phi).step_by(11) {
                let (zeta, rho) = grid.node(i, j);
                let h = cfg.h(Complex::new(zeta, rho));
                assert!((sol.b_zeta.at(i, j) - h.re).abs() < 1e-14);
                assert!((sol.b_rho.at(i, j) + h.im).abs() < 1e-14);
            }
        }
        // amplitude positive everywhere on the circle
        assert!(sol.amplitude.iter().all(|&a| a > 0.0));
    }

    #[test]
    fn decay_order_identifies_multipole_content() {
        // pure dipole
        let dip = MultipoleSpec::<f64>::unit_dipole();
        let fit = decay_order(
            |r, phi| dip.field_cartesian(r, phi).unwrap(),
            &[3.0, 4.0, 5.0],
            5,
        )
        .unwrap();
        assert_eq!(fit.delta, 3);
        assert!((fit.coeffs[1] - (-1.0)).abs() < 1e-9, "{:?}", fit.coeffs);

        // dipole + quadrupole mixture: both recovered
        let mix = MultipoleSpec::<f64>::new(3, vec![-1.0, 0.35]).unwrap();
        let fit = decay_order(
            |r, phi| mix.field_cartesian(r, phi).unwrap(),
            &[3.0, 4.0, 5.0],
            5,
        )
        .unwrap();
        assert_eq!(fit.delta, 3);
        assert!((fit.coeffs[1] + 1.0).abs() < 1e-6);
        assert!((fit.coeffs[2] - 0.35).abs() < 1e-6);
    }

    #[test]
    fn decay_order_flags_noisy_fields() {
        // not a harmonic field: projections do not follow power laws
        let result = decay_order(
            |r: f64, phi: f64| ((r * 3.0).sin() * phi.sin(), (r * 2.0).cos() * phi.sin()),
            &[2.0, 3.0, 4.0],
            4,
        );
        assert!(matches!(result, Err(PdeError::NoisyFit { .. })), "{result:?}");
    }
}
