//! Nonlinear solver for the singular divergence-form problem on half-annuli,
//! reconstruction of the full harmonic field from its direction data, decay
//! analysis, and shifting of zeroes to the symmetry axis.
//!
//! The equation for `u` (odd across the axis, zero on both circles) is
//!
//! ```text
//! div( grad u + a[u - Ω] u/ρ ) = div( a[u - Ω] Ω/ρ ),
//! a[x] = ( (1-cos x)/x , sin(x)/x ),
//! ```
//!
//! discretized by conservative finite volumes on the cell-centered polar
//! grid and solved by Picard iteration with under-relaxation: each step
//! freezes the coefficient argument at the previous iterate and solves the
//! resulting sparse linear system.

mod reconstruct;

pub use reconstruct::{
    assemble_field, curl_residual, decay_order, reconstruct_p, shift_zero_to_axis,
    wrap_mask, AxisShiftMode, DecayFit, ReconstructedSolution,
};

use crate::boundary::{
    boundary_trace, harmonic_interpolant, zero_angle_exact, AngleField, BoundaryError,
    HarmonicInterpolant, OuterData, TraceCircle,
};
use crate::geometry::{
    legendre_with_derivative, rotation_number, DirectionField, GeometryError, GridScalar,
    PolarGrid, ZeroConfig,
};
use crate::hardy::WeightParams;
use crate::scalar::{c, Real};
use crate::sparse::{bicgstab, Csr, SparseError, Triplets};

#[derive(Debug, thiserror::Error)]
pub enum PdeError {
    #[error("linear solve failed: {source} (discrete inf-sup estimate: {inf_sup:?})")]
    LinearSolveFailed {
        source: SparseError,
        inf_sup: Option<f64>,
    },
    #[error("Picard iteration did not converge after {iters} iterations (last increment {increment:.3e})")]
    NotConverged {
        iters: usize,
        increment: f64,
        state: Box<SolveStateF64>,
    },
    #[error("Picard iteration diverging: weighted energy doubled twice")]
    DivergingIteration,
    #[error("boundary amplitude not positive at φ = {phi}")]
    PositivityViolated { phi: f64 },
    #[error("curl of the gradient data too large: {got:.3e} > {tol:.3e}")]
    LargeCurl { got: f64, tol: f64 },
    #[error("zero-shift system degenerate: {0}")]
    DegenerateSystem(String),
    #[error("decay fit too noisy: slope {slope:.3} not near an integer")]
    NoisyFit { slope: f64 },
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{0}")]
    BadInput(String),
}

/// Untyped snapshot of a solve for error reporting.
pub type SolveStateF64 = SolveDiagnostics;

#[derive(Debug, Clone)]
pub struct SolveDiagnostics {
    pub iterations: usize,
    pub increments: Vec<f64>,
    pub residuals: Vec<f64>,
    pub relaxations: Vec<f64>,
    pub energies: Vec<f64>,
}

/// The coefficient pair `(a_ζ[x], a_ρ[x]) = ((1-cos x)/x, sin(x)/x)` with
/// series evaluation near the removable singularity.
pub fn coefficient_a<F: Real>(x: F) -> (F, F) {
    if x.abs() < c(1e-4) {
        let x2 = x * x;
        // a_ζ = x/2 - x^3/24, a_ρ = 1 - x^2/6 + x^4/120
        (
            x / c(2.0) - x * x2 / c(24.0),
            F::one() - x2 / c(6.0) + x2 * x2 / c(120.0),
        )
    } else {
        ((F::one() - x.cos()) / x, x.sin() / x)
    }
}

/// Data Ω = Ψ − Φ prepared for the finite-volume solver: cell values plus
/// the `Ω/ρ` quotients and coefficient arguments at faces.
#[derive(Debug, Clone)]
pub struct OmegaData<F> {
    pub cells: GridScalar<F>,
    /// Ω at radial faces `(i = 0..=n_r, j)`, exact where an evaluator was
    /// given, else one-sided/averaged cell values.
    r_faces: Vec<F>,
    /// Ω at angular faces `(i, j = 0..=n_phi)`.
    phi_faces: Vec<F>,
}

impl<F: Real> OmegaData<F> {
    /// Build from sampled cell values only (face values by averaging).
    pub fn from_field(field: &AngleField<F>) -> Self {
        let grid = field.grid();
        let cells = field.samples.clone();
        let mut r_faces = vec![F::zero(); (grid.n_r + 1) * grid.n_phi];
        for i in 0..=grid.n_r {
            for j in 0..grid.n_phi {
                let v = if i == 0 {
                    cells.at(0, j)
                } else if i == grid.n_r {
                    cells.at(grid.n_r - 1, j)
                } else {
                    (cells.at(i - 1, j) + cells.at(i, j)) / c(2.0)
                };
                r_faces[i * grid.n_phi + j] = v;
            }
        }
        let mut phi_faces = vec![F::zero(); grid.n_r * (grid.n_phi + 1)];
        for i in 0..grid.n_r {
            for j in 0..=grid.n_phi {
                // odd across the axis: face value is zero there
                let v = if j == 0 || j == grid.n_phi {
                    F::zero()
                } else {
                    (cells.at(i, j - 1) + cells.at(i, j)) / c(2.0)
                };
                phi_faces[i * (grid.n_phi + 1) + j] = v;
            }
        }
        Self { cells, r_faces, phi_faces }
    }

    /// Build by evaluating Ω everywhere (cells and faces) from a closed
    /// form; `f(r, phi)` must be odd in `phi`.
    pub fn from_fn(grid: PolarGrid<F>, f: impl Fn(F, F) -> F) -> Self {
        let cells = GridScalar::from_fn(grid, &f);
        let mut r_faces = vec![F::zero(); (grid.n_r + 1) * grid.n_phi];
        for i in 0..=grid.n_r {
            for j in 0..grid.n_phi {
                r_faces[i * grid.n_phi + j] = f(grid.r_face(i), grid.phi(j));
            }
        }
        let mut phi_faces = vec![F::zero(); grid.n_r * (grid.n_phi + 1)];
        for i in 0..grid.n_r {
            for j in 0..=grid.n_phi {
                let v = if j == 0 || j == grid.n_phi {
                    F::zero()
                } else {
                    f(grid.r(i), grid.phi_face(j))
                };
                phi_faces[i * (grid.n_phi + 1) + j] = v;
            }
        }
        Self { cells, r_faces, phi_faces }
    }

    pub fn grid(&self) -> PolarGrid<F> {
        self.cells.grid
    }
}

/// Assembled linear system for one frozen coefficient argument.
pub(crate) struct FvSystem<F> {
    pub matrix: Csr<F>,
    pub rhs: Vec<F>,
}

/// Conservative finite-volume assembly of the linearized operator: fluxes of
/// `grad u` and `(a/ρ) u` through cell faces, with odd reflection across the
/// axis and zero Dirichlet values on both circles.
pub(crate) fn assemble_linearized<F: Real>(
    omega: &OmegaData<F>,
    frozen: &GridScalar<F>,
) -> FvSystem<F> {
    let grid = omega.grid();
    let (n_r, n_phi) = (grid.n_r, grid.n_phi);
    let (h_r, h_phi) = (grid.h_r(), grid.h_phi());
    let n = grid.len();
    let mut t = Triplets::new(n);
    let mut rhs = vec![F::zero(); n];
    let half = c::<F>(0.5);

    // radial faces: normal e_r, area r_f * h_phi, owner = left cell (i-1, j)
    for i in 0..=n_r {
        let r_f = grid.r_face(i);
        for j in 0..n_phi {
            let phi = grid.phi(j);
            let (sin_p, cos_p) = (phi.sin(), phi.cos());
            let area = r_f * h_phi;
            let omega_f = omega.r_faces[i * n_phi + j];
            // frozen argument w - Ω at the face (w = 0 on the circles)
            let x_f = if i == 0 || i == n_r {
                -omega_f
            } else {
                half * (frozen.at(i - 1, j) + frozen.at(i, j)) - omega_f
            };
            let (a_z, a_r) = coefficient_a(x_f);
            let s = a_z * cos_p + a_r * sin_p; // a · e_r
            let rho_f = r_f * sin_p;

            match i {
                0 => {
                    // inner circle (outward normal -e_r): u = 0 on the face,
                    // so the gradient is 2 u / h_r and u/ρ vanishes there
                    let me = grid.idx(0, j);
                    t.push(me, me, -area * c::<F>(2.0) / h_r);
                    rhs[me] -= area * s * omega_f / rho_f;
                }
                _ if i == n_r => {
                    let me = grid.idx(n_r - 1, j);
                    t.push(me, me, -area * c::<F>(2.0) / h_r);
                    rhs[me] += area * s * omega_f / rho_f;
                }
                _ => {
                    let left = grid.idx(i - 1, j);
                    let right = grid.idx(i, j);
                    let grad = area / h_r;
                    // flux out of `left`: (u_R - u_L)/h_r + s * mean(u/ρ)
                    let q_l = half * s * area / (grid.rho(i - 1, j));
                    let q_r = half * s * area / (grid.rho(i, j));
                    t.push(left, left, -grad + q_l);
                    t.push(left, right, grad + q_r);
                    t.push(right, left, grad - q_l);
                    t.push(right, right, -grad - q_r);
                    // Ω/ρ from the single face value: the 2π branch of the
                    // face must match the one inside the coefficient a[x_f]
                    // (cell averages mix branches across the jump rays)
                    let g = area * s * omega_f / rho_f;
                    rhs[left] += g;
                    rhs[right] -= g;
                }
            }
        }
    }

    // angular faces: normal e_phi, area h_r, owner = lower cell (i, j-1)
    for i in 0..n_r {
        let r_c = grid.r(i);
        for j in 0..=n_phi {
            let phi_f = grid.phi_face(j);
            let (sin_f, cos_f) = (phi_f.sin(), phi_f.cos());
            let area = h_r;
            let grad = area / (r_c * h_phi);
            if j == 0 || j == n_phi {
                // axis faces: odd reflection; the coefficient argument
                // vanishes by oddness (a = (0, 1)), the quotient u/ρ is even
                let me = if j == 0 { grid.idx(i, 0) } else { grid.idx(i, n_phi - 1) };
                let s = -sin_f * F::zero() + cos_f * F::one(); // a · e_phi at x = 0
                let n_out: F = if j == 0 { -F::one() } else { F::one() };
                // gradient part: (ghost - u)/h with ghost = -u
                t.push(me, me, -area * c::<F>(2.0) / (r_c * h_phi));
                // quotient part: face value of u/ρ equals the cell value
                let q = n_out * s * area / grid.rho(i, me % n_phi);
                t.push(me, me, q);
                let g = n_out * s * area * omega.cells.at(i, me % n_phi)
                    / grid.rho(i, me % n_phi);
                rhs[me] += g;
            } else {
                let lower = grid.idx(i, j - 1);
                let upper = grid.idx(i, j);
                let omega_f = omega.phi_faces[i * (n_phi + 1) + j];
                let x_f = half * (frozen.at(i, j - 1) + frozen.at(i, j)) - omega_f;
                let (a_z, a_r) = coefficient_a(x_f);
                let s = -a_z * sin_f + a_r * cos_f; // a · e_phi
                let q_l = half * s * area / grid.rho(i, j - 1);
                let q_u = half * s * area / grid.rho(i, j);
                t.push(lower, lower, -grad + q_l);
                t.push(lower, upper, grad + q_u);
                t.push(upper, lower, grad - q_l);
                t.push(upper, upper, -grad - q_u);
                let rho_f = r_c * sin_f;
                let g = area * s * omega_f / rho_f;
                rhs[lower] += g;
                rhs[upper] -= g;
            }
        }
    }

    FvSystem { matrix: t.to_csr(), rhs }
}

/// Options for the nonlinear solve.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions<F> {
    /// Relative increment (weighted energy norm) below which to stop.
    pub tol: F,
    pub max_iter: usize,
    /// Initial under-relaxation; halves on residual increase, floor 1/8.
    pub omega0: F,
    /// Relative residual of each sparse solve.
    pub linear_tol: F,
}

impl<F: Real> Default for SolveOptions<F> {
    fn default() -> Self {
        Self { tol: c(1e-8), max_iter: 200, omega0: F::one(), linear_tol: c(1e-10) }
    }
}

/// Result of the Picard iteration.
#[derive(Debug, Clone)]
pub struct SolveState<F> {
    pub u: GridScalar<F>,
    pub converged: bool,
    pub diagnostics: SolveDiagnostics,
    /// `∫ |grad u|² ρ^{-β}` with the monitor weight `β` from the params.
    pub energy_monitor: F,
}

/// Weighted gradient energy `∫ |grad u|² ρ^{-β}` by face-wise differences
/// (ghost reflection at the axis, zero values on the circles).
pub fn weighted_energy<F: Real>(u: &GridScalar<F>, beta: F) -> F {
    let grid = u.grid;
    let (h_r, h_phi) = (grid.h_r(), grid.h_phi());
    let mut acc = F::zero();
    // radial faces
    for i in 0..=grid.n_r {
        let r_f = grid.r_face(i);
        for j in 0..grid.n_phi {
            let diff = if i == 0 {
                u.at(0, j) * c(2.0)
            } else if i == grid.n_r {
                -u.at(grid.n_r - 1, j) * c(2.0)
            } else {
                u.at(i, j) - u.at(i - 1, j)
            };
            let g = diff / h_r;
            let rho_f = r_f * grid.phi(j).sin();
            acc += g * g * rho_f.powf(-beta) * r_f * h_phi * h_r;
        }
    }
    // angular faces
    for i in 0..grid.n_r {
        let r_c = grid.r(i);
        for j in 0..=grid.n_phi {
            let diff = if j == 0 {
                u.at(i, 0) * c(2.0)
            } else if j == grid.n_phi {
                -u.at(i, grid.n_phi - 1) * c(2.0)
            } else {
                u.at(i, j) - u.at(i, j - 1)
            };
            let g = diff / (r_c * h_phi);
            let phi_f = grid.phi_face(j);
            let rho_f = r_c * phi_f.sin().max(h_phi / c(4.0));
            acc += g * g * rho_f.powf(-beta) * h_r * r_c * h_phi;
        }
    }
    acc
}

/// Solve the linearized equation with coefficient argument frozen at `w`,
/// returning `v = ρ^α u` (the theory's working variable; `u = v ρ^{-α}`).
pub fn solve_linearized<F: Real>(
    omega: &OmegaData<F>,
    frozen: &GridScalar<F>,
    params: &WeightParams<F>,
    linear_tol: F,
) -> Result<GridScalar<F>, PdeError> {
    let u = linear_solve_u(omega, frozen, linear_tol)?;
    let grid = u.grid;
    let mut v = u;
    for i in 0..grid.n_r {
        for j in 0..grid.n_phi {
            *v.at_mut(i, j) *= grid.rho(i, j).powf(params.alpha);
        }
    }
    Ok(v)
}

fn linear_solve_u<F: Real>(
    omega: &OmegaData<F>,
    frozen: &GridScalar<F>,
    linear_tol: F,
) -> Result<GridScalar<F>, PdeError> {
    let system = assemble_linearized(omega, frozen);
    let x = bicgstab(&system.matrix, &system.rhs, Some(&frozen.data), linear_tol, 20_000)
        .or_else(|_| bicgstab(&system.matrix, &system.rhs, None, linear_tol, 40_000))
        .map_err(|source| PdeError::LinearSolveFailed { source, inf_sup: None })?;
    Ok(GridScalar { grid: omega.grid(), data: x })
}

/// Picard iteration `u_{k+1} = T u_k` with under-relaxation; stops when the
/// relative increment in the weighted energy norm falls below `tol`.
pub fn solve_nonlinear<F: Real>(
    omega: &OmegaData<F>,
    params: &WeightParams<F>,
    opts: &SolveOptions<F>,
    initial: Option<GridScalar<F>>,
) -> Result<SolveState<F>, PdeError> {
    let grid = omega.grid();
    let mut u = initial.unwrap_or_else(|| GridScalar::zeros(grid));
    let beta = params.beta;
    let mut relax = opts.omega0;
    let mut diag = SolveDiagnostics {
        iterations: 0,
        increments: vec![],
        residuals: vec![],
        relaxations: vec![],
        energies: vec![],
    };
    let mut prev_residual = F::infinity();
    let mut energy_doublings = 0usize;
    let mut prev_energy = F::zero();
    for iter in 0..opts.max_iter {
        let system = assemble_linearized(omega, &u);
        // nonlinear residual at the current iterate
        let au = system.matrix.matvec_alloc(&u.data);
        let mut res = F::zero();
        let mut rhs_norm = F::zero();
        for (a, b) in au.iter().zip(&system.rhs) {
            res += (*a - *b) * (*a - *b);
            rhs_norm += *b * *b;
        }
        let res = res.sqrt() / rhs_norm.sqrt().max(F::min_positive_value());
        if res > prev_residual * (F::one() + c(1e-12)) {
            relax = (relax / c(2.0)).max(c(0.125));
        }
        prev_residual = res;

        let x = bicgstab(&system.matrix, &system.rhs, Some(&u.data), opts.linear_tol, 20_000)
            .map_err(|source| PdeError::LinearSolveFailed { source, inf_sup: None })?;
        let u_new = GridScalar { grid, data: x };
        let mut diff = u_new.clone();
        for (d, old) in diff.data.iter_mut().zip(&u.data) {
            *d -= *old;
        }
        // relaxed update
        for (uk, d) in u.data.iter_mut().zip(&diff.data) {
            *uk += relax * *d;
        }
        let inc_energy = weighted_energy(&diff, beta).sqrt();
        let u_energy = weighted_energy(&u, beta);
        let increment = relax * inc_energy / u_energy.sqrt().max(c(1e-30));
        diag.iterations = iter + 1;
        diag.increments.push(increment.f64());
        diag.residuals.push(res.f64());
        diag.relaxations.push(relax.f64());
        diag.energies.push(u_energy.f64());
        if u_energy > prev_energy * c(2.0) && iter > 0 {
            energy_doublings += 1;
            if energy_doublings >= 2 {
                return Err(PdeError::DivergingIteration);
            }
        } else {
            energy_doublings = 0;
        }
        prev_energy = u_energy;
        if increment < opts.tol || (rhs_norm == F::zero() && iter == 0) {
            return Ok(SolveState {
                energy_monitor: u_energy,
                u,
                converged: true,
                diagnostics: diag,
            });
        }
    }
    let increment = diag.increments.last().copied().unwrap_or(f64::NAN);
    Err(PdeError::NotConverged {
        iters: diag.iterations,
        increment,
        state: Box::new(diag),
    })
}

/// Domain for the direction problem.
#[derive(Debug, Clone)]
pub enum Domain<F> {
    /// Bounded annulus with a prescribed outer direction field.
    Annulus { r_outer: F, outer: DirectionField<F> },
    /// Exterior problem truncated at the given radius; the outer trace is
    /// taken from the leading multipole behaviour.
    Exterior { r_truncate: F },
}

/// End-to-end solve of the direction problem: boundary traces, harmonic
/// interpolation, zero-positions angle, nonlinear solve, reconstruction of
/// `p`, and field assembly.
pub fn solve_direction_problem<F: Real>(
    field: &DirectionField<F>,
    config: &ZeroConfig<F>,
    domain: &Domain<F>,
    params: &WeightParams<F>,
    grid: PolarGrid<F>,
    opts: &SolveOptions<F>,
) -> Result<ReconstructedSolution<F>, PdeError> {
    let rho = rotation_number(field)?;
    if rho != config.rho {
        return Err(PdeError::BadInput(format!(
            "direction field winds {rho}, zero configuration expects {}",
            config.rho
        )));
    }
    let trace = boundary_trace(field, config, TraceCircle::Inner)?;
    let (r_outer, outer_trace, outer_phis) = match domain {
        Domain::Annulus { r_outer, outer } => {
            let t = boundary_trace(outer, config, TraceCircle::Outer(*r_outer))?;
            (*r_outer, t, outer.phis.clone())
        }
        Domain::Exterior { r_truncate } => {
            // leading multipole direction at the truncation circle
            let n_lead = (config.rho_hat_effective() - 1).max(0) as usize;
            let m = field.phis.len() - 1;
            let outer_dir = DirectionField::from_cartesian_fn(m, |phi: F| {
                let (p, dp) = legendre_with_derivative(n_lead, phi.cos());
                let br = F::from_usize(n_lead + 1).unwrap() * p[n_lead];
                let bp = dp[n_lead] * phi.sin();
                (br * phi.cos() - bp * phi.sin(), br * phi.sin() + bp * phi.cos())
            })?;
            let t = boundary_trace(&outer_dir, config, TraceCircle::Outer(*r_truncate))?;
            (*r_truncate, t, outer_dir.phis)
        }
    };
    if (grid.r_max - r_outer).abs() > c::<F>(1e-12) * r_outer || grid.r_min != F::one() {
        return Err(PdeError::BadInput(format!(
            "grid [{}, {}] does not span the domain [1, {r_outer}]",
            grid.r_min, grid.r_max
        )));
    }
    let _ = outer_phis;
    let interp = harmonic_interpolant(
        &field.phis,
        &trace,
        OuterData::Samples(&outer_trace, r_outer),
    )?;

    solve_with_interpolant(field, config, &interp, params, grid, opts, &trace)
}

/// Shared tail of the pipeline once boundary data are interpolated.
fn solve_with_interpolant<F: Real>(
    field: &DirectionField<F>,
    config: &ZeroConfig<F>,
    interp: &HarmonicInterpolant<F>,
    params: &WeightParams<F>,
    grid: PolarGrid<F>,
    opts: &SolveOptions<F>,
    inner_trace: &[F],
) -> Result<ReconstructedSolution<F>, PdeError> {
    // Ω with the exact-branch Ψ, evaluated analytically at faces as well
    let omega = OmegaData::from_fn(grid, |r: F, phi: F| {
        let (zeta, rho_c) = (r * phi.cos(), r * phi.sin());
        let psi = zero_angle_exact(config, (zeta, rho_c)).unwrap_or(F::zero());
        psi - interp.eval(r, phi)
    });
    let state = solve_nonlinear(&omega, params, opts, None)?;

    // q = u + Φ
    let mut q = state.u.clone();
    for i in 0..grid.n_r {
        for j in 0..grid.n_phi {
            *q.at_mut(i, j) += interp.eval(grid.r(i), grid.phi(j));
        }
    }
    let psi = GridScalar::from_fn(grid, |r, phi| {
        zero_angle_exact(config, (r * phi.cos(), r * phi.sin())).unwrap_or(F::zero())
    });
    // the discrete curl of consistent gradient data converges at first
    // order once the branch-wrap bands are masked (prescribed zeroes limit
    // the interior regularity); anything well above that scale signals a q
    // that does not solve the equation
    let curl_tol = grid.h_r() + grid.h_phi();
    let p = reconstruct_p(&q, &psi, F::zero(), curl_tol)?;
    let solution = assemble_field(config, &p, &q, interp, inner_trace, field)?;
    // signed amplitude must stay positive on the inner circle
    for (k, &a) in solution.amplitude.iter().enumerate() {
        if !(a > F::zero()) {
            return Err(PdeError::PositivityViolated { phi: field.phis[k].f64() });
        }
    }
    Ok(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::norm2;
    use crate::Complex;
    use std::f64::consts::PI;




    #[test]
    fn coefficient_values_and_bounds() {
        let (az, ar) = coefficient_a(0.0_f64);
        assert_eq!((az, ar), (0.0, 1.0));
        let (az, ar) = coefficient_a(PI);
        assert!((az - 2.0 / PI).abs() < 1e-15);
        assert!(ar.abs() < 1e-15);
        // series window consistency (the direct form loses ~1e-12 absolute
        // to cancellation there; the series is the accurate one)
        let x = 9e-5_f64;
        let (az_s, ar_s) = coefficient_a(x);
        assert!((az_s - (1.0 - x.cos()) / x).abs() < 1e-11);
        assert!((ar_s - x.sin() / x).abs() < 1e-11);
        // sup of |a_zeta| lies in the documented bracket
        let sup = crate::minmax::a_zeta_norm::<f64>();
        assert!((0.72..0.73).contains(&sup), "{sup}");
        // Lipschitz-1 spot check
        let mut rng = crate::numeric::SplitMix64::new(3);
        for _ in 0..200 {
            let a = rng.range(-20.0, 20.0);
            let b = a + rng.range(-0.3, 0.3);
            let (az_a, ar_a) = coefficient_a(a);
            let (az_b, ar_b) = coefficient_a(b);
            assert!((az_a - az_b).abs() <= (a - b).abs() * 1.0001 + 1e-12);
            assert!((ar_a - ar_b).abs() <= (a - b).abs() * 1.0001 + 1e-12);
        }
    }

    fn zero_omega(grid: PolarGrid<f64>) -> OmegaData<f64> {
        OmegaData::from_fn(grid, |_, _| 0.0)
    }

    #[test]
    fn zero_data_gives_exact_zero_solution() {
        let grid = PolarGrid::annulus(3.0, 24, 32).unwrap();
        let omega = zero_omega(grid);
        let p = WeightParams::solvable_default();
        let state =
            solve_nonlinear(&omega, &p, &SolveOptions::default(), None).unwrap();
        assert!(state.converged);
        assert!(state.u.data.iter().all(|&v| v == 0.0));
        assert_eq!(state.diagnostics.iterations, 1);
    }

    #[test]
    fn linearized_solution_is_weighted_scaling_of_u() {
        let grid = PolarGrid::annulus(2.0, 16, 24).unwrap();
        let omega = OmegaData::from_fn(grid, |r: f64, phi: f64| {
            0.3 * (r - 1.0) * (2.0 - r) * phi.sin()
        });
        let frozen = GridScalar::zeros(grid);
        let params = WeightParams::solvable_default();
        let v = solve_linearized(&omega, &frozen, &params, 1e-11).unwrap();
        let u = linear_solve_u(&omega, &frozen, 1e-11).unwrap();
        for i in 0..grid.n_r {
            for j in 0..grid.n_phi {
                let want = u.at(i, j) * grid.rho(i, j).powf(params.alpha);
                assert!((v.at(i, j) - want).abs() < 1e-12, "{} vs {want}", v.at(i, j));
            }
        }
    }

    /// Operator round-trip: apply the assembled matrix to a manufactured
    /// discrete field, feed the product back as right-hand side, and recover
    /// the field to solver accuracy.
    #[test]
    fn linear_operator_round_trip() {
        let grid = PolarGrid::annulus(2.5, 32, 48).unwrap();
        let omega = OmegaData::from_fn(grid, |r: f64, phi: f64| {
            0.4 * (r - 1.0) * (2.5 - r) * phi.sin() * (2.0 * phi).cos()
        });
        let frozen =
            GridScalar::from_fn(grid, |r: f64, phi: f64| 0.3 * (r * phi).sin() * phi.sin());
        let system = assemble_linearized(&omega, &frozen);
        let target = GridScalar::from_fn(grid, |r, phi| {
            (PI * (r - 1.0) / 1.5).sin() * phi.sin()
        });
        let rhs = system.matrix.matvec_alloc(&target.data);
        let x = bicgstab(&system.matrix, &rhs, None, 1e-12, 20_000).unwrap();
        let err: f64 = x
            .iter()
            .zip(&target.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
            / norm2(&target.data);
        assert!(err < 1e-9, "round-trip error {err}");
    }

    /// Grid refinement: error against a fine-grid reference drops at second
    /// order for the linearized solve.
    #[test]
    fn linear_solve_second_order_convergence() {
        let omega_fn =
            |r: f64, phi: f64| 0.5 * (r - 1.0) * (2.0 - r) * phi.sin() * (1.0 + 0.3 * (2.0 * phi).cos());
        let solve_at = |n: usize| {
            let grid = PolarGrid::annulus(2.0, n, 2 * n).unwrap();
            let omega = OmegaData::from_fn(grid, omega_fn);
            let frozen = GridScalar::zeros(grid);
            linear_solve_u(&omega, &frozen, 1e-12).unwrap()
        };
        let fine = solve_at(128);
        let err = |coarse: &GridScalar<f64>| {
            let g = coarse.grid;
            let mut acc = 0.0;
            let mut norm = 0.0;
            for i in 0..g.n_r {
                for j in 0..g.n_phi {
                    let v = fine.interp(g.r(i), g.phi(j));
                    acc += (coarse.at(i, j) - v).powi(2);
                    norm += v * v;
                }
            }
            (acc / norm).sqrt()
        };
        let e1 = err(&solve_at(16));
        let e2 = err(&solve_at(32));
        let rate = e1 / e2;
        assert!(rate > 2.8 && rate < 6.0, "rate {rate} ({e1} vs {e2})");
    }

    /// The exact dipole: its correction angle `q` is r-independent, so with
    /// matching boundary data the solver must return `u = q - Φ`.
    #[test]
    fn picard_recovers_dipole_correction() {
        let grid = PolarGrid::annulus(4.0, 48, 96).unwrap();
        let cfg = ZeroConfig::<f64>::exterior_no_zeroes(2);
        let q_exact =
            |phi: f64| 2.0 * Complex::new(3.0 + (2.0 * phi).cos(), (2.0 * phi).sin()).arg();
        // boundary data: the same trace on both circles
        let phis = crate::numeric::linspace(-PI, PI, 513);
        let data: Vec<f64> = phis.iter().map(|&p| q_exact(p)).collect();
        let interp = crate::boundary::harmonic_interpolant(
            &phis,
            &data,
            crate::boundary::OuterData::Samples(&data, 4.0),
        )
        .unwrap();
        let omega = OmegaData::from_fn(grid, |r: f64, phi: f64| {
            let psi = zero_angle_exact(&cfg, (r * phi.cos(), r * phi.sin())).unwrap();
            psi - interp.eval(r, phi)
        });
        let p = WeightParams::solvable_default();
        let state =
            solve_nonlinear(&omega, &p, &SolveOptions::default(), None).unwrap();
        assert!(state.converged, "{:?}", state.diagnostics);
        // compare u against q_exact - Φ
        let mut worst = 0.0_f64;
        for i in 0..grid.n_r {
            for j in 0..grid.n_phi {
                let (r, phi) = (grid.r(i), grid.phi(j));
                let want = q_exact(phi) - interp.eval(r, phi);
                worst = worst.max((state.u.at(i, j) - want).abs());
            }
        }
        assert!(worst < 5e-3, "max deviation {worst}");
    }

    /// Distinct initial guesses converge to the same solution (empirical
    /// uniqueness).
    #[test]
    fn picard_unique_from_different_starts() {
        let grid = PolarGrid::annulus(2.0, 24, 48).unwrap();
        let cfg = ZeroConfig::<f64>::exterior_no_zeroes(2);
        let omega = OmegaData::from_fn(grid, |r: f64, phi: f64| {
            zero_angle_exact(&cfg, (r * phi.cos(), r * phi.sin())).unwrap() * 0.8
                * (2.0 - r)
                * (r - 1.0)
        });
        let p = WeightParams::solvable_default();
        let opts = SolveOptions { tol: 1e-10, ..Default::default() };
        let a = solve_nonlinear(&omega, &p, &opts, None).unwrap();
        let mut rng = crate::numeric::SplitMix64::new(11);
        let noisy = GridScalar {
            grid,
            data: (0..grid.len()).map(|_| rng.range(-0.5, 0.5)).collect(),
        };
        let b = solve_nonlinear(&omega, &p, &opts, Some(noisy)).unwrap();
        let diff: f64 = a
            .u
            .data
            .iter()
            .zip(&b.u.data)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt();
        let scale = norm2(&a.u.data).max(1e-30);
        assert!(diff / scale < 1e-9 * 10.0, "relative gap {}", diff / scale);
    }

    /// Picard residuals contract after the opening iterations.
    #[test]
    fn picard_residuals_contract() {
        let grid = PolarGrid::annulus(3.0, 32, 64).unwrap();
        let cfg = ZeroConfig::<f64>::exterior_no_zeroes(2);
        let omega = OmegaData::from_fn(grid, |r: f64, phi: f64| {
            zero_angle_exact(&cfg, (r * phi.cos(), r * phi.sin())).unwrap()
        });
        let p = WeightParams::solvable_default();
        let state =
            solve_nonlinear(&omega, &p, &SolveOptions::default(), None).unwrap();
        let inc = &state.diagnostics.increments;
        for k in 3..inc.len() {
            assert!(
                inc[k] < 0.9 * inc[k - 1] + 1e-12,
                "increments not contracting: {inc:?}"
            );
        }
    }

    /// Fixed, radially localized Ω data: the weighted energy of the
    /// solutions saturates, so the `A_R` family shares a common bound.
    #[test]
    fn energy_monitor_bounded_across_outer_radius() {
        let p = WeightParams::solvable_default();
        let omega_fn = |r: f64, phi: f64| {
            let bump = ((r - 1.0) * (1.4 - r)).max(0.0);
            12.0 * bump * phi.sin() * (1.0 + 0.5 * (2.0 * phi).cos())
        };
        let mut energies = vec![];
        for (r_max, n_r) in [(2.0, 24), (4.0, 72), (8.0, 168)] {
            let grid = PolarGrid::annulus(r_max, n_r, 64).unwrap();
            let omega = OmegaData::from_fn(grid, omega_fn);
            let state =
                solve_nonlinear(&omega, &p, &SolveOptions::default(), None).unwrap();
            energies.push(state.energy_monitor);
        }
        let max = energies.iter().cloned().fold(f64::MIN, f64::max);
        let min = energies.iter().cloned().fold(f64::MAX, f64::min);
        assert!(max / min < 1.2, "energies {energies:?}");
    }

    /// For data whose structure persists to infinity (the pure-pole angle,
    /// r-independent), the energy still saturates, but slowly: the
    /// per-doubling increments must decrease.
    #[test]
    fn energy_monitor_increments_decrease_for_persistent_data() {
        let p = WeightParams::solvable_default();
        let cfg = ZeroConfig::<f64>::exterior_no_zeroes(2);
        let mut energies = vec![];
        for (r_max, n_r) in [(4.0, 72), (8.0, 168), (16.0, 360)] {
            let grid = PolarGrid::annulus(r_max, n_r, 48).unwrap();
            let omega = OmegaData::from_fn(grid, |r: f64, phi: f64| {
                zero_angle_exact(&cfg, (r * phi.cos(), r * phi.sin())).unwrap()
            });
            let state =
                solve_nonlinear(&omega, &p, &SolveOptions::default(), None).unwrap();
            energies.push(state.energy_monitor);
        }
        let inc1 = energies[1] - energies[0];
        let inc2 = energies[2] - energies[1];
        assert!(inc2 < inc1, "increments not decreasing: {energies:?}");
    }
}
