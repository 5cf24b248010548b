//! Axisymmetric harmonic fields from boundary direction data.
//!
//! A harmonic vector field outside the unit sphere, symmetric about an axis,
//! reduces on a meridional half-plane to two components `(B_zeta, B_rho)`.
//! Prescribing only the *direction* of the field on the unit circle (plus a
//! decay order at infinity and the positions of its interior zeroes) is a
//! nonlinear boundary value problem. This crate implements the computable
//! objects of its solution theory:
//!
//! * [`geometry`] — polar grids, direction fields, winding numbers, zero
//!   counting and exterior multipole fields;
//! * [`hardy`] — weighted Hardy-type constants and numerical verifiers for
//!   the underlying inequalities;
//! * [`boundary`] — the zero-positions angle Ψ, boundary traces, and the
//!   harmonic interpolant Φ of the boundary data;
//! * [`minmax`] — inf-sup (min-max) constants: the analytic eigenvalue, a
//!   rigorous lower bound, the comparison function, and a discrete oracle;
//! * [`shooting`] — eigenvalues of the associated Euler–Lagrange ODE system
//!   by adaptive Runge–Kutta–Fehlberg shooting;
//! * [`pde`] — a Picard/finite-volume solver for the singular semilinear
//!   problem, reconstruction of the full field, and zero manipulation on the
//!   symmetry axis;
//! * [`example2d`] — a fully analytic two-dimensional solution family with a
//!   migrating zero.
//!
//! All numerics are generic over the scalar type via [`scalar::Real`]
//! (`f32` or `f64`); the aliases at the crate root fix `f64`, which every
//! documented tolerance refers to.

pub mod scalar;

pub mod numeric;

pub mod sparse;

pub mod geometry;

pub mod hardy;

pub mod boundary;

pub mod minmax;

pub mod shooting;

pub mod pde;

pub mod example2d;

pub mod io;

pub mod acceptance;

/// Complex scalar used throughout (points in the meridional plane, zeroes).
pub type Complex<F> = num_complex::Complex<F>;

// Concrete f64 aliases for the main public types.
pub type Complex64 = num_complex::Complex<f64>;
pub type PolarGrid64 = geometry::PolarGrid<f64>;
pub type DirectionField64 = geometry::DirectionField<f64>;
pub type ZeroConfig64 = geometry::ZeroConfig<f64>;
pub type MultipoleSpec64 = geometry::MultipoleSpec<f64>;
pub type WeightParams64 = hardy::WeightParams<f64>;
pub type AngleField64 = boundary::AngleField<f64>;
pub type MinMaxReport64 = minmax::MinMaxReport<f64>;
pub type ShootingProblem64 = shooting::ShootingProblem<f64>;
pub type EigenResult64 = shooting::EigenResult<f64>;
pub type SolveState64 = pde::SolveState<f64>;
pub type ReconstructedSolution64 = pde::ReconstructedSolution<f64>;
