//! Domains, grids, direction fields, rotation numbers, zero counting, and
//! exterior multipole fields on the meridional half-plane.
//!
//! Coordinates: `zeta = r cos(phi)`, `rho = r sin(phi)`; the symmetry axis is
//! `rho = 0`. All fields here are symmetric: `B_zeta` even and `B_rho` odd
//! under `phi -> -phi`.

use crate::scalar::{c, Real};
use crate::Complex;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("field angle increment {got} >= pi/2 between consecutive samples (undersampled)")]
    UndersampledField { got: f64 },
    #[error("direction field sample {index} vanishes")]
    ZeroVector { index: usize },
    #[error("winding sum {sum} is not close to an integer (residual {residual})")]
    NonIntegerWinding { sum: f64, residual: f64 },
    #[error("zero count rho - rho_hat (or rho - delta + 1) is negative: {count}")]
    NegativeCount { count: i64 },
    #[error("multipole spec has no coefficients")]
    EmptySpec,
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error("invalid direction field: {0}")]
    BadField(String),
    #[error("invalid zero configuration: {0}")]
    BadZeroConfig(String),
}

/// Cell-centered grid on the half-annulus `1 <= r_min < r < r_max`,
/// `0 < phi < pi`.
///
/// Nodes sit at cell centers, half a cell away from the symmetry axis, so
/// `1/rho` is finite at every node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarGrid<F> {
    pub r_min: F,
    pub r_max: F,
    pub n_r: usize,
    pub n_phi: usize,
}

impl<F: Real> PolarGrid<F> {
    pub fn new(r_min: F, r_max: F, n_r: usize, n_phi: usize) -> Result<Self, GeometryError> {
        if !(r_min < r_max) || r_min <= F::zero() {
            return Err(GeometryError::BadGrid(format!(
                "need 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if n_r < 2 || n_phi < 2 {
            return Err(GeometryError::BadGrid(format!(
                "need at least 2 cells per direction, got {n_r} x {n_phi}"
            )));
        }
        Ok(Self { r_min, r_max, n_r, n_phi })
    }

    /// Unit annulus `1 < r < r_max`.
    pub fn annulus(r_max: F, n_r: usize, n_phi: usize) -> Result<Self, GeometryError> {
        Self::new(F::one(), r_max, n_r, n_phi)
    }

    #[inline]
    pub fn h_r(&self) -> F {
        (self.r_max - self.r_min) / F::from_usize(self.n_r).unwrap()
    }

    #[inline]
    pub fn h_phi(&self) -> F {
        F::PI() / F::from_usize(self.n_phi).unwrap()
    }

    /// Cell-center radius of radial index `i`.
    #[inline]
    pub fn r(&self, i: usize) -> F {
        self.r_min + self.h_r() * (F::from_usize(i).unwrap() + c(0.5))
    }

    /// Cell-center angle of angular index `j`, strictly inside `(0, pi)`.
    #[inline]
    pub fn phi(&self, j: usize) -> F {
        self.h_phi() * (F::from_usize(j).unwrap() + c(0.5))
    }

    /// Radial face position between cells `i-1` and `i` (`i = 0..=n_r`).
    #[inline]
    pub fn r_face(&self, i: usize) -> F {
        self.r_min + self.h_r() * F::from_usize(i).unwrap()
    }

    /// Angular face position between cells `j-1` and `j` (`j = 0..=n_phi`).
    #[inline]
    pub fn phi_face(&self, j: usize) -> F {
        self.h_phi() * F::from_usize(j).unwrap()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n_r * self.n_phi
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.n_r && j < self.n_phi);
        i * self.n_phi + j
    }

    /// `(zeta, rho)` of node `(i, j)`.
    #[inline]
    pub fn node(&self, i: usize, j: usize) -> (F, F) {
        let (r, phi) = (self.r(i), self.phi(j));
        (r * phi.cos(), r * phi.sin())
    }

    /// `rho` of node `(i, j)`; strictly positive.
    #[inline]
    pub fn rho(&self, i: usize, j: usize) -> F {
        self.r(i) * self.phi(j).sin()
    }
}

/// Scalar samples on a [`PolarGrid`], row-major `[i * n_phi + j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridScalar<F> {
    pub grid: PolarGrid<F>,
    pub data: Vec<F>,
}

impl<F: Real> GridScalar<F> {
    pub fn zeros(grid: PolarGrid<F>) -> Self {
        Self { grid, data: vec![F::zero(); grid.len()] }
    }

    pub fn from_fn(grid: PolarGrid<F>, mut f: impl FnMut(F, F) -> F) -> Self {
        let mut data = Vec::with_capacity(grid.len());
        for i in 0..grid.n_r {
            for j in 0..grid.n_phi {
                data.push(f(grid.r(i), grid.phi(j)));
            }
        }
        Self { grid, data }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> F {
        self.data[self.grid.idx(i, j)]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut F {
        let k = self.grid.idx(i, j);
        &mut self.data[k]
    }

    /// Bilinear interpolation in `(r, phi)`, clamped to the cell-center hull.
    pub fn interp(&self, r: F, phi: F) -> F {
        let g = self.grid;
        let half = c::<F>(0.5);
        let fr = ((r - g.r_min) / g.h_r() - half)
            .max(F::zero())
            .min(F::from_usize(g.n_r - 1).unwrap());
        let fp = ((phi / g.h_phi()) - half)
            .max(F::zero())
            .min(F::from_usize(g.n_phi - 1).unwrap());
        let i0 = fr.floor().f64() as usize;
        let j0 = fp.floor().f64() as usize;
        let i1 = (i0 + 1).min(g.n_r - 1);
        let j1 = (j0 + 1).min(g.n_phi - 1);
        let tr = fr - F::from_usize(i0).unwrap();
        let tp = fp - F::from_usize(j0).unwrap();
        let a = self.at(i0, j0) * (F::one() - tp) + self.at(i0, j1) * tp;
        let b = self.at(i1, j0) * (F::one() - tp) + self.at(i1, j1) * tp;
        a * (F::one() - tr) + b * tr
    }
}

/// A symmetric direction field sampled uniformly on `[-pi, pi]`.
///
/// Samples are the Cartesian meridional components `(D_zeta, D_rho)` at
/// `phi_k = -pi + 2 pi k / m`, `k = 0..=m`, `m` even.
#[derive(Debug, Clone)]
pub struct DirectionField<F> {
    pub phis: Vec<F>,
    pub d_zeta: Vec<F>,
    pub d_rho: Vec<F>,
    /// Closed-form builtin this field was sampled from, if any.
    pub builtin: Option<Builtin>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Builtin {
    /// Direction of the exterior axisymmetric dipole.
    Dipole,
    /// Direction of the dipole + 2^3-pole mixture with zero pair at ±1.5i.
    DipoleOctupole,
}

impl<F: Real> DirectionField<F> {
    /// Sample a field given in Cartesian components; validates symmetry.
    pub fn from_cartesian_fn(
        m: usize,
        mut f: impl FnMut(F) -> (F, F),
    ) -> Result<Self, GeometryError> {
        if m < 8 || m % 2 != 0 {
            return Err(GeometryError::BadField(format!(
                "sample count m = {m} must be even and >= 8"
            )));
        }
        let mut phis = Vec::with_capacity(m + 1);
        let mut d_zeta = Vec::with_capacity(m + 1);
        let mut d_rho = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let phi =
                -F::PI() + F::PI() * c::<F>(2.0) * F::from_usize(k).unwrap() / F::from_usize(m).unwrap();
            let (dz, dr) = f(phi);
            phis.push(phi);
            d_zeta.push(dz);
            d_rho.push(dr);
        }
        let fld = Self { phis, d_zeta, d_rho, builtin: None };
        fld.validate()?;
        Ok(fld)
    }

    pub fn from_samples(
        phis: Vec<F>,
        d_zeta: Vec<F>,
        d_rho: Vec<F>,
    ) -> Result<Self, GeometryError> {
        if phis.len() != d_zeta.len() || phis.len() != d_rho.len() || phis.len() < 9 {
            return Err(GeometryError::BadField("ragged or too-short sample arrays".into()));
        }
        let fld = Self { phis, d_zeta, d_rho, builtin: None };
        fld.validate()?;
        Ok(fld)
    }

    fn validate(&self) -> Result<(), GeometryError> {
        let m = self.phis.len() - 1;
        let tol = c::<F>(1e-6);
        for k in 0..=m {
            let norm = self.d_zeta[k].hypot(self.d_rho[k]);
            if norm == F::zero() {
                return Err(GeometryError::ZeroVector { index: k });
            }
            // symmetry: D_zeta even, D_rho odd
            let km = m - k;
            let scale = norm.max(self.d_zeta[km].hypot(self.d_rho[km]));
            if (self.d_zeta[k] - self.d_zeta[km]).abs() > tol * scale
                || (self.d_rho[k] + self.d_rho[km]).abs() > tol * scale
            {
                return Err(GeometryError::BadField(format!(
                    "samples not symmetric at k = {k}"
                )));
            }
        }
        let mid = m / 2; // phi = 0
        if !(self.d_zeta[mid] > F::zero()) {
            return Err(GeometryError::BadField("D_zeta(0) must be positive".into()));
        }
        let axis_tol = c::<F>(1e-6);
        if self.d_rho[mid].abs() > axis_tol * self.d_zeta[mid].abs()
            || self.d_rho[0].abs() > axis_tol * self.d_zeta[0].abs()
        {
            return Err(GeometryError::BadField("D_rho must vanish on the axis".into()));
        }
        Ok(())
    }

    /// Exterior dipole direction on the unit circle, `m + 1` samples.
    pub fn dipole(m: usize) -> Self {
        let mut fld = Self::from_cartesian_fn(m, |phi| dipole_cartesian(F::one(), phi)).unwrap();
        fld.builtin = Some(Builtin::Dipole);
        fld
    }

    /// Direction of the dipole + 2^3-pole mixture `D^1/r^3 + 1.5 D^3/r^5`
    /// (zero pair at ±1.5i), sampled on the unit circle.
    pub fn dipole_octupole(m: usize) -> Self {
        let spec = MultipoleSpec::dipole_octupole();
        let mut fld = Self::from_cartesian_fn(m, |phi| {
            let (bz, br) = spec.field_cartesian(F::one(), phi).unwrap();
            (bz, br)
        })
        .unwrap();
        fld.builtin = Some(Builtin::DipoleOctupole);
        fld
    }

    /// Complex boundary values `D_c = D_zeta - i D_rho` per sample.
    pub fn d_c(&self) -> Vec<Complex<F>> {
        self.d_zeta
            .iter()
            .zip(&self.d_rho)
            .map(|(&z, &r)| Complex::new(z, -r))
            .collect()
    }
}

fn dipole_cartesian<F: Real>(r: F, phi: F) -> (F, F) {
    // B = (2 cos phi e_r + sin phi e_phi) / r^3, positive amplitude on axis
    let (s, x) = (phi.sin(), phi.cos());
    let r3 = r * r * r;
    let br = c::<F>(2.0) * x / r3;
    let bp = s / r3;
    (br * x - bp * s, br * s + bp * x)
}

/// Winding number of the Cartesian field vector over one traversal of the
/// circle.
pub fn rotation_number<F: Real>(field: &DirectionField<F>) -> Result<i32, GeometryError> {
    winding_of_samples(&field.d_zeta, &field.d_rho)
}

/// Winding number of an arbitrary closed sample loop `(v_x[k], v_y[k])`.
///
/// The loop is traversed in sample order; the last sample must repeat the
/// first (same point on the circle).
pub fn winding_of_samples<F: Real>(vx: &[F], vy: &[F]) -> Result<i32, GeometryError> {
    assert_eq!(vx.len(), vy.len());
    let mut sum = F::zero();
    let half_pi = F::FRAC_PI_2();
    for k in 0..vx.len() - 1 {
        let a = Complex::new(vx[k], vy[k]);
        let b = Complex::new(vx[k + 1], vy[k + 1]);
        if a.norm() == F::zero() {
            return Err(GeometryError::ZeroVector { index: k });
        }
        if b.norm() == F::zero() {
            return Err(GeometryError::ZeroVector { index: k + 1 });
        }
        // wrapped angle increment via the quotient, numerically robust
        let inc = (b / a).arg();
        if inc.abs() >= half_pi {
            return Err(GeometryError::UndersampledField { got: inc.abs().f64() });
        }
        sum += inc;
    }
    let turns = sum / (c::<F>(2.0) * F::PI());
    let rounded = turns.round();
    let residual = (turns - rounded).abs();
    if residual > c(0.01) {
        return Err(GeometryError::NonIntegerWinding {
            sum: turns.f64(),
            residual: residual.f64(),
        });
    }
    Ok(rounded.f64() as i32)
}

/// Zero-counting mode: bounded annulus (two rotation numbers) or exterior
/// plane (rotation number and exact decay order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountMode {
    Bounded,
    Exterior,
}

/// Number of zeroes fixed by the boundary data: `rho - rho_hat` in an
/// annulus, `rho - delta + 1` in the exterior plane.
pub fn zero_count(rho: i32, other: i32, mode: CountMode) -> Result<i32, GeometryError> {
    if mode == CountMode::Exterior && other < 3 {
        return Err(GeometryError::BadZeroConfig(format!(
            "exterior decay order must be >= 3, got {other}"
        )));
    }
    let count = match mode {
        CountMode::Bounded => rho as i64 - other as i64,
        CountMode::Exterior => rho as i64 - other as i64 + 1,
    };
    if count < 0 {
        return Err(GeometryError::NegativeCount { count });
    }
    Ok(count as i32)
}

/// Dimension of the solution space of the unsigned problem:
/// `rho - delta + 2` for `delta <= rho + 1`, else 0.
pub fn unsigned_space_dim(rho: i32, delta: i32) -> i32 {
    assert!(delta >= 3, "decay order must be >= 3");
    if delta <= rho + 1 {
        rho - delta + 2
    } else {
        0
    }
}

/// Symmetric set of prescribed zeroes plus the two boundary indices.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroConfig<F> {
    /// Prescribed zeroes, closed under conjugation, all with `|z| > 1`.
    pub zeroes: Vec<Complex<F>>,
    /// Rotation number along the unit circle.
    pub rho: i32,
    pub mode: ZeroConfigMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroConfigMode {
    /// Bounded annulus with rotation number `rho_hat` at the outer circle.
    Bounded { rho_hat: i32 },
    /// Exterior plane with exact decay order `delta`.
    Exterior { delta: i32 },
}

impl<F: Real> ZeroConfig<F> {
    pub fn new(
        zeroes: Vec<Complex<F>>,
        rho: i32,
        mode: ZeroConfigMode,
    ) -> Result<Self, GeometryError> {
        let cfg = Self { zeroes, rho, mode };
        cfg.validate(false)?;
        Ok(cfg)
    }

    /// Exterior configuration without zeroes (forces `delta = rho + 1`).
    pub fn exterior_no_zeroes(rho: i32) -> Self {
        Self { zeroes: vec![], rho, mode: ZeroConfigMode::Exterior { delta: rho + 1 } }
    }

    fn validate(&self, allow_axis: bool) -> Result<(), GeometryError> {
        let expected = match self.mode {
            ZeroConfigMode::Bounded { rho_hat } => {
                zero_count(self.rho, rho_hat, CountMode::Bounded)?
            }
            ZeroConfigMode::Exterior { delta } => {
                zero_count(self.rho, delta, CountMode::Exterior)?
            }
        };
        if self.zeroes.len() != expected as usize {
            return Err(GeometryError::BadZeroConfig(format!(
                "expected {expected} zeroes, got {}",
                self.zeroes.len()
            )));
        }
        let tol = c::<F>(1e-12);
        for z in &self.zeroes {
            if z.norm() <= F::one() {
                return Err(GeometryError::BadZeroConfig(format!(
                    "zero {z} not outside the unit circle"
                )));
            }
            if !allow_axis && z.im.abs() < tol {
                return Err(GeometryError::BadZeroConfig(format!("zero {z} lies on the axis")));
            }
        }
        // closed under conjugation: every upper zero has a matching lower one
        let mut lower: Vec<Complex<F>> =
            self.zeroes.iter().copied().filter(|z| z.im < F::zero()).collect();
        for z in self.zeroes.iter().filter(|z| z.im > F::zero()) {
            let conj = z.conj();
            let pos = lower
                .iter()
                .position(|w| (w - conj).norm() <= c::<F>(1e-9) * z.norm());
            match pos {
                Some(p) => {
                    lower.swap_remove(p);
                }
                None => {
                    return Err(GeometryError::BadZeroConfig(format!(
                        "zero {z} has no conjugate partner"
                    )))
                }
            }
        }
        if !lower.is_empty() {
            return Err(GeometryError::BadZeroConfig(
                "unmatched lower-half zeroes".into(),
            ));
        }
        Ok(())
    }

    /// Upper-half-plane representatives of the conjugate pairs.
    pub fn upper_pairs(&self) -> Vec<Complex<F>> {
        self.zeroes.iter().copied().filter(|z| z.im > F::zero()).collect()
    }

    /// Rotation number at the outer boundary: `rho_hat`, or `delta - 1` in
    /// the exterior case.
    pub fn rho_hat_effective(&self) -> i32 {
        match self.mode {
            ZeroConfigMode::Bounded { rho_hat } => rho_hat,
            ZeroConfigMode::Exterior { delta } => delta - 1,
        }
    }

    /// The analytic factor `h(z) = prod (z - z_n) z^{-rho}`.
    pub fn h(&self, z: Complex<F>) -> Complex<F> {
        let mut prod = Complex::new(F::one(), F::zero());
        for &zn in &self.zeroes {
            prod = prod * (z - zn);
        }
        prod * pow_int_inv(z, self.rho)
    }

    /// `conj(h)/h` as a unit-modulus complex number, evaluated through the
    /// conjugate-pair products so the result is exactly reciprocal under
    /// conjugation of `z`.
    pub fn hbar_over_h(&self, z: Complex<F>) -> Complex<F> {
        // (z̄/z)^{-rho} = e^{2 i rho phi}
        let phi = z.arg();
        let two = c::<F>(2.0);
        let rho_f = F::from_i32(self.rho).unwrap();
        let mut out = Complex::from_polar(F::one(), two * rho_f * phi);
        for zn in self.upper_pairs() {
            // real-coefficient quadratic (z - z_n)(z - conj z_n)
            let p = pair_quadratic(z, zn);
            // conj(p)/p, unit modulus
            out = out * p.conj() / p;
        }
        // axis zeroes (allowed only via the section-10 machinery) contribute
        // real linear factors
        for &zn in &self.zeroes {
            if zn.im == F::zero() {
                let p = z - zn;
                out = out * p.conj() / p;
            }
        }
        out
    }
}

#[inline]
fn pair_quadratic<F: Real>(z: Complex<F>, zn: Complex<F>) -> Complex<F> {
    // (z - zn)(z - conj zn) = z^2 - 2 Re(zn) z + |zn|^2
    let two_re = c::<F>(2.0) * zn.re;
    z * z - z * two_re + Complex::new(zn.norm_sqr(), F::zero())
}

#[inline]
fn pow_int_inv<F: Real>(z: Complex<F>, n: i32) -> Complex<F> {
    // z^{-n} for integer n via repeated multiplication (exact winding)
    let mut out = Complex::new(F::one(), F::zero());
    let zi = Complex::new(F::one(), F::zero()) / z;
    let (base, k) = if n >= 0 { (zi, n) } else { (z, -n) };
    for _ in 0..k {
        out = out * base;
    }
    out
}

/// Exterior axisymmetric multipole family `B = -sum c_n r^{-(n+2)} D^n(phi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultipoleSpec<F> {
    /// Exact decay order `delta >= 3`; the leading coefficient is `c_{delta-2}`.
    pub delta: i32,
    /// Coefficients `c_n` for `n = delta-2 ..`.
    pub coeffs: Vec<F>,
}

impl<F: Real> MultipoleSpec<F> {
    pub fn new(delta: i32, coeffs: Vec<F>) -> Result<Self, GeometryError> {
        if coeffs.is_empty() {
            return Err(GeometryError::EmptySpec);
        }
        if delta < 3 {
            return Err(GeometryError::BadZeroConfig(format!(
                "decay order must be >= 3, got {delta}"
            )));
        }
        if coeffs[0] == F::zero() {
            return Err(GeometryError::BadZeroConfig(
                "leading multipole coefficient must not vanish".into(),
            ));
        }
        Ok(Self { delta, coeffs })
    }

    /// Pure dipole with positive amplitude on the positive axis (`c_1 = -1`).
    pub fn unit_dipole() -> Self {
        Self { delta: 3, coeffs: vec![-F::one()] }
    }

    /// Dipole + 2^3-pole mixture `D^1/r^3 + 1.5 D^3/r^5`; its only zeroes are
    /// the conjugate pair ±1.5i.
    pub fn dipole_octupole() -> Self {
        Self { delta: 3, coeffs: vec![-F::one(), F::zero(), c(-1.5)] }
    }

    /// Field value in polar components `(B_r, B_phi)` at `(r, phi)`, `r > 1`.
    pub fn field(&self, r: F, phi: F) -> Result<(F, F), GeometryError> {
        if self.coeffs.is_empty() {
            return Err(GeometryError::EmptySpec);
        }
        let n_max = self.delta as usize - 2 + self.coeffs.len() - 1;
        let x = phi.cos();
        let (p, dp) = legendre_with_derivative(n_max, x);
        let s = phi.sin();
        let mut br = F::zero();
        let mut bp = F::zero();
        let mut r_pow = r.powi(-(self.delta as i32 + 0)); // r^{-(n+2)} at n = delta-2
        for (k, &cn) in self.coeffs.iter().enumerate() {
            let n = self.delta as usize - 2 + k;
            br -= cn * r_pow * F::from_usize(n + 1).unwrap() * p[n];
            bp -= cn * r_pow * dp[n] * s;
            r_pow /= r;
        }
        Ok((br, bp))
    }

    /// Field value in Cartesian meridional components `(B_zeta, B_rho)`.
    pub fn field_cartesian(&self, r: F, phi: F) -> Result<(F, F), GeometryError> {
        let (br, bp) = self.field(r, phi)?;
        let (s, x) = (phi.sin(), phi.cos());
        Ok((br * x - bp * s, br * s + bp * x))
    }

    /// Scalar potential `Upsilon = sum c_n r^{-(n+1)} P_n(cos phi)` with
    /// `B = grad Upsilon`.
    pub fn potential(&self, r: F, phi: F) -> F {
        let n_max = self.delta as usize - 2 + self.coeffs.len() - 1;
        let (p, _) = legendre_with_derivative(n_max, phi.cos());
        let mut acc = F::zero();
        let mut r_pow = r.powi(-(self.delta as i32 - 1)); // r^{-(n+1)} at n = delta-2
        for (k, &cn) in self.coeffs.iter().enumerate() {
            let n = self.delta as usize - 2 + k;
            acc += cn * r_pow * p[n];
            r_pow /= r;
        }
        acc
    }
}

/// Legendre polynomials `P_0..=P_n` and derivatives at `x`, by the three-term
/// recurrence and `P'_{n+1} = P'_{n-1} + (2n+1) P_n`.
pub fn legendre_with_derivative<F: Real>(n: usize, x: F) -> (Vec<F>, Vec<F>) {
    let mut p = vec![F::zero(); n + 1];
    let mut dp = vec![F::zero(); n + 1];
    p[0] = F::one();
    if n >= 1 {
        p[1] = x;
        dp[1] = F::one();
    }
    for k in 1..n {
        let kf = F::from_usize(k).unwrap();
        let two_k1 = c::<F>(2.0) * kf + F::one();
        p[k + 1] = (two_k1 * x * p[k] - kf * p[k - 1]) / (kf + F::one());
        dp[k + 1] = dp[k - 1] + two_k1 * p[k];
    }
    (p, dp)
}
