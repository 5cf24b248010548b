//! File formats: direction-field and grid-field CSV, configuration JSON,
//! and the compact little-endian binary grid dump.
//!
//! CSV conventions: '.' decimal separator, 17 significant digits, LF line
//! endings, header row; identical inputs produce bit-identical files.

use crate::geometry::{
    DirectionField, GridScalar, MultipoleSpec, PolarGrid, ZeroConfig, ZeroConfigMode,
};
use crate::hardy::WeightParams;
use crate::pde::SolveOptions;
use crate::scalar::{c, Real};
use crate::Complex;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("invalid data: {0}")]
    Invalid(String),
}

/// One value, 17 significant digits, bit-stable.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Write a direction field as `phi,d_zeta,d_rho` rows.
pub fn write_direction_csv<F: Real>(
    field: &DirectionField<F>,
    out: &mut impl Write,
) -> Result<(), IoError> {
    out.write_all(b"phi,d_zeta,d_rho\n")?;
    for k in 0..field.phis.len() {
        writeln!(
            out,
            "{},{},{}",
            fmt_f64(field.phis[k].f64()),
            fmt_f64(field.d_zeta[k].f64()),
            fmt_f64(field.d_rho[k].f64())
        )?;
    }
    Ok(())
}

/// Read a direction field from `phi,d_zeta,d_rho` rows (increasing φ).
pub fn read_direction_csv<F: Real>(input: &mut impl Read) -> Result<DirectionField<F>, IoError> {
    let reader = BufReader::new(input);
    let mut phis = vec![];
    let mut d_zeta = vec![];
    let mut d_rho = vec![];
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if lineno == 0 {
            if line != "phi,d_zeta,d_rho" {
                return Err(IoError::Parse(format!("unexpected header: {line}")));
            }
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            return Err(IoError::Parse(format!("line {}: need 3 columns", lineno + 1)));
        }
        let parse = |s: &str| -> Result<F, IoError> {
            s.parse::<f64>()
                .map(|v| c(v))
                .map_err(|e| IoError::Parse(format!("line {}: {e}", lineno + 1)))
        };
        phis.push(parse(cols[0])?);
        d_zeta.push(parse(cols[1])?);
        d_rho.push(parse(cols[2])?);
    }
    if phis.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(IoError::Invalid("phi column must increase".into()));
    }
    DirectionField::from_samples(phis, d_zeta, d_rho)
        .map_err(|e| IoError::Invalid(e.to_string()))
}

/// Write grid samples as `r,phi,value` rows.
pub fn write_field_csv<F: Real>(
    field: &GridScalar<F>,
    out: &mut impl Write,
) -> Result<(), IoError> {
    out.write_all(b"r,phi,value\n")?;
    let grid = field.grid;
    for i in 0..grid.n_r {
        for j in 0..grid.n_phi {
            writeln!(
                out,
                "{},{},{}",
                fmt_f64(grid.r(i).f64()),
                fmt_f64(grid.phi(j).f64()),
                fmt_f64(field.at(i, j).f64())
            )?;
        }
    }
    Ok(())
}

/// Compact binary dump: `u32 n_r, u32 n_phi, f64 r_min, f64 r_max`, then
/// `n_r * n_phi` doubles, all little-endian.
pub fn write_field_binary<F: Real>(
    field: &GridScalar<F>,
    out: &mut impl Write,
) -> Result<(), IoError> {
    let grid = field.grid;
    out.write_all(&(grid.n_r as u32).to_le_bytes())?;
    out.write_all(&(grid.n_phi as u32).to_le_bytes())?;
    out.write_all(&grid.r_min.f64().to_le_bytes())?;
    out.write_all(&grid.r_max.f64().to_le_bytes())?;
    for v in &field.data {
        out.write_all(&v.f64().to_le_bytes())?;
    }
    Ok(())
}

pub fn read_field_binary<F: Real>(input: &mut impl Read) -> Result<GridScalar<F>, IoError> {
    let mut u32buf = [0u8; 4];
    let mut f64buf = [0u8; 8];
    input.read_exact(&mut u32buf)?;
    let n_r = u32::from_le_bytes(u32buf) as usize;
    input.read_exact(&mut u32buf)?;
    let n_phi = u32::from_le_bytes(u32buf) as usize;
    input.read_exact(&mut f64buf)?;
    let r_min = f64::from_le_bytes(f64buf);
    input.read_exact(&mut f64buf)?;
    let r_max = f64::from_le_bytes(f64buf);
    let grid = PolarGrid::new(c(r_min), c(r_max), n_r, n_phi)
        .map_err(|e| IoError::Invalid(e.to_string()))?;
    let mut data = Vec::with_capacity(n_r * n_phi);
    for _ in 0..n_r * n_phi {
        input.read_exact(&mut f64buf)?;
        data.push(c(f64::from_le_bytes(f64buf)));
    }
    Ok(GridScalar { grid, data })
}

/// JSON shape of a zero configuration: `{"rho": int, "rho_hat": int|null,
/// "delta": int|null, "zeros": [[x, y], ..]}` with exactly one of `rho_hat`
/// (bounded annulus) or `delta` (exterior).
#[derive(Debug, Serialize, Deserialize)]
pub struct ZeroConfigJson {
    pub rho: i32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rho_hat: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<i32>,
    pub zeros: Vec<[f64; 2]>,
}

pub fn zero_config_to_json<F: Real>(config: &ZeroConfig<F>) -> ZeroConfigJson {
    let (rho_hat, delta) = match config.mode {
        ZeroConfigMode::Bounded { rho_hat } => (Some(rho_hat), None),
        ZeroConfigMode::Exterior { delta } => (None, Some(delta)),
    };
    ZeroConfigJson {
        rho: config.rho,
        rho_hat,
        delta,
        zeros: config.zeroes.iter().map(|z| [z.re.f64(), z.im.f64()]).collect(),
    }
}

pub fn zero_config_from_json<F: Real>(json: &ZeroConfigJson) -> Result<ZeroConfig<F>, IoError> {
    let mode = match (json.rho_hat, json.delta) {
        (Some(rho_hat), None) => ZeroConfigMode::Bounded { rho_hat },
        (None, Some(delta)) => ZeroConfigMode::Exterior { delta },
        _ => {
            return Err(IoError::Invalid(
                "exactly one of rho_hat or delta must be given".into(),
            ))
        }
    };
    let zeroes = json
        .zeros
        .iter()
        .map(|&[x, y]| Complex::new(c(x), c(y)))
        .collect();
    ZeroConfig::new(zeroes, json.rho, mode).map_err(|e| IoError::Invalid(e.to_string()))
}

/// Solver configuration file:
/// `{tol, maxIter, omega0, R, grid: [nR, nPhi], params: {alpha, gamma, d, e, beta}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverConfigJson {
    pub tol: f64,
    #[serde(rename = "maxIter")]
    pub max_iter: usize,
    pub omega0: f64,
    #[serde(rename = "R")]
    pub r_outer: f64,
    pub grid: [usize; 2],
    pub params: ParamsJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsJson {
    pub alpha: f64,
    pub gamma: f64,
    pub d: f64,
    pub e: f64,
    pub beta: f64,
}

impl Default for SolverConfigJson {
    fn default() -> Self {
        let p = WeightParams::<f64>::solvable_default();
        Self {
            tol: 1e-8,
            max_iter: 200,
            omega0: 1.0,
            r_outer: 8.0,
            grid: [128, 256],
            params: ParamsJson { alpha: p.alpha, gamma: p.gamma, d: p.d, e: p.e, beta: p.beta },
        }
    }
}

impl SolverConfigJson {
    pub fn weight_params<F: Real>(&self) -> Result<WeightParams<F>, IoError> {
        WeightParams::new(
            c(self.params.alpha),
            c(self.params.gamma),
            c(self.params.d),
            c(self.params.e),
            c(self.params.beta),
        )
        .map_err(|e| IoError::Invalid(e.to_string()))
    }

    pub fn solve_options<F: Real>(&self) -> SolveOptions<F> {
        SolveOptions {
            tol: c(self.tol),
            max_iter: self.max_iter,
            omega0: c(self.omega0),
            linear_tol: c(1e-10),
        }
    }
}

pub fn read_json_file<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json_file<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// Multipole spec JSON round-trips through serde as
/// `{"delta": int, "coeffs": [..]}`.
pub fn multipole_from_json<F: Real>(text: &str) -> Result<MultipoleSpec<F>, IoError> {
    #[derive(Deserialize)]
    struct Raw {
        delta: i32,
        coeffs: Vec<f64>,
    }
    let raw: Raw = serde_json::from_str(text)?;
    MultipoleSpec::new(raw.delta, raw.coeffs.into_iter().map(|v| c(v)).collect())
        .map_err(|e| IoError::Invalid(e.to_string()))
}
