//! Command-line surface: parameter sweeps, figure-data emission, solver
//! runs, and the verification suite. Every subcommand writes deterministic
//! CSV (plus optional SVG diagnostics); errors leave a machine-readable
//! JSON object on stderr and a nonzero exit status.

mod svg;
mod table;

use axidirect::example2d;
use axidirect::geometry::{DirectionField, GridScalar, PolarGrid, ZeroConfig};
use axidirect::hardy::{random_bumps, verify_inequality, Inequality, WeightParams};
use axidirect::io::{
    read_direction_csv, read_json_file, write_field_binary, write_field_csv, write_json_file,
    zero_config_from_json, SolverConfigJson, ZeroConfigJson,
};
use axidirect::minmax::{mu_analytic, window_check};
use axidirect::pde::{
    decay_order, shift_zero_to_axis, solve_direction_problem, AxisShiftMode, Domain,
    ReconstructedSolution, SolveOptions,
};
use axidirect::shooting::{find_eigenvalues, reduced_mu_min, ShootingProblem, EPS_MU};
use axidirect::Complex64;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use table::{Cell, Table};

const USAGE: &str = "\
axidirect — axisymmetric direction-problem toolkit

USAGE: axidirect <subcommand> [--key value ...] [--svg]

SUBCOMMANDS
  minmax-analytic  eigenvalue curves mu0(gamma) for interval ratios
                   --alpha 0.39 --ratios 0,1e-6,1e-4,1e-2
                   [--gamma-from 0.025 --gamma-to 2.0 --gamma-step 0.025]
  minmax-window    lower bound vs comparison function over gamma
                   --alpha 0.39 --d 0.1 --e 1.2
                   [--gamma-from 0.0 --gamma-to 1.6 --gamma-step 0.025]
  shoot            ODE eigenvalues by shooting
                   --mode reduced --ratios 1e-6,1e-4,1e-2 [gamma grid as above]
                   --mode full --gamma 0.7 --b0 1e-3 --btilde 25,50,100
  hardy-verify     randomized inequality verification
                   [--seed 20260808 --count 1000]
  solve            direction problem end to end
                   [--field dipole|dipole-octupole|<csv path>]
                   [--zeros <json path>] [--config <solver json>]
  shift-zero       move a zero of the mixture oracle onto the axis
                   --zeta-s 2.5 [--second 3.5] [--grid 56x112]
  trace-2d         zero trajectory of the analytic 2D family
                   [--from -0.9 --to 0.9 --step 0.05]
  verify-all       run the acceptance suite; exit 0 iff all criteria pass

COMMON FLAGS
  --out DIR        output directory (default: out)
  --svg            also render SVG diagnostics next to the CSV
  --config PATH    JSON file whose entries override the flags

The AXIDIRECT_THREADS environment variable caps sweep parallelism.
";

#[derive(Debug)]
struct CliError {
    kind: &'static str,
    message: String,
}

impl CliError {
    fn new(kind: &'static str, message: impl Into<String>) -> Self {
        Self { kind, message: message.into() }
    }
}

macro_rules! cli_err {
    ($kind:expr, $($arg:tt)*) => { CliError::new($kind, format!($($arg)*)) };
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new("io", e.to_string())
    }
}

impl From<axidirect::io::IoError> for CliError {
    fn from(e: axidirect::io::IoError) -> Self {
        CliError::new("io", e.to_string())
    }
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() || args[0] == "--help" || args[0] == "help" {
        eprint!("{USAGE}");
        std::process::exit(2);
    }
    match dispatch(&args) {
        Ok(()) => {}
        Err(e) => {
            let json = serde_json::json!({ "kind": e.kind, "error": e.message });
            eprintln!("{json}");
            std::process::exit(1);
        }
    }
}

/// Parsed flags: `--key value` pairs plus boolean `--svg`.
struct RunConfig {
    options: BTreeMap<String, String>,
    svg: bool,
}

impl RunConfig {
    fn parse(args: &[String], allowed: &[&str]) -> Result<Self, CliError> {
        let command = args[0].clone();
        let mut options = BTreeMap::new();
        let mut svg = false;
        let mut k = 1;
        while k < args.len() {
            let key = args[k]
                .strip_prefix("--")
                .ok_or_else(|| cli_err!("usage", "expected --flag, got '{}'", args[k]))?;
            if key == "svg" {
                svg = true;
                k += 1;
                continue;
            }
            if !allowed.contains(&key) && key != "out" && key != "config" {
                return Err(cli_err!("usage", "unknown flag --{key} for {command}"));
            }
            let value = args
                .get(k + 1)
                .ok_or_else(|| cli_err!("usage", "missing value for --{key}"))?;
            options.insert(key.to_string(), value.clone());
            k += 2;
        }
        let _ = &command;
        // config file overrides flags
        if let Some(path) = options.get("config").cloned() {
            let overrides: BTreeMap<String, serde_json::Value> =
                read_json_file(Path::new(&path))?;
            for (key, value) in overrides {
                let text = match value {
                    serde_json::Value::String(s) => s,
                    other => other.to_string(),
                };
                options.insert(key, text);
            }
        }
        Ok(Self { options, svg })
    }

    fn out_dir(&self) -> PathBuf {
        PathBuf::from(self.options.get("out").map(String::as_str).unwrap_or("out"))
    }

    fn f64_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        match self.options.get(key) {
            None => Ok(default),
            Some(text) => text
                .parse()
                .map_err(|e| cli_err!("usage", "--{key} {text}: {e}")),
        }
    }

    fn usize_or(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.options.get(key) {
            None => Ok(default),
            Some(text) => text
                .parse()
                .map_err(|e| cli_err!("usage", "--{key} {text}: {e}")),
        }
    }

    fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.options.get(key).map(String::as_str).unwrap_or(default)
    }

    fn f64_list(&self, key: &str, default: &[f64]) -> Result<Vec<f64>, CliError> {
        match self.options.get(key) {
            None => Ok(default.to_vec()),
            Some(text) => text
                .split(',')
                .map(|t| t.trim().parse().map_err(|e| cli_err!("usage", "--{key} {t}: {e}")))
                .collect(),
        }
    }
}

fn gamma_grid(cfg: &RunConfig, from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    let from = cfg.f64_or("gamma-from", from)?;
    let to = cfg.f64_or("gamma-to", to)?;
    let step = cfg.f64_or("gamma-step", step)?;
    if !(step > 0.0) {
        return Err(cli_err!("usage", "gamma step must be positive"));
    }
    let mut grid = vec![];
    let mut g = from;
    while g <= to + 1e-12 {
        grid.push(g);
        g += step;
    }
    Ok(grid)
}

/// Worker cap: min(available parallelism, AXIDIRECT_THREADS).
fn thread_budget() -> usize {
    let hw = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    match std::env::var("AXIDIRECT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        Some(cap) if cap >= 1 => hw.min(cap),
        _ => hw,
    }
}

/// Order-preserving parallel map over an index range.
fn parallel_map<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let workers = thread_budget().min(n.max(1));
    if workers <= 1 || n <= 1 {
        return (0..n).map(f).collect();
    }
    let mut out: Vec<Option<T>> = (0..n).map(|_| None).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots = std::sync::Mutex::new(&mut out);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if k >= n {
                    break;
                }
                let value = f(k);
                slots.lock().unwrap()[k] = Some(value);
            });
        }
    });
    out.into_iter().map(|v| v.unwrap()).collect()
}

fn dispatch(args: &[String]) -> Result<(), CliError> {
    match args[0].as_str() {
        "minmax-analytic" => cmd_minmax_analytic(args),
        "minmax-window" => cmd_minmax_window(args),
        "shoot" => cmd_shoot(args),
        "hardy-verify" => cmd_hardy_verify(args),
        "solve" => cmd_solve(args),
        "shift-zero" => cmd_shift_zero(args),
        "trace-2d" => cmd_trace_2d(args),
        "verify-all" => cmd_verify_all(args),
        other => Err(cli_err!("usage", "unknown subcommand '{other}'; run with no arguments for usage")),
    }
}

fn cmd_minmax_analytic(args: &[String]) -> Result<(), CliError> {
    let cfg = RunConfig::parse(args, &["alpha", "ratios", "gamma-from", "gamma-to", "gamma-step"])?;
    let alpha = cfg.f64_or("alpha", 0.39)?;
    let ratios = cfg.f64_list("ratios", &[0.0, 1e-6, 1e-4, 1e-2])?;
    let gammas = gamma_grid(&cfg, 0.025, 2.0, 0.025)?;
    let mut table = Table::new(&["gamma", "ratio", "mu0"]);
    for &ratio in &ratios {
        for &gamma in &gammas {
            let b = ratio.powf(1.0 + alpha);
            let mu = mu_analytic(alpha, gamma, b).unwrap_or(0.0);
            table.push(vec![Cell::Num(gamma), Cell::Num(ratio), Cell::Num(mu)]);
        }
    }
    let out = cfg.out_dir();
    table.save(&out.join("minmax_analytic.csv"))?;
    if cfg.svg {
        let series: Vec<(String, Vec<f64>, Vec<f64>)> = ratios
            .iter()
            .map(|&ratio| {
                let ys: Vec<f64> = gammas
                    .iter()
                    .map(|&g| mu_analytic(alpha, g, ratio.powf(1.0 + alpha)).unwrap_or(0.0))
                    .collect();
                (format!("b0/b1 = {ratio:.0e}"), gammas.clone(), ys)
            })
            .collect();
        let plot_series: Vec<svg::Series> = series
            .iter()
            .map(|(label, x, y)| svg::Series { label, x, y, scatter: false })
            .collect();
        svg::plot(&out.join("minmax_analytic.svg"), "mu0 vs gamma", &plot_series)?;
    }
    println!("wrote {}", out.join("minmax_analytic.csv").display());
    Ok(())
}

fn cmd_minmax_window(args: &[String]) -> Result<(), CliError> {
    let cfg = RunConfig::parse(args, &["alpha", "d", "e", "gamma-from", "gamma-to", "gamma-step"])?;
    let alpha = cfg.f64_or("alpha", 0.39)?;
    let d = cfg.f64_or("d", 0.1)?;
    let e = cfg.f64_or("e", 1.2)?;
    let gammas = gamma_grid(&cfg, 0.0, 1.6, 0.025)?;
    let mut table = Table::new(&[
        "alpha", "gamma", "d", "e", "B", "mu0", "LB", "CF", "delta", "solvable",
    ]);
    let mut lb_curve = vec![];
    let mut cf_curve = vec![];
    for &gamma in &gammas {
        let params = WeightParams::for_sweep(alpha, gamma, d, e)
            .map_err(|err| cli_err!("params", "{err}"))?;
        let rep = window_check(&params).map_err(|err| cli_err!("minmax", "{err}"))?;
        lb_curve.push(rep.lower_bound);
        cf_curve.push(rep.comparison);
        table.push(vec![
            Cell::Num(rep.alpha),
            Cell::Num(rep.gamma),
            Cell::Num(rep.d),
            Cell::Num(rep.e),
            Cell::Num(rep.b_ratio),
            Cell::Num(rep.mu0),
            Cell::Num(rep.lower_bound),
            Cell::Num(rep.comparison),
            Cell::Num(rep.delta_lb),
            Cell::Bool(rep.solvable),
        ]);
    }
    let out = cfg.out_dir();
    table.save(&out.join("minmax_window.csv"))?;
    if cfg.svg {
        svg::plot(
            &out.join("minmax_window.svg"),
            "lower bound vs comparison function",
            &[
                svg::Series { label: "LB", x: &gammas, y: &lb_curve, scatter: false },
                svg::Series { label: "CF", x: &gammas, y: &cf_curve, scatter: false },
            ],
        )?;
    }
    println!("wrote {}", out.join("minmax_window.csv").display());
    Ok(())
}

fn cmd_shoot(args: &[String]) -> Result<(), CliError> {
    let cfg = RunConfig::parse(
        args,
        &["mode", "alpha", "gamma", "d", "e", "ratios", "b0", "btilde", "gamma-from", "gamma-to", "gamma-step"],
    )?;
    let mode = cfg.str_or("mode", "reduced");
    let alpha = cfg.f64_or("alpha", 0.39)?;
    let d = cfg.f64_or("d", 0.1)?;
    let e = cfg.f64_or("e", 1.2)?;
    let out = cfg.out_dir();
    match mode {
        "reduced" => {
            let ratios = cfg.f64_list("ratios", &[1e-6, 1e-4, 1e-2])?;
            let gammas = gamma_grid(&cfg, 0.1, 2.0, 0.1)?;
            let jobs: Vec<(f64, f64)> = ratios
                .iter()
                .flat_map(|&r| gammas.iter().map(move |&g| (g, r)))
                .collect();
            let rows = parallel_map(jobs.len(), |k| {
                let (gamma, ratio) = jobs[k];
                let params = WeightParams::for_sweep(alpha, gamma, d, e).unwrap();
                let numeric = reduced_mu_min(&params, ratio);
                let analytic = mu_analytic(alpha, gamma, ratio.powf(1.0 + alpha));
                (gamma, ratio, numeric, analytic)
            });
            let mut table =
                Table::new(&["gamma", "ratio", "mu_numeric", "mu_analytic", "abs_err"]);
            for (gamma, ratio, numeric, analytic) in rows {
                let numeric = numeric.map_err(|err| cli_err!("shooting", "{err}"))?;
                let analytic = analytic.map_err(|err| cli_err!("minmax", "{err}"))?;
                table.push(vec![
                    Cell::Num(gamma),
                    Cell::Num(ratio),
                    Cell::Num(numeric),
                    Cell::Num(analytic),
                    Cell::Num((numeric - analytic).abs()),
                ]);
            }
            table.save(&out.join("shoot_reduced.csv"))?;
            if cfg.svg {
                let xs = table.numeric_column("gamma").unwrap();
                let ys = table.numeric_column("mu_numeric").unwrap();
                svg::plot(
                    &out.join("shoot_reduced.svg"),
                    "reduced-system eigenvalues",
                    &[svg::Series { label: "mu_min", x: &xs, y: &ys, scatter: true }],
                )?;
            }
            println!("wrote {}", out.join("shoot_reduced.csv").display());
        }
        "full" => {
            let gammas = cfg.f64_list("gamma", &[0.7])?;
            let b0 = cfg.f64_or("b0", 1e-3)?;
            let btildes = cfg.f64_list("btilde", &[100.0])?;
            let jobs: Vec<(f64, f64)> = gammas
                .iter()
                .flat_map(|&g| btildes.iter().map(move |&b| (g, b)))
                .collect();
            let rows = parallel_map(jobs.len(), |k| {
                let (gamma, btilde) = jobs[k];
                let params = WeightParams::for_sweep(alpha, gamma, d, e).unwrap();
                let mu = ShootingProblem::new(params, b0, btilde, false)
                    .and_then(|problem| {
                        find_eigenvalues(&problem, (EPS_MU, 1.0 - 2.0 * EPS_MU), 160)
                    })
                    .map(|r| r.mu_min);
                (gamma, btilde, mu)
            });
            let mut table = Table::new(&["gamma", "b0", "btilde", "mu_min"]);
            for (gamma, btilde, mu) in rows {
                let mu = mu.map_err(|err| cli_err!("shooting", "{err}"))?;
                table.push(vec![
                    Cell::Num(gamma),
                    Cell::Num(b0),
                    Cell::Num(btilde),
                    Cell::Num(mu),
                ]);
            }
            table.save(&out.join("shoot_full.csv"))?;
            println!("wrote {}", out.join("shoot_full.csv").display());
        }
        other => return Err(cli_err!("usage", "unknown shoot mode '{other}'")),
    }
    Ok(())
}

fn cmd_hardy_verify(args: &[String]) -> Result<(), CliError> {
    let cfg = RunConfig::parse(args, &["seed", "count"])?;
    let seed = cfg.usize_or("seed", 20260808)? as u64;
    let count = cfg.usize_or("count", 1000)?;
    let params = WeightParams::new(0.0, 0.6, 0.8, 1.0, 0.2).unwrap();
    let bumps = random_bumps::<f64>(seed, count);
    let checks = [
        ("3.4", Inequality::Hardy34, 3.0),
        ("3.5", Inequality::Hardy35, 2.0),
        ("3.18", Inequality::SmallP318, 3.0),
        ("3.20", Inequality::LargeP320, 5.0),
    ];
    let results = parallel_map(bumps.len(), |k| {
        let mut row = vec![];
        for (name, which, p) in checks {
            let rep = verify_inequality(&bumps[k], which, &params, p);
            row.push((name, rep));
        }
        row
    });
    let mut table = Table::new(&["bump", "inequality", "lhs", "rhs", "ratio", "holds"]);
    let mut failures = 0usize;
    for (k, row) in results.into_iter().enumerate() {
        for (name, rep) in row {
            match rep {
                Ok(rep) => {
                    if !rep.holds {
                        failures += 1;
                    }
                    table.push(vec![
                        Cell::Int(k as i64),
                        Cell::Text(name.into()),
                        Cell::Num(rep.lhs),
                        Cell::Num(rep.rhs),
                        Cell::Num(rep.ratio),
                        Cell::Bool(rep.holds),
                    ]);
                }
                Err(err) => return Err(cli_err!("hardy", "bump {k} ({name}): {err}")),
            }
        }
    }
    let out = cfg.out_dir();
    table.save(&out.join("hardy_verify.csv"))?;
    println!(
        "wrote {} ({} checks, {failures} violations)",
        out.join("hardy_verify.csv").display(),
        count * checks.len()
    );
    if failures > 0 {
        return Err(cli_err!("hardy", "{failures} inequality violations"));
    }
    Ok(())
}

fn builtin_field(name: &str) -> Result<DirectionField<f64>, CliError> {
    match name {
        "dipole" => Ok(DirectionField::dipole(512)),
        "dipole-octupole" => Ok(DirectionField::dipole_octupole(512)),
        path => {
            let mut file = std::fs::File::open(path)
                .map_err(|e| cli_err!("io", "direction field '{path}': {e}"))?;
            Ok(read_direction_csv(&mut file)?)
        }
    }
}

fn default_zero_config(field: &DirectionField<f64>) -> Result<ZeroConfig<f64>, CliError> {
    use axidirect::geometry::Builtin;
    match field.builtin {
        Some(Builtin::Dipole) => Ok(ZeroConfig::exterior_no_zeroes(2)),
        Some(Builtin::DipoleOctupole) => ZeroConfig::new(
            vec![Complex64::new(0.0, 1.5), Complex64::new(0.0, -1.5)],
            4,
            axidirect::geometry::ZeroConfigMode::Exterior { delta: 3 },
        )
        .map_err(|e| cli_err!("config", "{e}")),
        None => Err(cli_err!(
            "usage",
            "--zeros <json> is required for direction fields read from files"
        )),
    }
}

fn save_solution(
    out: &Path,
    sol: &ReconstructedSolution<f64>,
    solver_cfg: &SolverConfigJson,
) -> Result<(), CliError> {
    std::fs::create_dir_all(out)?;
    let save_csv = |name: &str, field: &GridScalar<f64>| -> Result<(), CliError> {
        let mut file = std::io::BufWriter::new(std::fs::File::create(out.join(name))?);
        write_field_csv(field, &mut file)?;
        Ok(())
    };
    save_csv("b_zeta.csv", &sol.b_zeta)?;
    save_csv("b_rho.csv", &sol.b_rho)?;
    if let Some(p) = &sol.p {
        save_csv("p.csv", p)?;
    }
    if let Some(q) = &sol.q {
        save_csv("q.csv", q)?;
    }
    let mut bin = std::io::BufWriter::new(std::fs::File::create(out.join("b_zeta.bin"))?);
    write_field_binary(&sol.b_zeta, &mut bin)?;
    let mut bin = std::io::BufWriter::new(std::fs::File::create(out.join("b_rho.bin"))?);
    write_field_binary(&sol.b_rho, &mut bin)?;
    write_json_file(&out.join("solver_config.json"), solver_cfg)?;
    let min_amp = sol.amplitude.iter().cloned().fold(f64::INFINITY, f64::min);
    let fit = decay_order(
        |r, phi| sol.field_at(r, phi),
        &[0.55 * sol.grid.r_max, 0.65 * sol.grid.r_max, 0.75 * sol.grid.r_max],
        6,
    );
    let summary = serde_json::json!({
        "grid": [sol.grid.n_r, sol.grid.n_phi],
        "r_outer": sol.grid.r_max,
        "min_amplitude": min_amp,
        "decay_order": fit.as_ref().map(|f| f.delta).ok(),
        "leading_coeffs": fit.as_ref().map(|f| f.coeffs.clone()).unwrap_or_default(),
    });
    std::fs::write(out.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
    Ok(())
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::new("json", e.to_string())
    }
}

fn cmd_solve(args: &[String]) -> Result<(), CliError> {
    let cfg = RunConfig::parse(args, &["field", "zeros", "solver"])?;
    let field = builtin_field(cfg.str_or("field", "dipole"))?;
    let solver_cfg: SolverConfigJson = match cfg.options.get("solver") {
        Some(path) => read_json_file(Path::new(path))?,
        None => SolverConfigJson::default(),
    };
    let zero_config = match cfg.options.get("zeros") {
        Some(path) => {
            let json: ZeroConfigJson = read_json_file(Path::new(path))?;
            zero_config_from_json(&json)?
        }
        None => default_zero_config(&field)?,
    };
    let params = solver_cfg.weight_params()?;
    let grid = PolarGrid::annulus(solver_cfg.r_outer, solver_cfg.grid[0], solver_cfg.grid[1])
        .map_err(|e| cli_err!("config", "{e}"))?;
    let sol = solve_direction_problem(
        &field,
        &zero_config,
        &Domain::Exterior { r_truncate: solver_cfg.r_outer },
        &params,
        grid,
        &solver_cfg.solve_options(),
    )
    .map_err(|e| cli_err!("pde", "{e}"))?;
    let out = cfg.out_dir();
    save_solution(&out, &sol, &solver_cfg)?;
    println!("wrote solution fields under {}", out.display());
    Ok(())
}

fn cmd_shift_zero(args: &[String]) -> Result<(), CliError> {
    let cfg = RunConfig::parse(args, &["zeta-s", "second", "grid"])?;
    let zeta_s = cfg.f64_or("zeta-s", 2.5)?;
    let grid_text = cfg.str_or("grid", "56x112");
    let (n_r, n_phi) = grid_text
        .split_once('x')
        .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
        .ok_or_else(|| cli_err!("usage", "--grid expects NRxNPHI, got '{grid_text}'"))?;
    let field = DirectionField::<f64>::dipole_octupole(512);
    let params = WeightParams::solvable_default();
    let grid = PolarGrid::annulus(8.0, n_r, n_phi).map_err(|e| cli_err!("config", "{e}"))?;
    let opts = SolveOptions::default();
    let solve_with = |zeroes: Vec<Complex64>, delta: i32| {
        let config = ZeroConfig::new(
            zeroes,
            4,
            axidirect::geometry::ZeroConfigMode::Exterior { delta },
        )
        .map_err(|e| cli_err!("config", "{e}"))?;
        solve_direction_problem(
            &field,
            &config,
            &Domain::Exterior { r_truncate: 8.0 },
            &params,
            grid,
            &opts,
        )
        .map_err(|e| cli_err!("pde", "{e}"))
    };
    let b1 = solve_with(vec![Complex64::new(0.0, 1.5), Complex64::new(0.0, -1.5)], 3)?;
    let b2 = solve_with(vec![Complex64::new(0.9, 1.4), Complex64::new(0.9, -1.4)], 3)?;
    let b3 = solve_with(vec![], 5)?;
    let mode = match cfg.options.get("second") {
        Some(text) => AxisShiftMode::SecondAxis(
            text.parse().map_err(|e| cli_err!("usage", "--second {text}: {e}"))?,
        ),
        None => AxisShiftMode::Expel,
    };
    let combined = shift_zero_to_axis([&b1, &b2, &b3], zeta_s, mode)
        .map_err(|e| cli_err!("pde", "{e}"))?;
    let out = cfg.out_dir();
    save_solution(&out, &combined, &SolverConfigJson::default())?;
    let fit = decay_order(|r, phi| combined.field_at(r, phi), &[4.4, 5.2, 6.0], 5)
        .map_err(|e| cli_err!("pde", "{e}"))?;
    println!(
        "wrote combined field under {} (fitted decay order {}, axis value {:.3e})",
        out.display(),
        fit.delta,
        combined.b_zeta_on_axis(zeta_s)
    );
    Ok(())
}

fn cmd_trace_2d(args: &[String]) -> Result<(), CliError> {
    let cfg = RunConfig::parse(args, &["from", "to", "step"])?;
    let from = cfg.f64_or("from", -0.9)?;
    let to = cfg.f64_or("to", 0.9)?;
    let step = cfg.f64_or("step", 0.05)?;
    if !(step > 0.0 && from < to) {
        return Err(cli_err!("usage", "need from < to and positive step"));
    }
    let mut lambdas = vec![];
    let mut lambda = from;
    while lambda <= to + 1e-12 {
        lambdas.push(lambda);
        lambda += step;
    }
    let path = example2d::trace_zero_path(&lambdas);
    let mut table = Table::new(&["lambda", "regime", "r0", "phi0", "residual"]);
    for p in &path {
        let regime = match p.regime {
            example2d::Regime::InteriorRight => "interior-right",
            example2d::Regime::BoundaryPair => "boundary-pair",
            example2d::Regime::InteriorLeft => "interior-left",
        };
        table.push(vec![
            Cell::Num(p.lambda),
            Cell::Text(regime.into()),
            Cell::Num(p.r0),
            Cell::Num(p.phi0),
            Cell::Num(p.residual),
        ]);
    }
    let out = cfg.out_dir();
    table.save(&out.join("trace_2d.csv"))?;
    if cfg.svg {
        let xs: Vec<f64> = path.iter().map(|p| p.r0 * p.phi0.cos()).collect();
        let ys: Vec<f64> = path.iter().map(|p| p.r0 * p.phi0.sin()).collect();
        svg::plot(
            &out.join("trace_2d.svg"),
            "zero trajectory in the plane",
            &[svg::Series { label: "zero path", x: &xs, y: &ys, scatter: true }],
        )?;
    }
    println!("wrote {}", out.join("trace_2d.csv").display());
    Ok(())
}

fn cmd_verify_all(args: &[String]) -> Result<(), CliError> {
    let cfg = RunConfig::parse(args, &[])?;
    let reports = axidirect::acceptance::run_all();
    let mut table = Table::new(&["id", "name", "passed", "seconds", "details"]);
    let mut all_ok = true;
    for rep in &reports {
        println!("{}", rep.line());
        all_ok &= rep.passed;
        table.push(vec![
            Cell::Int(rep.id as i64),
            Cell::Text(rep.name.into()),
            Cell::Bool(rep.passed),
            Cell::Num(rep.seconds),
            Cell::Text(rep.details.replace(',', ";")),
        ]);
    }
    let out = cfg.out_dir();
    table.save(&out.join("verify_all.csv"))?;
    if !all_ok {
        return Err(cli_err!("acceptance", "one or more criteria failed"));
    }
    println!("all criteria passed");
    Ok(())
}
