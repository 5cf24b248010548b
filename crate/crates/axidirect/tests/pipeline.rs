//! End-to-end direction-problem solves against closed-form multipole
//! oracles, at moderate grid sizes (the acceptance suite reruns them at the
//! documented resolutions).

use axidirect::geometry::{DirectionField, MultipoleSpec, PolarGrid, ZeroConfig, ZeroConfigMode};
use axidirect::hardy::WeightParams;
use axidirect::pde::{
    decay_order, shift_zero_to_axis, solve_direction_problem, AxisShiftMode, Domain,
    ReconstructedSolution, SolveOptions,
};
use axidirect::Complex64;

/// Relative L² distance between the reconstructed field and a closed form,
/// after fitting the positive scale factor.
fn relative_l2_error(
    sol: &ReconstructedSolution<f64>,
    exact: impl Fn(f64, f64) -> (f64, f64),
) -> f64 {
    let grid = sol.grid;
    let mut dot = 0.0;
    let mut norm_exact = 0.0;
    for i in 0..grid.n_r {
        for j in 0..grid.n_phi {
            let (r, phi) = (grid.r(i), grid.phi(j));
            let (ez, er) = exact(r, phi);
            let w = r; // polar area element
            dot += (sol.b_zeta.at(i, j) * ez + sol.b_rho.at(i, j) * er) * w;
            norm_exact += (ez * ez + er * er) * w;
        }
    }
    let kappa = dot / norm_exact;
    assert!(kappa > 0.0, "scale factor must be positive, got {kappa}");
    let mut err = 0.0;
    for i in 0..grid.n_r {
        for j in 0..grid.n_phi {
            let (r, phi) = (grid.r(i), grid.phi(j));
            let (ez, er) = exact(r, phi);
            let w = r;
            err += ((sol.b_zeta.at(i, j) - kappa * ez).powi(2)
                + (sol.b_rho.at(i, j) - kappa * er).powi(2))
                * w;
        }
    }
    (err / (kappa * kappa * norm_exact)).sqrt()
}

fn dipole_solution(n_r: usize, n_phi: usize, r_out: f64) -> ReconstructedSolution<f64> {
    let field = DirectionField::<f64>::dipole(512);
    let config = ZeroConfig::exterior_no_zeroes(2);
    let params = WeightParams::solvable_default();
    let grid = PolarGrid::annulus(r_out, n_r, n_phi).unwrap();
    solve_direction_problem(
        &field,
        &config,
        &Domain::Exterior { r_truncate: r_out },
        &params,
        grid,
        &SolveOptions::default(),
    )
    .unwrap()
}

#[test]
fn dipole_direction_data_reconstructs_the_dipole() {
    let sol = dipole_solution(64, 128, 8.0);
    let dip = MultipoleSpec::<f64>::unit_dipole();
    let err = relative_l2_error(&sol, |r, phi| dip.field_cartesian(r, phi).unwrap());
    assert!(err <= 0.02, "relative L2 error {err}");
    assert!(sol.amplitude.iter().all(|&a| a > 0.0));
    // far field is dipole-led
    let fit = decay_order(|r, phi| sol.field_at(r, phi), &[4.0, 5.0, 6.0], 4).unwrap();
    assert_eq!(fit.delta, 3);
}

#[test]
fn mixture_with_prescribed_pair_reconstructs_the_mixture() {
    let spec = MultipoleSpec::<f64>::dipole_octupole();
    let field = DirectionField::<f64>::dipole_octupole(512);
    // locate the zero pair of the closed form by bisection in rho on the
    // equatorial ray (B_phi changes sign there)
    let b_phi = |rho: f64| spec.field(rho, std::f64::consts::FRAC_PI_2).unwrap().1;
    let root = axidirect::numeric::bisect(1.2, 2.0, 1e-12, b_phi);
    assert!((root - 1.5).abs() < 1e-9, "oracle zero at {root}");
    let config = ZeroConfig::new(
        vec![Complex64::new(0.0, root), Complex64::new(0.0, -root)],
        4,
        ZeroConfigMode::Exterior { delta: 3 },
    )
    .unwrap();
    let params = WeightParams::solvable_default();
    let grid = PolarGrid::annulus(8.0, 64, 128).unwrap();
    let sol = solve_direction_problem(
        &field,
        &config,
        &Domain::Exterior { r_truncate: 8.0 },
        &params,
        grid,
        &SolveOptions::default(),
    )
    .unwrap();
    let err = relative_l2_error(&sol, |r, phi| spec.field_cartesian(r, phi).unwrap());
    assert!(err <= 0.03, "relative L2 error {err}");
    assert!(sol.amplitude.iter().all(|&a| a > 0.0));

    // the reconstructed field vanishes within one cell of the prescribed
    // zero and carries the right winding budget
    let (rho_in, rho_out) = sol.audit_zero_count(1.05, 6.0).unwrap();
    assert_eq!(rho_in, 4);
    assert_eq!(rho_out, 2);
    // compensate the r^{-3} far-field decay so the true zero, not the far
    // tail, is the minimum
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..grid.n_r {
        for j in 0..grid.n_phi {
            let r = grid.r(i);
            let b = sol.b_zeta.at(i, j).hypot(sol.b_rho.at(i, j)) * r.powi(3);
            if b < best.0 {
                best = (b, r, grid.phi(j));
            }
        }
    }
    let (_, r_min, phi_min) = best;
    assert!(
        (r_min - root).abs() <= grid.h_r() && (phi_min - std::f64::consts::FRAC_PI_2).abs() <= grid.h_phi(),
        "field minimum at ({r_min}, {phi_min}), zero prescribed at ({root}, pi/2)"
    );

    // x-point index: the winding of B around a small loop enclosing exactly
    // the one prescribed zero is -1
    let loop_radius = 4.0 * grid.h_r();
    let m = 256;
    let mut vx = vec![];
    let mut vy = vec![];
    for k in 0..=m {
        let t = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
        let zeta = loop_radius * t.cos();
        let rho = root + loop_radius * t.sin();
        let rr = zeta.hypot(rho);
        let pp = rho.atan2(zeta);
        let (bz, br) = sol.field_at(rr, pp);
        vx.push(bz);
        vy.push(br);
    }
    let index = axidirect::geometry::winding_of_samples(&vx, &vy).unwrap();
    assert_eq!(index, -1, "x-point index");
}

/// The bounded-annulus variant: prescribing the mixture's own outer
/// direction reproduces the same field.
#[test]
fn bounded_annulus_with_matching_outer_data() {
    let spec = MultipoleSpec::<f64>::dipole_octupole();
    let field = DirectionField::<f64>::dipole_octupole(512);
    let r_out = 6.0;
    let outer = DirectionField::from_cartesian_fn(512, |phi: f64| {
        spec.field_cartesian(r_out, phi).unwrap()
    })
    .unwrap();
    let config = ZeroConfig::new(
        vec![Complex64::new(0.0, 1.5), Complex64::new(0.0, -1.5)],
        4,
        ZeroConfigMode::Bounded { rho_hat: 2 },
    )
    .unwrap();
    let params = WeightParams::solvable_default();
    let grid = PolarGrid::annulus(r_out, 64, 128).unwrap();
    let sol = solve_direction_problem(
        &field,
        &config,
        &Domain::Annulus { r_outer: r_out, outer },
        &params,
        grid,
        &SolveOptions::default(),
    )
    .unwrap();
    let err = relative_l2_error(&sol, |r, phi| spec.field_cartesian(r, phi).unwrap());
    assert!(err <= 0.02, "relative L2 error {err}");
}

#[test]
fn expelling_a_zero_raises_the_decay_order_by_one() {
    let grid_res = (56, 112);
    let r_out = 8.0;
    let field = DirectionField::<f64>::dipole_octupole(512);
    let params = WeightParams::solvable_default();
    let grid = PolarGrid::annulus(r_out, grid_res.0, grid_res.1).unwrap();
    let opts = SolveOptions::default();

    let solve_with_pair = |pair: Complex64, delta: i32| {
        let zeroes = match delta {
            3 => vec![pair, pair.conj()],
            5 => vec![],
            _ => unreachable!(),
        };
        let config = ZeroConfig::new(zeroes, 4, ZeroConfigMode::Exterior { delta }).unwrap();
        solve_direction_problem(
            &field,
            &config,
            &Domain::Exterior { r_truncate: r_out },
            &params,
            grid,
            &opts,
        )
        .unwrap()
    };
    let b1 = solve_with_pair(Complex64::new(0.0, 1.5), 3);
    let b2 = solve_with_pair(Complex64::new(0.9, 1.4), 3);
    let b3 = solve_with_pair(Complex64::new(0.0, 0.0), 5);

    // expel: kill the leading dipole coefficient and null B_zeta on the axis
    let zeta_s = 2.5;
    let combined =
        shift_zero_to_axis([&b1, &b2, &b3], zeta_s, AxisShiftMode::Expel).unwrap();
    let axis_val = combined.b_zeta_on_axis(zeta_s);
    let scale = combined.min_boundary_field();
    assert!(scale > 0.0, "boundary field vanished");
    assert!(
        axis_val.abs() <= 1e-8 * scale.max(1.0),
        "axis value {axis_val} vs scale {scale}"
    );
    let fit = decay_order(
        |r, phi| combined.field_at(r, phi),
        &[4.4, 5.2, 6.0],
        5,
    )
    .unwrap();
    assert_eq!(fit.delta, 4, "decay fit {:?}", fit.coeffs);

    // second-axis mode: two prescribed axis zeroes, decay order unchanged
    let zeta_t = 3.5;
    let two = shift_zero_to_axis(
        [&b1, &b2, &b3],
        zeta_s,
        AxisShiftMode::SecondAxis(zeta_t),
    )
    .unwrap();
    let v1 = two.b_zeta_on_axis(zeta_s);
    let v2 = two.b_zeta_on_axis(zeta_t);
    let scale = two
        .b_zeta
        .data
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    assert!(v1.abs() <= 1e-8 * scale && v2.abs() <= 1e-8 * scale, "{v1} {v2}");
    assert!(two.min_boundary_field() > 0.0);

    // degenerate input: the same pair twice
    let err = shift_zero_to_axis([&b1, &b1, &b3], zeta_s, AxisShiftMode::Expel);
    assert!(err.is_err());
}
