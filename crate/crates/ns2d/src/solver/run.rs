//! Trajectory integration with per-step moment and diagnostic recording.

use num_complex::Complex64;

use super::moments::{MomentHistory, MomentTable};
use super::stepper::{SolverConfig, StepperTables};
use crate::error::{Error, Result};
use crate::fields::{
    biot_savart_velocity, from_spectral, pointwise_product, to_spectral, vector_moment,
    weighted_norm, GridSpec, Lq, ScalarField,
};
use crate::tolerances::{BS_MEAN_TOL, VALID_WINDOW_DIVISOR};

/// Scalar diagnostics recorded every step.
#[derive(Debug, Clone, Copy)]
pub struct StepDiagnostics {
    pub t: f64,
    pub omega_l1: f64,
    pub omega_l2: f64,
    pub omega_linf: f64,
    pub u_max: f64,
    pub cfl: f64,
    pub mean_vorticity: f64,
    pub flux_integral: [f64; 2],
}

/// Snapshots, moment history and diagnostics of one run.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub grid: GridSpec,
    pub snapshots: Vec<(f64, ScalarField)>,
    pub history: MomentHistory,
    pub diagnostics: Vec<StepDiagnostics>,
}

impl Trajectory {
    /// Vorticity snapshot closest to `t` (must match within half a step).
    pub fn snapshot_at(&self, t: f64) -> Result<&ScalarField> {
        self.snapshots
            .iter()
            .find(|(ts, _)| (ts - t).abs() < 1e-9 * t.max(1.0))
            .map(|(_, f)| f)
            .ok_or_else(|| Error::Dependency(format!("no snapshot at t={t}")))
    }

    pub fn snapshot_times(&self) -> Vec<f64> {
        self.snapshots.iter().map(|(t, _)| *t).collect()
    }
}

/// Integrate the vorticity equation from `omega0` and record everything the
/// expansion needs. The validity window `t_max <= (L/8)^2` is enforced up
/// front; the boundary floor is enforced every step.
pub fn run(omega0: &ScalarField, cfg: &SolverConfig) -> Result<Trajectory> {
    let grid = omega0.grid;
    cfg.grid.same_shape(&grid)?;
    let window = (grid.half_length / VALID_WINDOW_DIVISOR).powi(2);
    if cfg.t_max > window + 1e-9 {
        return Err(Error::Config(format!(
            "t_max={} exceeds the validity window (L/{})^2 = {window}",
            cfg.t_max, VALID_WINDOW_DIVISOR
        )));
    }
    if !(cfg.dt > 0.0) {
        return Err(Error::Config(format!("dt must be positive, got {}", cfg.dt)));
    }
    let steps = (cfg.t_max / cfg.dt).round() as usize;
    if steps == 0 || ((steps as f64) * cfg.dt - cfg.t_max).abs() > 1e-9 * cfg.t_max.max(1.0) {
        return Err(Error::Config(format!(
            "t_max={} is not an integer multiple of dt={}",
            cfg.t_max, cfg.dt
        )));
    }

    let mut omega_hat = to_spectral(omega0);
    let mean = omega_hat.data[[0, 0]].norm();
    if mean > BS_MEAN_TOL {
        return Err(Error::NonzeroMean {
            mean,
            tol: BS_MEAN_TOL,
        });
    }
    omega_hat.data[[0, 0]] = Complex64::ZERO;

    let tables = StepperTables::new(grid, cfg.dt, cfg.stepper);
    let area = (2.0 * grid.half_length).powi(2);
    let mut traj = Trajectory {
        grid,
        snapshots: Vec::new(),
        history: MomentHistory::new(),
        diagnostics: Vec::new(),
    };
    let mut snap_steps: Vec<usize> = cfg
        .snapshot_times
        .iter()
        .map(|&t| (t / cfg.dt).round() as usize)
        .collect();
    snap_steps.sort_unstable();
    snap_steps.dedup();

    let mut u_max_prev = 0.0;
    for step in 0..=steps {
        let t = step as f64 * cfg.dt;
        let omega = from_spectral(&omega_hat);

        let edge = omega.boundary_max();
        if edge > cfg.boundary_floor {
            return Err(Error::Truncation {
                t,
                edge,
                floor: cfg.boundary_floor,
            });
        }

        let u = biot_savart_velocity(&omega)?;
        let (flux, flux_integral) = pointwise_product(&omega, &u)?;
        let moments: Vec<[f64; 2]> = traj
            .history
            .betas
            .clone()
            .iter()
            .map(|&beta| vector_moment(&flux, beta))
            .collect::<Result<_>>()?;
        traj.history.record(t, &moments);

        let u_max = u.max_magnitude();
        traj.diagnostics.push(StepDiagnostics {
            t,
            omega_l1: weighted_norm(&omega, 0.0, Lq::One)?,
            omega_l2: weighted_norm(&omega, 0.0, Lq::Two)?,
            omega_linf: omega.max_abs(),
            u_max,
            cfl: u_max * cfg.dt / grid.h(),
            mean_vorticity: omega_hat.data[[0, 0]].re * area,
            flux_integral,
        });

        if snap_steps.binary_search(&step).is_ok() {
            traj.snapshots.push((t, omega));
        }

        if step < steps {
            let (next, u_seen) = tables.step(&omega_hat, cfg).map_err(|e| match e {
                Error::Cfl {
                    dt,
                    bound,
                    suggested,
                    ..
                } => Error::Cfl {
                    t,
                    dt,
                    bound,
                    suggested,
                },
                other => other,
            })?;
            omega_hat = next;
            u_max_prev = u_seen;
        }
    }
    let _ = u_max_prev;
    Ok(traj)
}

/// Raw moment table of a finished run.
pub fn moment_table(omega0: &ScalarField, traj: &Trajectory) -> Result<MomentTable> {
    MomentTable::from_history(omega0, &traj.history)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::initial::{make_initial_vorticity, InitialDataSpec};
    use crate::solver::stepper::Stepper;

    fn quick_cfg(grid: GridSpec, t_max: f64) -> SolverConfig {
        let mut cfg = SolverConfig::new(grid, 0.02, t_max);
        cfg.snapshot_times = vec![t_max / 2.0, t_max];
        cfg
    }

    #[test]
    fn zero_data_gives_zero_trajectory() {
        let grid = GridSpec::new(64, 16.0).unwrap();
        let omega0 = ScalarField::zeros(grid);
        let traj = run(&omega0, &quick_cfg(grid, 0.2)).unwrap();
        for (_, snap) in &traj.snapshots {
            assert_eq!(snap.max_abs(), 0.0);
        }
        for d in &traj.diagnostics {
            assert_eq!(d.omega_linf, 0.0);
        }
    }

    #[test]
    fn conservation_and_monotone_norms() {
        let grid = GridSpec::new(128, 16.0).unwrap();
        let spec = InitialDataSpec::laplacian_gaussian(0.2, 1.0);
        let omega0 = make_initial_vorticity(&spec, grid).unwrap();
        let traj = run(&omega0, &quick_cfg(grid, 1.0)).unwrap();

        let mean0 = traj.diagnostics[0].mean_vorticity;
        for d in &traj.diagnostics {
            assert!((d.mean_vorticity - mean0).abs() <= 1e-13);
        }
        // L1 and L2 of the vorticity must not increase
        for w in traj.diagnostics.windows(2) {
            assert!(w[1].omega_l1 <= w[0].omega_l1 * (1.0 + 1e-10));
            assert!(w[1].omega_l2 <= w[0].omega_l2 * (1.0 + 1e-10));
        }
        // flux integral cancels
        for d in &traj.diagnostics {
            let scale = (d.omega_l2 * d.u_max).max(1e-30);
            assert!(d.flux_integral[0].abs() <= 1e-8 * scale);
            assert!(d.flux_integral[1].abs() <= 1e-8 * scale);
        }
    }

    #[test]
    fn small_amplitude_run_close_to_heat_flow() {
        let grid = GridSpec::new(128, 16.0).unwrap();
        let eps = 1e-3;
        let spec = InitialDataSpec::laplacian_gaussian(eps, 1.0);
        let omega0 = make_initial_vorticity(&spec, grid).unwrap();

        let mut cfg = quick_cfg(grid, 1.0);
        let traj = run(&omega0, &cfg).unwrap();
        cfg.advection = false;
        let heat = run(&omega0, &cfg).unwrap();

        let a = traj.snapshot_at(1.0).unwrap();
        let b = heat.snapshot_at(1.0).unwrap();
        let mut worst = 0.0f64;
        for (x, y) in a.data.iter().zip(b.data.iter()) {
            worst = worst.max((x - y).abs());
        }
        // nonlinear correction is O(eps^2)
        assert!(
            worst <= 20.0 * eps * eps,
            "heat deviation {worst} too large for eps={eps}"
        );
        assert!(worst > 0.0, "advection had no effect at all");
    }

    #[test]
    fn temporal_convergence_order() {
        let grid = GridSpec::new(128, 12.0).unwrap();
        let spec = InitialDataSpec {
            amplitude: 0.5,
            sigma: 0.75,
            shape: crate::solver::initial::Shape::LaplacianGaussian,
            modulation: Some(crate::solver::initial::PolyModulation {
                c10: 0.3,
                c11: 0.2,
                ..Default::default()
            }),
        };
        let omega0 = make_initial_vorticity(&spec, grid).unwrap();
        let t_end = 0.4;
        let solve = |dt: f64, stepper: Stepper| {
            let mut cfg = SolverConfig::new(grid, dt, t_end);
            cfg.stepper = stepper;
            cfg.snapshot_times = vec![t_end];
            // dealias ringing of the steep profile sits near 1e-9; this test
            // probes temporal order, not truncation
            cfg.boundary_floor = 1e-6;
            run(&omega0, &cfg)
                .unwrap()
                .snapshot_at(t_end)
                .unwrap()
                .clone()
        };
        for stepper in [Stepper::ImexIntegratingFactor, Stepper::Etdrk4] {
            let fine = solve(0.0025, stepper);
            let err = |dt: f64| {
                let s = solve(dt, stepper);
                let mut worst = 0.0f64;
                for (a, b) in s.data.iter().zip(fine.data.iter()) {
                    worst = worst.max((a - b).abs());
                }
                worst
            };
            let e1 = err(0.02);
            let e2 = err(0.01);
            let order = (e1 / e2).log2();
            assert!(
                (order - 4.0).abs() <= 0.8,
                "{stepper:?}: observed order {order} (errors {e1:.3e}, {e2:.3e})"
            );
        }
    }

    #[test]
    fn validity_window_enforced() {
        let grid = GridSpec::new(64, 16.0).unwrap();
        let omega0 = ScalarField::zeros(grid);
        let cfg = SolverConfig::new(grid, 0.02, 16.0); // window is (16/8)^2 = 4
        assert!(matches!(run(&omega0, &cfg), Err(Error::Config(_))));
    }
}
