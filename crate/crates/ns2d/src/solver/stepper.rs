//! Time steppers for the dealiased vorticity equation
//! `d_t omega_hat = -|k|^2 omega_hat + N(omega_hat)`,
//! `N = -FFT[u . grad omega]` with `u` from the Biot-Savart multiplier.
//!
//! Diffusion is treated exactly (integrating factor / exponential
//! time differencing); the advection stage is the only approximation.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fields::{
    biot_savart_spectral, from_spectral, to_spectral, GridSpec, ScalarField, SpectralField,
};
use crate::tolerances::CFL_SAFETY;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stepper {
    /// Classical RK4 composed with the exact diffusion factor.
    ImexIntegratingFactor,
    /// Cox-Matthews exponential time differencing RK4.
    Etdrk4,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub grid: GridSpec,
    pub dt: f64,
    pub t_max: f64,
    /// Requested snapshot times; snapped to the step grid.
    pub snapshot_times: Vec<f64>,
    pub stepper: Stepper,
    /// Far-field floor for |omega| on the box edge during the run.
    pub boundary_floor: f64,
    /// Disable to integrate the pure heat flow (testing).
    pub advection: bool,
}

impl SolverConfig {
    pub fn new(grid: GridSpec, dt: f64, t_max: f64) -> Self {
        Self {
            grid,
            dt,
            t_max,
            snapshot_times: Vec::new(),
            stepper: Stepper::ImexIntegratingFactor,
            boundary_floor: crate::tolerances::RUN_FLOOR,
            advection: true,
        }
    }
}

/// State plus the cached velocity diagnostics of the last nonlinear call.
pub struct NonlinearEval {
    pub n_hat: SpectralField,
    pub u_max: f64,
}

/// Dealiased advection term; the zero mode is pinned to zero so the mean
/// vorticity is conserved exactly.
pub fn nonlinear_term(omega_hat: &SpectralField) -> Result<NonlinearEval> {
    let mut w = omega_hat.clone();
    w.dealias();
    w.data[[0, 0]] = Complex64::ZERO;
    let (ux_hat, uy_hat) = biot_savart_spectral(&w)?;
    let ux = from_spectral(&ux_hat);
    let uy = from_spectral(&uy_hat);
    let dx = from_spectral(&w.deriv(0));
    let dy = from_spectral(&w.deriv(1));

    let grid = omega_hat.grid;
    let mut u_max = 0.0f64;
    let mut phys = Array2::zeros((grid.n, grid.n));
    ndarray::Zip::from(&mut phys)
        .and(&ux.data)
        .and(&uy.data)
        .and(&dx.data)
        .and(&dy.data)
        .for_each(|p, &a, &b, &gx, &gy| {
            *p = -(a * gx + b * gy);
        });
    for (a, b) in ux.data.iter().zip(uy.data.iter()) {
        u_max = u_max.max(a.hypot(*b));
    }
    let mut n_hat = to_spectral(&ScalarField { grid, data: phys });
    n_hat.dealias();
    n_hat.data[[0, 0]] = Complex64::ZERO;
    Ok(NonlinearEval { n_hat, u_max })
}

fn zero_eval(grid: GridSpec) -> NonlinearEval {
    NonlinearEval {
        n_hat: SpectralField::zeros(grid),
        u_max: 0.0,
    }
}

/// Per-mode coefficient tables, precomputed once per (grid, dt).
pub struct StepperTables {
    stepper: Stepper,
    dt: f64,
    e_half: Array2<f64>,
    e_full: Array2<f64>,
    // ETDRK4 weights
    q: Array2<f64>,
    f1: Array2<f64>,
    f2: Array2<f64>,
    f3: Array2<f64>,
}

fn phi1(z: f64) -> f64 {
    if z.abs() < 0.5 {
        let mut term = 1.0;
        let mut acc = 0.0;
        for k in 1..=14 {
            acc += term;
            term *= z / (k + 1) as f64;
        }
        acc
    } else {
        (z.exp() - 1.0) / z
    }
}

fn phi2(z: f64) -> f64 {
    if z.abs() < 0.5 {
        let mut term = 0.5;
        let mut acc = 0.0;
        for k in 2..=15 {
            acc += term;
            term *= z / (k + 1) as f64;
        }
        acc
    } else {
        (z.exp() - 1.0 - z) / (z * z)
    }
}

fn phi3(z: f64) -> f64 {
    if z.abs() < 0.5 {
        let mut term = 1.0 / 6.0;
        let mut acc = 0.0;
        for k in 3..=16 {
            acc += term;
            term *= z / (k + 1) as f64;
        }
        acc
    } else {
        (z.exp() - 1.0 - z - 0.5 * z * z) / (z * z * z)
    }
}

impl StepperTables {
    pub fn new(grid: GridSpec, dt: f64, stepper: Stepper) -> Self {
        let n = grid.n;
        let z_of = |i: usize, j: usize| {
            let k1 = grid.wavenumber(i);
            let k2 = grid.wavenumber(j);
            -(k1 * k1 + k2 * k2) * dt
        };
        let e_half = Array2::from_shape_fn((n, n), |(i, j)| (0.5 * z_of(i, j)).exp());
        let e_full = Array2::from_shape_fn((n, n), |(i, j)| z_of(i, j).exp());
        let q = Array2::from_shape_fn((n, n), |(i, j)| 0.5 * dt * phi1(0.5 * z_of(i, j)));
        let f1 = Array2::from_shape_fn((n, n), |(i, j)| {
            let z = z_of(i, j);
            dt * (phi1(z) - 3.0 * phi2(z) + 4.0 * phi3(z))
        });
        let f2 = Array2::from_shape_fn((n, n), |(i, j)| {
            let z = z_of(i, j);
            2.0 * dt * (phi2(z) - 2.0 * phi3(z))
        });
        let f3 = Array2::from_shape_fn((n, n), |(i, j)| {
            let z = z_of(i, j);
            dt * (4.0 * phi3(z) - phi2(z))
        });
        Self {
            stepper,
            dt,
            e_half,
            e_full,
            q,
            f1,
            f2,
            f3,
        }
    }

    /// Advance `omega_hat` by one step of length `dt`; returns the new state
    /// and the max velocity magnitude seen (for CFL reporting).
    pub fn step(&self, omega_hat: &SpectralField, cfg: &SolverConfig) -> Result<(SpectralField, f64)> {
        let grid = omega_hat.grid;
        let eval = |w: &SpectralField| -> Result<NonlinearEval> {
            if cfg.advection {
                nonlinear_term(w)
            } else {
                Ok(zero_eval(grid))
            }
        };
        let n1 = eval(omega_hat)?;
        // advective CFL check on the start-of-step velocity
        let bound = CFL_SAFETY * grid.h() / n1.u_max.max(1e-300);
        if cfg.advection && self.dt > bound {
            return Err(Error::Cfl {
                t: f64::NAN,
                dt: self.dt,
                bound,
                suggested: 0.8 * bound,
            });
        }
        let lin = |e: &Array2<f64>, a: &Array2<Complex64>| {
            Array2::from_shape_fn(a.dim(), |idx| a[idx] * e[idx])
        };
        let data = match self.stepper {
            Stepper::ImexIntegratingFactor => {
                let dt = self.dt;
                let u = &omega_hat.data;
                let a_in = u + &n1.n_hat.data.mapv(|v| v * (0.5 * dt));
                let a = lin(&self.e_half, &a_in);
                let n2 = eval(&SpectralField { grid, data: a })?;
                let b = &lin(&self.e_half, u) + &n2.n_hat.data.mapv(|v| v * (0.5 * dt));
                let n3 = eval(&SpectralField { grid, data: b })?;
                let c = &lin(&self.e_full, u)
                    + &lin(&self.e_half, &n3.n_hat.data).mapv(|v| v * dt);
                let n4 = eval(&SpectralField { grid, data: c })?;
                let mut out = lin(&self.e_full, u);
                let w1 = lin(&self.e_full, &n1.n_hat.data);
                let w23 = lin(&self.e_half, &(&n2.n_hat.data + &n3.n_hat.data));
                ndarray::Zip::from(&mut out)
                    .and(&w1)
                    .and(&w23)
                    .and(&n4.n_hat.data)
                    .for_each(|o, &a, &b, &c| {
                        *o += (a + b * 2.0 + c) * (dt / 6.0);
                    });
                out
            }
            Stepper::Etdrk4 => {
                let u = &omega_hat.data;
                let a = &lin(&self.e_half, u) + &lin(&self.q, &n1.n_hat.data);
                let na = eval(&SpectralField { grid, data: a.clone() })?;
                let b = &lin(&self.e_half, u) + &lin(&self.q, &na.n_hat.data);
                let nb = eval(&SpectralField { grid, data: b })?;
                let cc = &lin(&self.e_half, &a)
                    + &lin(
                        &self.q,
                        &(&nb.n_hat.data.mapv(|v| v * 2.0) - &n1.n_hat.data),
                    );
                let nc = eval(&SpectralField { grid, data: cc })?;
                let mut out = lin(&self.e_full, u);
                out += &lin(&self.f1, &n1.n_hat.data);
                out += &lin(&self.f2, &(&na.n_hat.data + &nb.n_hat.data));
                out += &lin(&self.f3, &nc.n_hat.data);
                out
            }
        };
        Ok((SpectralField { grid, data }, n1.u_max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{self, SpaceTimePoint};
    use crate::multi_index::MultiIndex;
    use approx::assert_relative_eq;

    #[test]
    fn phi_functions_match_definitions() {
        // direct formulas are trustworthy oracles away from 0
        for &z in &[-3.0f64, -0.7, -0.49, -0.05] {
            assert_relative_eq!(phi1(z), (z.exp() - 1.0) / z, max_relative = 1e-9);
            assert_relative_eq!(phi2(z), (z.exp() - 1.0 - z) / (z * z), max_relative = 1e-7);
            assert_relative_eq!(
                phi3(z),
                (z.exp() - 1.0 - z - 0.5 * z * z) / (z * z * z),
                max_relative = 1e-5
            );
        }
        // near zero compare with leading Taylor terms
        let z = -1e-9;
        assert_relative_eq!(phi1(z), 1.0 + z / 2.0, max_relative = 1e-14);
        assert_relative_eq!(phi2(z), 0.5 + z / 6.0, max_relative = 1e-14);
        assert_relative_eq!(phi3(z), 1.0 / 6.0 + z / 24.0, max_relative = 1e-14);
    }

    #[test]
    fn heat_flow_is_exact_without_advection() {
        let grid = GridSpec::new(64, 12.0).unwrap();
        let omega = ScalarField::from_fn(grid, |x| {
            kernels::gauss_deriv(MultiIndex::new(1, 1), SpaceTimePoint::new(0.5, x)).unwrap()
        });
        let mut cfg = SolverConfig::new(grid, 0.05, 1.0);
        cfg.advection = false;
        for stepper in [Stepper::ImexIntegratingFactor, Stepper::Etdrk4] {
            cfg.stepper = stepper;
            let tables = StepperTables::new(grid, cfg.dt, stepper);
            let mut state = to_spectral(&omega);
            let steps = 8;
            for _ in 0..steps {
                state = tables.step(&state, &cfg).unwrap().0;
            }
            // compare against the exact heat multiplier over the same modes
            let exact = to_spectral(&omega).multiplier(|k1, k2| {
                num_complex::Complex64::new(
                    (-(k1 * k1 + k2 * k2) * cfg.dt * steps as f64).exp(),
                    0.0,
                )
            });
            let mut worst = 0.0f64;
            for (a, b) in state.data.iter().zip(exact.data.iter()) {
                worst = worst.max((a - b).norm());
            }
            assert!(worst < 1e-13, "{stepper:?} heat error {worst}");
        }
    }

    #[test]
    fn single_step_conserves_mean_exactly() {
        let grid = GridSpec::new(64, 16.0).unwrap();
        let omega = ScalarField::from_fn(grid, |x| {
            0.05 * kernels::gauss_deriv(MultiIndex::new(2, 0), SpaceTimePoint::new(0.4, x)).unwrap()
        });
        let tables = StepperTables::new(grid, 0.01, Stepper::ImexIntegratingFactor);
        let cfg = SolverConfig::new(grid, 0.01, 0.01);
        let state = to_spectral(&omega);
        let before = state.data[[0, 0]];
        let after = tables.step(&state, &cfg).unwrap().0.data[[0, 0]];
        assert!((before - after).norm() < 1e-16);
    }

    #[test]
    fn cfl_violation_reports_suggested_dt() {
        let grid = GridSpec::new(32, 4.0).unwrap();
        // big amplitude so max|u| is large
        let omega = ScalarField::from_fn(grid, |x| {
            1e4 * kernels::gauss_deriv(MultiIndex::new(1, 0), SpaceTimePoint::new(0.1, x)).unwrap()
        });
        let tables = StepperTables::new(grid, 1.0, Stepper::ImexIntegratingFactor);
        let cfg = SolverConfig::new(grid, 1.0, 1.0);
        match tables.step(&to_spectral(&omega), &cfg) {
            Err(Error::Cfl { suggested, .. }) => assert!(suggested > 0.0),
            other => panic!("expected CFL error, got {other:?}"),
        }
    }
}
