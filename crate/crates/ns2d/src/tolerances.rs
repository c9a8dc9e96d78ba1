//! Central registry of the numeric thresholds used across the crate.
//!
//! Pipelines dump [`all`] into their run `meta` file so that no tolerance is
//! applied silently.

/// Switch to the power series of `(1 - e^{-rho})/rho` and its derivatives.
pub const RADIAL_SERIES_RHO: f64 = 1.0;
/// Fourier-oracle integration radius: `e^{-t R^2}` below this bound.
pub const ORACLE_TAIL: f64 = 1e-14;
/// Default relative tolerance requested from the Fourier oracle.
pub const ORACLE_RTOL: f64 = 1e-9;
/// Mean-vorticity magnitude above which Biot-Savart inversion refuses.
pub const BS_MEAN_TOL: f64 = 1e-10;
/// Far-field floor for initial data at the box boundary.
pub const INITIAL_FLOOR: f64 = 1e-12;
/// Default far-field floor for the running solution at the box edge.
pub const RUN_FLOOR: f64 = 1e-9;
/// Moment-vanishing tolerance for orders <= 1 of the initial vorticity.
pub const MOMENT_TOL: f64 = 1e-10;
/// Advective CFL safety factor: `dt <= CFL_SAFETY * h / max|u|`.
pub const CFL_SAFETY: f64 = 0.5;
/// Weighted norms with `mu >= MU_SUBBOX_THRESHOLD` integrate over
/// `|x| <= SUBBOX_FRACTION * L` only.
pub const MU_SUBBOX_THRESHOLD: f64 = 4.0;
pub const SUBBOX_FRACTION: f64 = 0.9;
/// Grid-convergence guard: reported norms must move less than this relative
/// amount under `n -> 2n`.
pub const GRID_CONVERGENCE_REL: f64 = 5e-3;
/// Default `epsilon_0 = t / JM_EPS0_DIVISOR` for the J_m lower cutoff.
pub const JM_EPS0_DIVISOR: f64 = 64.0;
/// Gauss-Legendre nodes per dyadic panel in the J_m quadrature.
pub const JM_NODES_PER_PANEL: usize = 4;
/// Tail uncertainty above this fraction of a coefficient raises a warning.
pub const TAIL_WARN_FRACTION: f64 = 0.1;
/// Scaling-identity thresholds: kernel-exact kinds and quadrature kinds.
pub const SCALING_EXACT_TOL: f64 = 1e-9;
pub const SCALING_QUAD_TOL: f64 = 1e-6;
/// Default exponent-fit tolerances (generic and low-order claims).
pub const FIT_TOL: f64 = 0.25;
pub const FIT_TOL_LOW_ORDER: f64 = 0.15;
/// Residual norms within this factor of the noise floor are inconclusive.
pub const NOISE_FLOOR_FACTOR: f64 = 10.0;
/// Fraction of a weighted norm allowed to come from the outer shell of the
/// sub-box before the value is considered truncation-dominated.
pub const SHELL_FRACTION: f64 = 0.3;
/// Absolute floor below which residual norms are treated as numerical noise.
pub const ABSOLUTE_FLOOR: f64 = 1e-13;
/// Fit windows start at `max(t_max / FIT_WINDOW_DIVISOR, FIT_T_MIN)`.
pub const FIT_WINDOW_DIVISOR: f64 = 16.0;
/// Log-factor fits need `log t` bounded away from zero.
pub const FIT_T_MIN: f64 = 1.5;
/// Validity window: `t_max <= (L / VALID_WINDOW_DIVISOR)^2`.
pub const VALID_WINDOW_DIVISOR: f64 = 8.0;

/// Every named tolerance with its value, for `meta` emission.
pub fn all() -> Vec<(&'static str, f64)> {
    vec![
        ("radial_series_rho", RADIAL_SERIES_RHO),
        ("oracle_tail", ORACLE_TAIL),
        ("oracle_rtol", ORACLE_RTOL),
        ("bs_mean_tol", BS_MEAN_TOL),
        ("initial_floor", INITIAL_FLOOR),
        ("run_floor", RUN_FLOOR),
        ("moment_tol", MOMENT_TOL),
        ("cfl_safety", CFL_SAFETY),
        ("mu_subbox_threshold", MU_SUBBOX_THRESHOLD),
        ("subbox_fraction", SUBBOX_FRACTION),
        ("grid_convergence_rel", GRID_CONVERGENCE_REL),
        ("jm_eps0_divisor", JM_EPS0_DIVISOR),
        ("jm_nodes_per_panel", JM_NODES_PER_PANEL as f64),
        ("tail_warn_fraction", TAIL_WARN_FRACTION),
        ("scaling_exact_tol", SCALING_EXACT_TOL),
        ("scaling_quad_tol", SCALING_QUAD_TOL),
        ("fit_tol", FIT_TOL),
        ("fit_tol_low_order", FIT_TOL_LOW_ORDER),
        ("noise_floor_factor", NOISE_FLOOR_FACTOR),
        ("shell_fraction", SHELL_FRACTION),
        ("absolute_floor", ABSOLUTE_FLOOR),
        ("fit_window_divisor", FIT_WINDOW_DIVISOR),
        ("fit_t_min", FIT_T_MIN),
        ("valid_window_divisor", VALID_WINDOW_DIVISOR),
    ]
}
