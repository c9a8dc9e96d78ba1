//! Pseudo-spectral time integration of the vorticity equation
//! `d_t omega + u . grad omega = Laplacian omega` with Biot-Savart coupling,
//! trajectory recording and moment-history accumulation.

pub mod initial;
pub mod moments;
pub mod run;
pub mod stepper;

pub use initial::{
    fourth_moment_killed, make_initial_vorticity, InitialDataSpec, PolyModulation, Shape,
};
pub use moments::{MomentHistory, MomentTable, ProfileMoments, MAX_FLUX_ORDER};
pub use run::{moment_table, run, StepDiagnostics, Trajectory};
pub use stepper::{nonlinear_term, SolverConfig, Stepper, StepperTables};
