//! Pseudo-spectral solver for the 2D incompressible Navier-Stokes equations in
//! vorticity form, together with closed-form evaluators for the heat,
//! Biot-Savart and Riesz-tensor kernels, construction of the far-field
//! asymptotic profiles of the velocity, and a verification harness that fits
//! decay exponents and log factors of residual norms.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! initial data -> solver (trajectory + moment history)
//!              -> expansion (profile terms U_m, U_m^t, U_m^inf, Omega_m,
//!                            I_p, K_m, J_m, V_m and theorem assemblies)
//!              -> verify (scaling identities, rate fits, reports)
//! ```
//!
//! Grid work is data-parallel via `rayon` when the `parallel` feature (on by
//! default) is enabled; disabling it yields a sequential build with identical
//! results.

pub mod error;
pub mod expansion;
pub mod fields;
pub mod io;
pub mod kernels;
pub mod multi_index;
pub mod par;
pub mod solver;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
pub use multi_index::MultiIndex;
