//! Grid data model, spectral transforms, Biot-Savart inversion, weighted
//! norms and moment functionals.

pub mod fft;
pub mod field;
pub mod grid;
pub mod norms;

pub use field::{
    biot_savart_spectral, biot_savart_velocity, curl, divergence, from_spectral, to_spectral,
    ScalarField, SpectralField, VectorField,
};
pub use grid::GridSpec;
pub use norms::{
    grid_convergence_defect, is_grid_converged, moment, pointwise_product, shell_fraction,
    vector_moment, weighted_norm, weighted_norm_with, GridSampled, Lq,
};
