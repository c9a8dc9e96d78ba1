//! Asymptotic profile terms of the velocity expansion, their assembly into
//! theorem-level approximations, and residual construction.

pub mod assemble;
pub mod coeffs;
pub mod jterm;
pub mod profiles;

pub use assemble::{assemble, residual, Variant};
pub use coeffs::{build_coefficients, ExpansionCoefficients, InfEntry};
pub use jterm::{build_j_m, riesz_smoothed, JOptions, JTerm};
pub use profiles::{
    build_curl_of_u_sum, build_i_p, build_k_m, build_omega_m, build_u_m, build_u_m_inf,
    build_u_m_t, build_v_m, eval_i_p_point, eval_omega_m_point, eval_term_at_points, KernelStack,
    ProfileKind, VectorTerm,
};
