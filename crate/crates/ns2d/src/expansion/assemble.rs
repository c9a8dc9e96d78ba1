//! Theorem-specific assemblies and residuals.

use super::coeffs::ExpansionCoefficients;
use super::jterm::{build_j_m, JOptions};
use super::profiles::{build_k_m, build_u_m, build_u_m_inf, build_u_m_t, build_v_m};
use crate::error::{Error, Result};
use crate::fields::{GridSpec, VectorField};

/// Which approximation of the velocity to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `sum_{m=1}^2 (U_m + U_m^inf)`
    PropLowT,
    /// `sum_{m=1}^2 (U_m + U_m^t)`
    PropLowS,
    /// `sum_{m=1}^4 (U_m + U_m^t) + sum_{m=3}^4 (K_m + J_m)`
    ThmSt,
    /// `sum_{m=1}^4 (U_m + U_m^inf) + sum_{m=3}^4 (K_m + J_m + V_m)`
    ThmT,
}

impl Variant {
    pub fn label(&self) -> &'static str {
        match self {
            Variant::PropLowT => "prop_lowt",
            Variant::PropLowS => "prop_lows",
            Variant::ThmSt => "thm_st",
            Variant::ThmT => "thm_t",
        }
    }

    pub fn parse(s: &str) -> Result<Variant> {
        match s {
            "prop_lowt" => Ok(Variant::PropLowT),
            "prop_lows" => Ok(Variant::PropLowS),
            "thm_st" => Ok(Variant::ThmSt),
            "thm_t" => Ok(Variant::ThmT),
            other => Err(Error::Config(format!("unknown variant '{other}'"))),
        }
    }

    pub fn all() -> [Variant; 4] {
        [
            Variant::PropLowT,
            Variant::PropLowS,
            Variant::ThmSt,
            Variant::ThmT,
        ]
    }
}

/// Build the assembled approximation at time `t`.
pub fn assemble(
    c: &ExpansionCoefficients,
    variant: Variant,
    t: f64,
    grid: GridSpec,
    jopts: JOptions,
) -> Result<VectorField> {
    let mut acc = VectorField::zeros(grid);
    match variant {
        Variant::PropLowT => {
            for m in 1..=2 {
                acc = acc.add(&build_u_m(c, m, t, grid)?)?;
                acc = acc.add(&build_u_m_inf(c, m, t, grid)?.field)?;
            }
        }
        Variant::PropLowS => {
            for m in 1..=2 {
                acc = acc.add(&build_u_m(c, m, t, grid)?)?;
                acc = acc.add(&build_u_m_t(c, m, t, grid)?)?;
            }
        }
        Variant::ThmSt => {
            for m in 1..=4 {
                acc = acc.add(&build_u_m(c, m, t, grid)?)?;
                acc = acc.add(&build_u_m_t(c, m, t, grid)?)?;
            }
            for m in 3..=4 {
                acc = acc.add(&build_k_m(c, m, t, grid)?)?;
                acc = acc.add(&build_j_m(c, m, t, grid, jopts)?.field)?;
            }
        }
        Variant::ThmT => {
            for m in 1..=4 {
                acc = acc.add(&build_u_m(c, m, t, grid)?)?;
                acc = acc.add(&build_u_m_inf(c, m, t, grid)?.field)?;
            }
            for m in 3..=4 {
                acc = acc.add(&build_k_m(c, m, t, grid)?)?;
                acc = acc.add(&build_j_m(c, m, t, grid, jopts)?.field)?;
                acc = acc.add(&build_v_m(c, m, t, grid)?.field)?;
            }
        }
    }
    Ok(acc)
}

/// `u - approx`, fed to the weighted norms.
pub fn residual(u: &VectorField, approx: &VectorField) -> Result<VectorField> {
    u.sub(approx)
}
