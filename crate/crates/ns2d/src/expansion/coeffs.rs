//! Expansion coefficients: initial moments, finite-horizon flux integrals,
//! infinite-horizon estimates with explicit tail envelopes, and the unit-time
//! moments of the renormalization profiles I_5 and I_6.

use std::collections::BTreeMap;

use super::profiles;
use crate::error::{Error, Result};
use crate::fields::{vector_moment, GridSpec};
use crate::multi_index::{time_space_of_order, up_to_order, MultiIndex};
use crate::solver::{MomentTable, ProfileMoments, Trajectory};

/// Infinite-horizon coefficient: value at `t = T_max` plus a tail envelope
/// from the theoretical late-time power of the integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfEntry {
    pub value: [f64; 2],
    pub tail: f64,
}

impl InfEntry {
    pub fn magnitude(&self) -> f64 {
        self.value[0].hypot(self.value[1])
    }

    /// Tail exceeding a tenth of the coefficient is flagged.
    pub fn warn(&self) -> bool {
        self.tail > crate::tolerances::TAIL_WARN_FRACTION * self.magnitude().max(1e-300)
    }
}

#[derive(Debug, Clone)]
pub struct ExpansionCoefficients {
    pub table: MomentTable,
    pub t_horizon: f64,
    /// Plain `S_inf(0, beta)` for `|beta| = 1, 2`.
    pub s_inf: BTreeMap<(u32, MultiIndex), InfEntry>,
    /// Renormalized horizon limits at orders 3 and 4.
    pub ren3_inf: BTreeMap<(u32, MultiIndex), InfEntry>,
    pub ren4_inf: BTreeMap<(u32, MultiIndex), InfEntry>,
    /// `M_beta(I_p) = integral (-y)^beta I_p(1,y) dy`, `|beta| <= 5`.
    pub i5_moments: ProfileMoments,
    pub i6_moments: ProfileMoments,
}

impl ExpansionCoefficients {
    pub fn initial_moment(&self, alpha: MultiIndex) -> Result<f64> {
        self.table.initial_moment(alpha)
    }

    pub fn s_inf_entry(&self, l: u32, beta: MultiIndex) -> Result<InfEntry> {
        self.s_inf
            .get(&(l, beta))
            .copied()
            .ok_or_else(|| Error::Dependency(format!("S_inf({l},{beta}) not available")))
    }

    pub fn ren3_inf_entry(&self, l: u32, beta: MultiIndex) -> Result<InfEntry> {
        self.ren3_inf
            .get(&(l, beta))
            .copied()
            .ok_or_else(|| Error::Dependency(format!("ren3_inf({l},{beta}) not available")))
    }

    pub fn ren4_inf_entry(&self, l: u32, beta: MultiIndex) -> Result<InfEntry> {
        self.ren4_inf
            .get(&(l, beta))
            .copied()
            .ok_or_else(|| Error::Dependency(format!("ren4_inf({l},{beta}) not available")))
    }

    pub fn i_moment(&self, p: u32, beta: MultiIndex) -> Result<[f64; 2]> {
        let map = match p {
            5 => &self.i5_moments,
            6 => &self.i6_moments,
            _ => return Err(Error::Dependency(format!("no profile I_{p}"))),
        };
        map.get(&beta)
            .copied()
            .ok_or_else(|| Error::Dependency(format!("I_{p} moment {beta} missing")))
    }

    /// Largest relative tail among the horizon coefficients entering `I_p`;
    /// propagated as the uncertainty of profile-moment-based terms.
    pub fn i_moment_rel_tail(&self) -> f64 {
        self.s_inf
            .values()
            .map(|e| e.tail / e.magnitude().max(1e-300))
            .fold(0.0, f64::max)
    }
}

/// Envelope-fit tail of `integral_T^inf g(s) ds` given samples of `g` and the
/// theoretical power `theta < -1`: `c = sup_{s >= T/2} |g| s^{-theta}`,
/// `tail = c T^{theta+1} / |theta+1|`.
fn tail_envelope(times: &[f64], g: &[[f64; 2]], theta: f64) -> f64 {
    let t_end = times.last().copied().unwrap_or(0.0);
    if t_end <= 0.0 {
        return 0.0;
    }
    let mut c = 0.0f64;
    for (&s, v) in times.iter().zip(g) {
        if s >= 0.5 * t_end && s > 0.0 {
            c = c.max(v[0].hypot(v[1]) * s.powf(-theta));
        }
    }
    c * t_end.powf(theta + 1.0) / (theta + 1.0).abs()
}

/// Two-pass coefficient construction from a finished trajectory.
///
/// Pass 1 yields the raw table and the order-1/2 horizon entries; the
/// renormalization profiles are then built at unit time on `profile_grid`,
/// their moments feed pass 2 (renormalized series and horizon limits).
pub fn build_coefficients(
    omega0: &crate::fields::ScalarField,
    traj: &Trajectory,
    profile_grid: GridSpec,
) -> Result<ExpansionCoefficients> {
    let mut table = MomentTable::from_history(omega0, &traj.history)?;
    let t_horizon = table.horizon();
    if t_horizon <= 0.0 {
        return Err(Error::Dependency("trajectory has no time extent".into()));
    }

    // plain horizon entries: integrand (-s)^l P_beta decays like
    // s^{(2l+|beta|-5)/2} for orders 1 and 2
    let mut s_inf = BTreeMap::new();
    for order in 1..=2u32 {
        for (l, beta) in time_space_of_order(order) {
            let g = traj.history.integrand(l, beta)?;
            let theta = (2.0 * l as f64 + beta.order() as f64 - 5.0) / 2.0;
            let value = *table
                .raw
                .get(&(l, beta))
                .and_then(|s| s.last())
                .ok_or_else(|| Error::Dependency("raw series empty".into()))?;
            s_inf.insert(
                (l, beta),
                InfEntry {
                    value,
                    tail: tail_envelope(&traj.history.times, &g, theta),
                },
            );
        }
    }

    let mut coeffs = ExpansionCoefficients {
        table,
        t_horizon,
        s_inf,
        ren3_inf: BTreeMap::new(),
        ren4_inf: BTreeMap::new(),
        i5_moments: ProfileMoments::new(),
        i6_moments: ProfileMoments::new(),
    };

    // unit-time renormalization profiles and their moments
    let i5 = profiles::build_i_p(&coeffs, 5, 1.0, profile_grid)?;
    let i6 = profiles::build_i_p(&coeffs, 6, 1.0, profile_grid)?;
    for beta in up_to_order(5) {
        coeffs.i5_moments.insert(beta, vector_moment(&i5, beta)?);
        coeffs.i6_moments.insert(beta, vector_moment(&i6, beta)?);
    }

    coeffs
        .table
        .renormalize(&coeffs.i5_moments, &coeffs.i6_moments)?;

    // renormalized horizon entries; integrands decay like s^{-3/2} (up to a
    // log at order 4, absorbed by the envelope constant)
    let times = coeffs.table.times.clone();
    for (l, beta) in time_space_of_order(3) {
        let series = coeffs.table.ren3.get(&(l, beta)).unwrap().clone();
        let g = renorm_integrand(&times, traj, l, beta, 3, &coeffs)?;
        coeffs.ren3_inf.insert(
            (l, beta),
            InfEntry {
                value: *series.last().unwrap(),
                tail: tail_envelope(&times, &g, -1.5),
            },
        );
    }
    for (l, beta) in time_space_of_order(4) {
        let series = coeffs.table.ren4.get(&(l, beta)).unwrap().clone();
        let g = renorm_integrand(&times, traj, l, beta, 4, &coeffs)?;
        coeffs.ren4_inf.insert(
            (l, beta),
            InfEntry {
                value: *series.last().unwrap(),
                tail: tail_envelope(&times, &g, -1.5),
            },
        );
    }
    Ok(coeffs)
}

/// Renormalized integrand samples (used only for tail envelopes, so the
/// `s = 0` singular sample of the order-4 subtraction is skipped).
fn renorm_integrand(
    times: &[f64],
    traj: &Trajectory,
    l: u32,
    beta: MultiIndex,
    order: u32,
    coeffs: &ExpansionCoefficients,
) -> Result<Vec<[f64; 2]>> {
    let p_series = traj.history.integrand(l, beta)?;
    let m5 = coeffs.i_moment(5, beta)?;
    let m6 = if order == 4 {
        coeffs.i_moment(6, beta)?
    } else {
        [0.0, 0.0]
    };
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    Ok(times
        .iter()
        .zip(p_series)
        .map(|(&s, p)| {
            if s == 0.0 {
                return [0.0, 0.0];
            }
            let sl = sign * s.powi(l as i32);
            match order {
                3 => {
                    let w = (1.0 + s).powf((beta.order() as f64 - 5.0) / 2.0);
                    [p[0] - sl * w * m5[0], p[1] - sl * w * m5[1]]
                }
                _ => {
                    let w5 = s.powf((beta.order() as f64 - 5.0) / 2.0);
                    let w6 = (1.0 + s).powf((beta.order() as f64 - 6.0) / 2.0);
                    [
                        p[0] - sl * (w5 * m5[0] + w6 * m6[0]),
                        p[1] - sl * (w5 * m5[1] + w6 * m6[1]),
                    ]
                }
            }
        })
        .collect())
}
