//! Moment history of the vorticity flux and the coefficient table feeding
//! the expansion profiles.
//!
//! Per step the solver records `P_beta(s) = integral (-y)^beta (omega u)(s,y) dy`
//! for `|beta| <= 4`. The table then carries
//!
//! * `S(l, beta; t) = integral_0^t (-s)^l P_beta(s) ds` (trapezoid),
//! * order-3 renormalized variants with `omega u` replaced by
//!   `omega u - I_5(1+s)`, and
//! * order-4 variants with `omega u - I_5(s) - I_6(1+s)`,
//!
//! where the subtracted profile moments reduce through the scaling identity
//! `integral (-y)^beta I_p(s,y) dy = s^{(|beta|-p)/2} M_beta(I_p)` to
//! power-law time integrals that are integrated in closed form. The
//! unrenormalized order-3 integrand diverges logarithmically; the subtraction
//! is what makes the horizon limits finite.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fields::{moment, ScalarField};
use crate::multi_index::{time_space_of_order, up_to_order, MultiIndex};

/// Highest `2l + |beta|` tracked for the flux moments.
pub const MAX_FLUX_ORDER: u32 = 4;

/// Per-step record of flux moments.
#[derive(Debug, Clone, Default)]
pub struct MomentHistory {
    pub times: Vec<f64>,
    pub betas: Vec<MultiIndex>,
    /// `series[b][step]` = `P_{betas[b]}(times[step])`, both components.
    pub series: Vec<Vec<[f64; 2]>>,
}

impl MomentHistory {
    pub fn new() -> Self {
        let betas = up_to_order(MAX_FLUX_ORDER);
        let series = vec![Vec::new(); betas.len()];
        Self {
            times: Vec::new(),
            betas,
            series,
        }
    }

    pub fn record(&mut self, t: f64, values: &[[f64; 2]]) {
        debug_assert_eq!(values.len(), self.betas.len());
        self.times.push(t);
        for (s, v) in self.series.iter_mut().zip(values) {
            s.push(*v);
        }
    }

    pub fn beta_index(&self, beta: MultiIndex) -> Result<usize> {
        self.betas
            .iter()
            .position(|b| *b == beta)
            .ok_or_else(|| Error::Dependency(format!("flux moment {beta} not recorded")))
    }

    /// `(-s)^l P_beta(s)` sampled on the step grid.
    pub fn integrand(&self, l: u32, beta: MultiIndex) -> Result<Vec<[f64; 2]>> {
        let b = self.beta_index(beta)?;
        Ok(self
            .times
            .iter()
            .zip(&self.series[b])
            .map(|(&s, p)| {
                let w = (-s).powi(l as i32);
                [w * p[0], w * p[1]]
            })
            .collect())
    }

    /// Cumulative trapezoid of `(-s)^l P_beta(s)`.
    pub fn cumulative(&self, l: u32, beta: MultiIndex) -> Result<Vec<[f64; 2]>> {
        let f = self.integrand(l, beta)?;
        Ok(cumulative_trapezoid(&self.times, &f))
    }

    /// Cumulative composite Simpson (odd tail by trapezoid); an independent
    /// quadrature route for cross-checking coefficients.
    pub fn cumulative_simpson(&self, l: u32, beta: MultiIndex) -> Result<Vec<[f64; 2]>> {
        let f = self.integrand(l, beta)?;
        let t = &self.times;
        let mut out = vec![[0.0, 0.0]; f.len()];
        for i in 1..f.len() {
            if i % 2 == 0 {
                let (h1, h2) = (t[i - 1] - t[i - 2], t[i] - t[i - 1]);
                for c in 0..2 {
                    // nonuniform Simpson weights
                    let (a, b, cc) = (
                        (2.0 * h1 - h2) * (h1 + h2) / (6.0 * h1),
                        (h1 + h2).powi(3) / (6.0 * h1 * h2),
                        (2.0 * h2 - h1) * (h1 + h2) / (6.0 * h2),
                    );
                    out[i][c] = out[i - 2][c]
                        + a * f[i - 2][c]
                        + b * f[i - 1][c]
                        + cc * f[i][c];
                }
            } else {
                for c in 0..2 {
                    out[i][c] =
                        out[i - 1][c] + 0.5 * (t[i] - t[i - 1]) * (f[i - 1][c] + f[i][c]);
                }
            }
        }
        Ok(out)
    }
}

pub fn cumulative_trapezoid(times: &[f64], f: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut out = vec![[0.0, 0.0]; f.len()];
    for i in 1..f.len() {
        let h = times[i] - times[i - 1];
        for c in 0..2 {
            out[i][c] = out[i - 1][c] + 0.5 * h * (f[i - 1][c] + f[i][c]);
        }
    }
    out
}

/// Closed forms of the subtraction integrals.
pub mod time_integrals {
    /// `integral_0^t (1+s)^{-1} ds`
    pub fn log1p(t: f64) -> f64 {
        t.ln_1p()
    }
    /// `integral_0^t s (1+s)^{-2} ds`
    pub fn s_over_1p2(t: f64) -> f64 {
        t.ln_1p() + 1.0 / (1.0 + t) - 1.0
    }
    /// `integral_0^t s^2 (1+s)^{-3} ds`
    pub fn s2_over_1p3(t: f64) -> f64 {
        t.ln_1p() + 2.0 / (1.0 + t) - 0.5 / ((1.0 + t) * (1.0 + t)) - 1.5
    }
    /// `integral_0^t s^l (1+s)^{(|beta|-p)/2} ds` for the tracked cases.
    pub fn shifted(l: u32, exponent_half: i32, t: f64) -> f64 {
        match (l, exponent_half) {
            (0, -2) => log1p(t),
            (1, -4) => s_over_1p2(t),
            (2, -6) => s2_over_1p3(t),
            _ => unreachable!("untracked shifted integral l={l}, 2e={exponent_half}"),
        }
    }
    /// `integral_0^t s^{e} ds` for `e > -1`.
    pub fn plain_power(e: f64, t: f64) -> f64 {
        t.powf(e + 1.0) / (e + 1.0)
    }
}

/// Unit-time profile moments `M_beta(I_p) = integral (-y)^beta I_p(1,y) dy`.
pub type ProfileMoments = BTreeMap<MultiIndex, [f64; 2]>;

/// Coefficient table: initial moments plus raw and renormalized flux
/// integrals on the step grid.
#[derive(Debug, Clone)]
pub struct MomentTable {
    pub initial: BTreeMap<MultiIndex, f64>,
    pub times: Vec<f64>,
    pub raw: BTreeMap<(u32, MultiIndex), Vec<[f64; 2]>>,
    pub ren3: BTreeMap<(u32, MultiIndex), Vec<[f64; 2]>>,
    pub ren4: BTreeMap<(u32, MultiIndex), Vec<[f64; 2]>>,
}

impl MomentTable {
    /// Pass 1: raw cumulative integrals and initial moments.
    pub fn from_history(omega0: &ScalarField, history: &MomentHistory) -> Result<Self> {
        let mut initial = BTreeMap::new();
        for alpha in up_to_order(7) {
            initial.insert(alpha, moment(omega0, alpha)?);
        }
        let mut raw = BTreeMap::new();
        for order in 0..=MAX_FLUX_ORDER {
            for (l, beta) in time_space_of_order(order) {
                raw.insert((l, beta), history.cumulative(l, beta)?);
            }
        }
        Ok(Self {
            initial,
            times: history.times.clone(),
            raw,
            ren3: BTreeMap::new(),
            ren4: BTreeMap::new(),
        })
    }

    /// Pass 2: renormalized integrals, with the profile-moment parts
    /// integrated in closed form. `S(l, beta; 0) = 0` stays exact.
    pub fn renormalize(&mut self, i5: &ProfileMoments, i6: &ProfileMoments) -> Result<()> {
        let m5 = |beta: MultiIndex| -> Result<[f64; 2]> {
            i5.get(&beta)
                .copied()
                .ok_or_else(|| Error::Dependency(format!("I5 moment {beta} missing")))
        };
        let m6 = |beta: MultiIndex| -> Result<[f64; 2]> {
            i6.get(&beta)
                .copied()
                .ok_or_else(|| Error::Dependency(format!("I6 moment {beta} missing")))
        };
        // order 3: subtract I_5(1+s); exponent (|beta|-5)/2 with 2l+|beta|=3
        for (l, beta) in time_space_of_order(3) {
            let raw = self
                .raw
                .get(&(l, beta))
                .ok_or_else(|| Error::Dependency("raw S missing".into()))?;
            let m = m5(beta)?;
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            let series: Vec<[f64; 2]> = self
                .times
                .iter()
                .zip(raw)
                .map(|(&t, s)| {
                    let a = sign * time_integrals::shifted(l, beta.order() as i32 - 5, t);
                    [s[0] - a * m[0], s[1] - a * m[1]]
                })
                .collect();
            self.ren3.insert((l, beta), series);
        }
        // order 4: subtract I_5(s) + I_6(1+s); the I_5 part integrates to
        // 2 sqrt(t) times the sign, the I_6 part is a shifted closed form.
        for (l, beta) in time_space_of_order(4) {
            let raw = self
                .raw
                .get(&(l, beta))
                .ok_or_else(|| Error::Dependency("raw S missing".into()))?;
            let a5 = m5(beta)?;
            let a6 = m6(beta)?;
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            let e5 = l as f64 + (beta.order() as f64 - 5.0) / 2.0; // = -1/2
            let series: Vec<[f64; 2]> = self
                .times
                .iter()
                .zip(raw)
                .map(|(&t, s)| {
                    let p5 = sign * time_integrals::plain_power(e5, t);
                    let p6 = sign * time_integrals::shifted(l, beta.order() as i32 - 6, t);
                    [
                        s[0] - p5 * a5[0] - p6 * a6[0],
                        s[1] - p5 * a5[1] - p6 * a6[1],
                    ]
                })
                .collect();
            self.ren4.insert((l, beta), series);
        }
        Ok(())
    }

    fn lookup<'a>(
        map: &'a BTreeMap<(u32, MultiIndex), Vec<[f64; 2]>>,
        l: u32,
        beta: MultiIndex,
        what: &str,
    ) -> Result<&'a Vec<[f64; 2]>> {
        map.get(&(l, beta))
            .ok_or_else(|| Error::Dependency(format!("{what}({l},{beta}) not available")))
    }

    fn interp_at(times: &[f64], series: &[[f64; 2]], t: f64) -> Result<[f64; 2]> {
        if times.is_empty() {
            return Err(Error::Dependency("empty moment table".into()));
        }
        let t_end = *times.last().unwrap();
        if t < times[0] - 1e-12 || t > t_end + 1e-9 {
            return Err(Error::Dependency(format!(
                "time {t} outside recorded range [{}, {}]",
                times[0], t_end
            )));
        }
        let t = t.min(t_end);
        let i = times.partition_point(|&x| x <= t);
        if i == 0 {
            return Ok(series[0]);
        }
        if i >= times.len() {
            return Ok(*series.last().unwrap());
        }
        let (t0, t1) = (times[i - 1], times[i]);
        let w = if t1 > t0 { (t - t0) / (t1 - t0) } else { 0.0 };
        Ok([
            series[i - 1][0] * (1.0 - w) + series[i][0] * w,
            series[i - 1][1] * (1.0 - w) + series[i][1] * w,
        ])
    }

    /// Raw `S(l, beta; t)`.
    pub fn s_at(&self, l: u32, beta: MultiIndex, t: f64) -> Result<[f64; 2]> {
        Self::interp_at(&self.times, Self::lookup(&self.raw, l, beta, "S")?, t)
    }

    /// Order-3 renormalized coefficient at horizon `t`.
    pub fn ren3_at(&self, l: u32, beta: MultiIndex, t: f64) -> Result<[f64; 2]> {
        Self::interp_at(&self.times, Self::lookup(&self.ren3, l, beta, "ren3")?, t)
    }

    /// Order-4 renormalized coefficient at horizon `t`.
    pub fn ren4_at(&self, l: u32, beta: MultiIndex, t: f64) -> Result<[f64; 2]> {
        Self::interp_at(&self.times, Self::lookup(&self.ren4, l, beta, "ren4")?, t)
    }

    pub fn horizon(&self) -> f64 {
        self.times.last().copied().unwrap_or(0.0)
    }

    pub fn initial_moment(&self, alpha: MultiIndex) -> Result<f64> {
        self.initial
            .get(&alpha)
            .copied()
            .ok_or_else(|| Error::Dependency(format!("initial moment {alpha} missing")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn closed_form_time_integrals_match_quadrature() {
        let quad = |f: &dyn Fn(f64) -> f64, t: f64| {
            let n = 200_000;
            let h = t / n as f64;
            let mut s = 0.5 * (f(0.0) + f(t));
            for i in 1..n {
                s += f(i as f64 * h);
            }
            s * h
        };
        for &t in &[0.3, 1.0, 7.5] {
            assert_relative_eq!(
                time_integrals::log1p(t),
                quad(&|s| 1.0 / (1.0 + s), t),
                max_relative = 1e-9
            );
            assert_relative_eq!(
                time_integrals::s_over_1p2(t),
                quad(&|s| s / (1.0 + s).powi(2), t),
                max_relative = 1e-8
            );
            assert_relative_eq!(
                time_integrals::s2_over_1p3(t),
                quad(&|s| s * s / (1.0 + s).powi(3), t),
                max_relative = 1e-8
            );
            assert_relative_eq!(
                time_integrals::plain_power(-0.5, t),
                2.0 * t.sqrt(),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn cumulative_trapezoid_linear_exact() {
        let times: Vec<f64> = (0..11).map(|i| i as f64 * 0.1).collect();
        let f: Vec<[f64; 2]> = times.iter().map(|&t| [2.0 * t, 1.0]).collect();
        let c = cumulative_trapezoid(&times, &f);
        assert_relative_eq!(c[10][0], 1.0, max_relative = 1e-12); // integral 2s ds = t^2
        assert_relative_eq!(c[10][1], 1.0, max_relative = 1e-12);
    }

    #[test]
    fn history_integrand_signs() {
        let mut h = MomentHistory::new();
        h.record(0.0, &vec![[1.0, 2.0]; h.betas.len()]);
        h.record(1.0, &vec![[1.0, 2.0]; h.betas.len()]);
        let f = h.integrand(1, MultiIndex::new(1, 0)).unwrap();
        assert_eq!(f[1], [-1.0, -2.0]); // (-s)^1 at s=1
        let c = h.cumulative(0, MultiIndex::ZERO).unwrap();
        assert_eq!(c[0], [0.0, 0.0]);
        assert_relative_eq!(c[1][0], 1.0);
    }
}
