//! Exact symbolic representation of kernel closed forms.
//!
//! A [`KernelSum`] is a finite sum of terms
//!
//! ```text
//! (q / pi) * t^p * x1^{m1} x2^{m2} * R(rho),     rho = |x|^2 / 4t,
//! ```
//!
//! with `q` rational and `R` either `exp(-rho)` or a derivative
//! `phi^{(k)}(rho)` of `(1 - e^{-rho})/rho`. The family is closed under
//! `d/dx1`, `d/dx2` and (through the heat identity `d/dt = Laplacian`) under
//! time differentiation, with exact rational coefficients throughout. All
//! space/time derivatives of the heat, Biot-Savart and Riesz-tensor kernels
//! used by the expansion profiles are generated this way.

use num_rational::Ratio;
use std::f64::consts::PI;

use super::radial::phi_deriv;
use crate::multi_index::MultiIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Radial {
    /// `exp(-rho)`
    Gauss,
    /// `phi^{(k)}(rho)`
    Phi(u32),
}

impl Radial {
    fn eval(self, rho: f64) -> f64 {
        match self {
            Radial::Gauss => (-rho).exp(),
            Radial::Phi(k) => phi_deriv(k, rho),
        }
    }

    /// d/drho, as (factor, new radial).
    fn diff(self) -> (Ratio<i64>, Radial) {
        match self {
            Radial::Gauss => (Ratio::from_integer(-1), Radial::Gauss),
            Radial::Phi(k) => (Ratio::from_integer(1), Radial::Phi(k + 1)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Term {
    coef: Ratio<i64>,
    tpow: i32,
    xp: (u32, u32),
    radial: Radial,
}

/// A scalar kernel expression, exactly differentiable.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct KernelSum {
    terms: Vec<Term>,
}

impl KernelSum {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    fn single(coef: Ratio<i64>, tpow: i32, xp: (u32, u32), radial: Radial) -> Self {
        Self {
            terms: vec![Term {
                coef,
                tpow,
                xp,
                radial,
            }],
        }
    }

    /// The heat kernel `G(t,x) = (4 pi t)^{-1} e^{-|x|^2/4t}`.
    pub fn heat() -> Self {
        Self::single(Ratio::new(1, 4), -1, (0, 0), Radial::Gauss)
    }

    /// Component `i` of `grad^perp (-Delta)^{-1} G = (x2 g, -x1 g)` with
    /// `g = phi(rho) / (8 pi t)`. The velocity kernel of the Biot-Savart law
    /// is the negative of this.
    pub fn bs_component(i: usize) -> Self {
        match i {
            0 => Self::single(Ratio::new(1, 8), -1, (0, 1), Radial::Phi(0)),
            1 => Self::single(Ratio::new(-1, 8), -1, (1, 0), Radial::Phi(0)),
            _ => panic!("component out of range"),
        }
    }

    /// Entry `(i, j)` of the Riesz tensor kernel
    ///
    /// ```text
    /// R^perp R G = [ -R2R1 G   -R2^2 G ]   [  x1 x2 g'/r    g + x2^2 g'/r ]
    ///              [  R1^2 G    R1R2 G ] = [ -g - x1^2 g'/r  -x1 x2 g'/r  ]
    /// ```
    ///
    /// with `g = phi(rho)/(8 pi t)` and `g'/r = phi'(rho)/(16 pi t^2)`.
    pub fn riesz_entry(i: usize, j: usize) -> Self {
        let g = |s: i64| Self::single(Ratio::new(s, 8), -1, (0, 0), Radial::Phi(0));
        let gp = |s: i64, xp: (u32, u32)| Self::single(Ratio::new(s, 16), -2, xp, Radial::Phi(1));
        match (i, j) {
            (0, 0) => gp(1, (1, 1)),
            (0, 1) => g(1).add(&gp(1, (0, 2))),
            (1, 0) => g(-1).add(&gp(-1, (2, 0))),
            (1, 1) => gp(-1, (1, 1)),
            _ => panic!("entry out of range"),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        let mut out = Self { terms };
        out.merge();
        out
    }

    pub fn scale(&self, q: Ratio<i64>) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term { coef: t.coef * q, ..*t })
                .collect(),
        }
    }

    fn merge(&mut self) {
        self.terms
            .sort_by_key(|t| (t.tpow, t.xp, t.radial));
        let mut merged: Vec<Term> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last)
                    if last.tpow == t.tpow && last.xp == t.xp && last.radial == t.radial =>
                {
                    last.coef += t.coef;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| *t.coef.numer() != 0);
        self.terms = merged;
    }

    /// Spatial derivative along `axis` (0 or 1). Uses
    /// `d rho / d x_i = x_i / 2t`.
    pub fn dx(&self, axis: usize) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * 2);
        for t in &self.terms {
            let m = if axis == 0 { t.xp.0 } else { t.xp.1 };
            if m > 0 {
                let xp = if axis == 0 {
                    (t.xp.0 - 1, t.xp.1)
                } else {
                    (t.xp.0, t.xp.1 - 1)
                };
                terms.push(Term {
                    coef: t.coef * Ratio::from_integer(m as i64),
                    tpow: t.tpow,
                    xp,
                    radial: t.radial,
                });
            }
            let (factor, radial) = t.radial.diff();
            let xp = if axis == 0 {
                (t.xp.0 + 1, t.xp.1)
            } else {
                (t.xp.0, t.xp.1 + 1)
            };
            terms.push(Term {
                coef: t.coef * factor * Ratio::new(1, 2),
                tpow: t.tpow - 1,
                xp,
                radial,
            });
        }
        let mut out = Self { terms };
        out.merge();
        out
    }

    /// `grad^alpha`.
    pub fn deriv(&self, alpha: MultiIndex) -> Self {
        let mut out = self.clone();
        for _ in 0..alpha.a1 {
            out = out.dx(0);
        }
        for _ in 0..alpha.a2 {
            out = out.dx(1);
        }
        out
    }

    /// Time derivative through the heat identity `d/dt = Laplacian`, valid
    /// for every `m(xi) e^{-t |xi|^2}` multiplier kernel.
    pub fn dt(&self) -> Self {
        self.dx(0).dx(0).add(&self.dx(1).dx(1))
    }

    /// `d_t^l grad^beta` of this kernel.
    pub fn deriv_lt(&self, l: u32, beta: MultiIndex) -> Self {
        let mut out = self.clone();
        for _ in 0..l {
            out = out.dt();
        }
        out.deriv(beta)
    }

    /// Direct time derivative of the term representation, used as an
    /// independent cross-check of the heat identity in tests.
    pub fn dt_direct(&self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * 3);
        for t in &self.terms {
            if t.tpow != 0 {
                terms.push(Term {
                    coef: t.coef * Ratio::from_integer(t.tpow as i64),
                    tpow: t.tpow - 1,
                    ..*t
                });
            }
            // d rho / dt = -|x|^2 / 4t^2 contributes two terms.
            let (factor, radial) = t.radial.diff();
            for xp in [(t.xp.0 + 2, t.xp.1), (t.xp.0, t.xp.1 + 2)] {
                terms.push(Term {
                    coef: t.coef * factor * Ratio::new(-1, 4),
                    tpow: t.tpow - 2,
                    xp,
                    radial,
                });
            }
        }
        let mut out = Self { terms };
        out.merge();
        out
    }

    /// Evaluate at `(t, x)`; `t` must be positive.
    pub fn eval(&self, t: f64, x: [f64; 2]) -> f64 {
        let rho = (x[0] * x[0] + x[1] * x[1]) / (4.0 * t);
        let mut acc = 0.0;
        for term in &self.terms {
            let c = *term.coef.numer() as f64 / *term.coef.denom() as f64;
            acc += c
                * t.powi(term.tpow)
                * x[0].powi(term.xp.0 as i32)
                * x[1].powi(term.xp.1 as i32)
                * term.radial.eval(rho);
        }
        acc / PI
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Read-only view of the terms for flattened batch evaluation.
    pub fn raw_terms(&self) -> impl Iterator<Item = TermView<'_>> {
        self.terms.iter().map(TermView)
    }
}

/// Borrowed view of one kernel term.
pub struct TermView<'a>(&'a Term);

impl TermView<'_> {
    pub fn coefficient(&self) -> Ratio<i64> {
        self.0.coef
    }
    pub fn t_power(&self) -> i32 {
        self.0.tpow
    }
    pub fn x_powers(&self) -> (u32, u32) {
        self.0.xp
    }
    /// `(0, _)` for the Gaussian, `(1, k)` for `phi^{(k)}`.
    pub fn radial_kind(&self) -> (u8, u32) {
        match self.0.radial {
            Radial::Gauss => (0, 0),
            Radial::Phi(k) => (1, k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn heat_kernel_values() {
        let g = KernelSum::heat();
        assert_relative_eq!(g.eval(1.0, [0.0, 0.0]), 1.0 / (4.0 * PI), max_relative = 1e-15);
        assert_relative_eq!(
            g.eval(1.0, [2.0, 0.0]),
            (-1.0f64).exp() / (4.0 * PI),
            max_relative = 1e-14
        );
    }

    #[test]
    fn spatial_derivative_matches_finite_difference() {
        let g = KernelSum::heat();
        let d1 = g.dx(0);
        let h = 1e-5;
        for &x in &[[0.3, -0.7], [1.5, 2.0]] {
            let fd = (g.eval(1.0, [x[0] + h, x[1]]) - g.eval(1.0, [x[0] - h, x[1]])) / (2.0 * h);
            assert_relative_eq!(d1.eval(1.0, x), fd, max_relative = 1e-8);
        }
    }

    #[test]
    fn heat_identity_equals_direct_time_derivative() {
        for base in [
            KernelSum::heat(),
            KernelSum::bs_component(0),
            KernelSum::riesz_entry(1, 0),
        ] {
            let via_laplacian = base.dt();
            let direct = base.dt_direct();
            for &(t, x) in &[(1.0, [0.4, 0.9]), (2.5, [3.0, -1.0]), (0.3, [0.0, 0.0])] {
                assert_relative_eq!(
                    via_laplacian.eval(t, x),
                    direct.eval(t, x),
                    epsilon = 1e-14,
                    max_relative = 1e-11
                );
            }
        }
    }

    #[test]
    fn riesz_trace_identity() {
        // R1^2 G + R2^2 G = -G, i.e. entry(1,0) - entry(0,1) = -G.
        let g = KernelSum::heat();
        let e10 = KernelSum::riesz_entry(1, 0);
        let e01 = KernelSum::riesz_entry(0, 1);
        for &(t, x) in &[(1.0, [1.0, 1.0]), (0.7, [0.0, 0.0]), (3.0, [-2.0, 5.0])] {
            let trace = e10.eval(t, x) - e01.eval(t, x);
            assert_relative_eq!(trace, -g.eval(t, x), max_relative = 1e-12);
        }
    }

    #[test]
    fn oseen_far_field() {
        // -bs = x^perp/(2 pi |x|^2) (1 - e^{-|x|^2/4t}).
        let b2 = KernelSum::bs_component(1);
        let x = [10.0, 0.0];
        let expect = -10.0 / (2.0 * PI * 100.0) * (1.0 - (-25.0f64).exp());
        assert_relative_eq!(b2.eval(1.0, x), expect, max_relative = 1e-13);
    }

    #[test]
    fn parabolic_scaling() {
        // lambda^{1+|alpha|} grad^alpha bs(lambda^2 t, lambda x) = grad^alpha bs(t,x).
        let d = KernelSum::bs_component(0).deriv(MultiIndex::new(1, 1));
        let (t, x) = (0.8, [1.2, -0.4]);
        for &lam in &[0.5f64, 2.0, 3.0] {
            let scaled = lam.powi(3) * d.eval(lam * lam * t, [lam * x[0], lam * x[1]]);
            assert_relative_eq!(scaled, d.eval(t, x), max_relative = 1e-12);
        }
    }
}
