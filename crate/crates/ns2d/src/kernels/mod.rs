//! Closed-form kernel evaluators and their Fourier-multiplier oracle.
//!
//! Three families, all multipliers of the form `m(xi) e^{-t |xi|^2}`:
//!
//! * heat: `G(t,x) = (4 pi t)^{-1} e^{-|x|^2/4t}`, symbol `1`;
//! * Biot-Savart: `grad^perp (-Delta)^{-1} G`, symbol `i xi^perp |xi|^{-2}`.
//!   The velocity kernel of the Biot-Savart law (the Oseen vortex velocity)
//!   is its negative, `(x^perp / 2 pi |x|^2)(1 - e^{-|x|^2/4t})`;
//! * Riesz tensor: `R^perp R G` with the sign layout
//!   `[[-R2R1, -R2^2], [R1^2, R1R2]] G`, symbol `-xi^perp (x) xi |xi|^{-2}`.
//!
//! Derivatives `d_t^l grad^beta` are generated symbolically with exact
//! rational coefficients ([`sum::KernelSum`]); time derivatives are always
//! rewritten through the heat identity `d_t = Laplacian`. The quadrature
//! oracle in [`oracle`] evaluates the same objects independently from the
//! Fourier side.

pub mod oracle;
pub mod radial;
pub mod sum;

pub use oracle::{fourier_oracle, QuadratureParams};
pub use sum::KernelSum;

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;

/// Point of evaluation; all kernels are singular at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimePoint {
    pub t: f64,
    pub x: [f64; 2],
}

impl SpaceTimePoint {
    pub fn new(t: f64, x: [f64; 2]) -> Self {
        Self { t, x }
    }

    fn check(&self) -> Result<()> {
        if self.t > 0.0 {
            Ok(())
        } else {
            Err(Error::NonPositiveTime(self.t))
        }
    }
}

/// Scalar, 2-vector or 2x2-tensor kernel value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelValue {
    Scalar(f64),
    Vector([f64; 2]),
    Tensor([[f64; 2]; 2]),
}

impl KernelValue {
    pub fn entries(&self) -> Vec<f64> {
        match self {
            KernelValue::Scalar(v) => vec![*v],
            KernelValue::Vector(v) => v.to_vec(),
            KernelValue::Tensor(m) => vec![m[0][0], m[0][1], m[1][0], m[1][1]],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelFamily {
    Heat,
    BiotSavart,
    RieszTensor,
}

impl KernelFamily {
    pub fn rank(&self) -> usize {
        match self {
            KernelFamily::Heat => 1,
            KernelFamily::BiotSavart => 2,
            KernelFamily::RieszTensor => 4,
        }
    }

    /// Parabolic scaling degree `s` in
    /// `lambda^{s + 2l + |beta|} K(lambda^2 t, lambda x) = K(t, x)`.
    pub fn scaling_degree(&self) -> u32 {
        match self {
            KernelFamily::Heat => 2,
            KernelFamily::BiotSavart => 1,
            KernelFamily::RieszTensor => 2,
        }
    }
}

/// A derivative of one kernel family, identified on the Fourier side by
/// `(i xi)^beta (-|xi|^2)^l` times the family symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierSpec {
    pub family: KernelFamily,
    pub time_order: u32,
    pub space_index: MultiIndex,
}

/// Maximum `2l + |beta|` supported by the Biot-Savart and Riesz tables.
pub const MAX_DERIV_ORDER: u32 = 6;
/// Maximum `|alpha|` supported for heat-kernel derivatives.
pub const MAX_HEAT_ORDER: u32 = 10;

fn check_order(total: u32, limit: u32) -> Result<()> {
    if total <= limit {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder {
            got: total,
            limit,
        })
    }
}

/// Component kernel sums of `d_t^l grad^beta` applied to a family
/// (1, 2 or 4 scalar sums).
pub fn family_sums(family: KernelFamily, l: u32, beta: MultiIndex) -> Result<Vec<KernelSum>> {
    let total = 2 * l + beta.order();
    match family {
        KernelFamily::Heat => {
            check_order(total, MAX_HEAT_ORDER)?;
            Ok(vec![KernelSum::heat().deriv_lt(l, beta)])
        }
        KernelFamily::BiotSavart => {
            check_order(total, MAX_DERIV_ORDER)?;
            Ok((0..2)
                .map(|i| KernelSum::bs_component(i).deriv_lt(l, beta))
                .collect())
        }
        KernelFamily::RieszTensor => {
            check_order(total, MAX_DERIV_ORDER)?;
            Ok([(0, 0), (0, 1), (1, 0), (1, 1)]
                .iter()
                .map(|&(i, j)| KernelSum::riesz_entry(i, j).deriv_lt(l, beta))
                .collect())
        }
    }
}

/// `G(t,x)`.
pub fn gauss(p: SpaceTimePoint) -> Result<f64> {
    p.check()?;
    Ok(KernelSum::heat().eval(p.t, p.x))
}

/// `grad^alpha G(t,x)` via the exact Hermite-polynomial recursion.
pub fn gauss_deriv(alpha: MultiIndex, p: SpaceTimePoint) -> Result<f64> {
    p.check()?;
    check_order(alpha.order(), MAX_HEAT_ORDER)?;
    Ok(KernelSum::heat().deriv(alpha).eval(p.t, p.x))
}

/// The Biot-Savart velocity kernel `-grad^perp (-Delta)^{-1} G(t,x)`,
/// continuous at `x = 0` with value `(0,0)`.
pub fn bs_kernel(p: SpaceTimePoint) -> Result<[f64; 2]> {
    p.check()?;
    Ok([
        -KernelSum::bs_component(0).eval(p.t, p.x),
        -KernelSum::bs_component(1).eval(p.t, p.x),
    ])
}

/// `grad^alpha grad^perp (-Delta)^{-1} G(t,x)` for `|alpha| <= 6`.
pub fn bs_kernel_deriv(alpha: MultiIndex, p: SpaceTimePoint) -> Result<[f64; 2]> {
    p.check()?;
    let sums = family_sums(KernelFamily::BiotSavart, 0, alpha)?;
    Ok([sums[0].eval(p.t, p.x), sums[1].eval(p.t, p.x)])
}

/// `R^perp R G(t,x)` with the Definition sign layout.
pub fn riesz_tensor(p: SpaceTimePoint) -> Result<[[f64; 2]; 2]> {
    riesz_tensor_deriv(0, MultiIndex::ZERO, p)
}

/// `d_t^l grad^beta R^perp R G(t,x)` for `2l + |beta| <= 6`.
pub fn riesz_tensor_deriv(l: u32, beta: MultiIndex, p: SpaceTimePoint) -> Result<[[f64; 2]; 2]> {
    p.check()?;
    let sums = family_sums(KernelFamily::RieszTensor, l, beta)?;
    Ok([
        [sums[0].eval(p.t, p.x), sums[1].eval(p.t, p.x)],
        [sums[2].eval(p.t, p.x), sums[3].eval(p.t, p.x)],
    ])
}

/// Apply the Riesz tensor value to a constant vector per the definition:
/// `(R^perp R g) b = matrix . b`.
pub fn apply_tensor(m: [[f64; 2]; 2], b: [f64; 2]) -> [f64; 2] {
    [
        m[0][0] * b[0] + m[0][1] * b[1],
        m[1][0] * b[0] + m[1][1] * b[1],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn gauss_reference_values() {
        let v = gauss(SpaceTimePoint::new(1.0, [0.0, 0.0])).unwrap();
        assert_relative_eq!(v, 1.0 / (4.0 * PI), max_relative = 1e-14);
        // parabolic scaling: gauss(4, (2,0)) = (1/4) gauss(1, (1,0)).
        let a = gauss(SpaceTimePoint::new(4.0, [2.0, 0.0])).unwrap();
        let b = gauss(SpaceTimePoint::new(1.0, [1.0, 0.0])).unwrap();
        assert_relative_eq!(a, 0.25 * b, max_relative = 1e-14);
        let c = gauss(SpaceTimePoint::new(1.0, [2.0, 0.0])).unwrap();
        assert_relative_eq!(c, (4.0 * PI).recip() * (-1.0f64).exp(), max_relative = 1e-14);
        assert!(gauss(SpaceTimePoint::new(0.0, [0.0, 0.0])).is_err());
        assert!(gauss(SpaceTimePoint::new(-1.0, [0.0, 0.0])).is_err());
    }

    #[test]
    fn gauss_deriv_cases() {
        let p = SpaceTimePoint::new(1.0, [0.3, 0.4]);
        assert_eq!(
            gauss_deriv(MultiIndex::ZERO, p).unwrap(),
            gauss(p).unwrap()
        );
        // odd symmetry at the origin
        let origin = SpaceTimePoint::new(1.0, [0.0, 0.0]);
        assert_eq!(gauss_deriv(MultiIndex::new(1, 0), origin).unwrap(), 0.0);
    }

    #[test]
    fn gauss_deriv_matches_fourth_order_finite_differences() {
        // frozen spec case: alpha=(2,1), t=1, x=(0.7,-0.3)
        let alpha = MultiIndex::new(2, 1);
        let p = SpaceTimePoint::new(1.0, [0.7, -0.3]);
        let got = gauss_deriv(alpha, p).unwrap();

        // 4th-order central differences applied twice in x1, once in x2.
        let h = 0.02;
        let g = |x1: f64, x2: f64| gauss(SpaceTimePoint::new(1.0, [x1, x2])).unwrap();
        let d2x1 = |x1: f64, x2: f64| {
            (-g(x1 + 2.0 * h, x2) + 16.0 * g(x1 + h, x2) - 30.0 * g(x1, x2)
                + 16.0 * g(x1 - h, x2)
                - g(x1 - 2.0 * h, x2))
                / (12.0 * h * h)
        };
        let fd = (-d2x1(0.7, -0.3 + 2.0 * h) + 8.0 * d2x1(0.7, -0.3 + h)
            - 8.0 * d2x1(0.7, -0.3 - h)
            + d2x1(0.7, -0.3 - 2.0 * h))
            / (12.0 * h);
        assert_relative_eq!(got, fd, max_relative = 1e-7);
    }

    #[test]
    fn bs_kernel_cases() {
        let origin = bs_kernel(SpaceTimePoint::new(1.0, [0.0, 0.0])).unwrap();
        assert_eq!(origin, [0.0, 0.0]);

        let v = bs_kernel(SpaceTimePoint::new(1.0, [10.0, 0.0])).unwrap();
        let expect = (1.0 - (-25.0f64).exp()) / (20.0 * PI);
        assert_relative_eq!(v[1], expect, max_relative = 1e-12);
        assert_relative_eq!(v[0], 0.0, epsilon = 1e-300);

        // lambda * bs(lambda^2 t, lambda x) = bs(t, x)
        let lam = 3.0;
        for &x in &[[0.5, 1.0], [-2.0, 0.3], [4.0, 4.0]] {
            let base = bs_kernel(SpaceTimePoint::new(1.0, x)).unwrap();
            let scaled = bs_kernel(SpaceTimePoint::new(lam * lam, [lam * x[0], lam * x[1]])).unwrap();
            for i in 0..2 {
                assert_relative_eq!(lam * scaled[i], base[i], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn bs_small_argument_series_branch() {
        // near the origin the kernel behaves like x^perp/(8 pi t)
        let p = SpaceTimePoint::new(1.0, [1e-6, 0.0]);
        let v = bs_kernel(p).unwrap();
        assert_relative_eq!(v[1], 1e-6 / (8.0 * PI), max_relative = 1e-9);
    }

    #[test]
    fn bs_deriv_matches_finite_differences_and_scaling() {
        let p = SpaceTimePoint::new(1.3, [0.8, -0.6]);
        let h = 1e-4;
        for (alpha, axis) in [(MultiIndex::new(1, 0), 0), (MultiIndex::new(0, 1), 1)] {
            let d = bs_kernel_deriv(alpha, p).unwrap();
            for comp in 0..2 {
                let mut xp = p.x;
                let mut xm = p.x;
                xp[axis] += h;
                xm[axis] -= h;
                // finite differences of grad^perp (-Delta)^{-1} G = -bs_kernel
                let fp = -bs_kernel(SpaceTimePoint::new(p.t, xp)).unwrap()[comp];
                let fm = -bs_kernel(SpaceTimePoint::new(p.t, xm)).unwrap()[comp];
                assert_relative_eq!(d[comp], (fp - fm) / (2.0 * h), max_relative = 1e-7);
            }
        }
        // lambda^{1+|alpha|} scaling at |alpha| = 2
        let alpha = MultiIndex::new(1, 1);
        let lam = 2.0f64;
        let base = bs_kernel_deriv(alpha, p).unwrap();
        let scaled = bs_kernel_deriv(
            alpha,
            SpaceTimePoint::new(lam * lam * p.t, [lam * p.x[0], lam * p.x[1]]),
        )
        .unwrap();
        for i in 0..2 {
            assert_relative_eq!(lam.powi(3) * scaled[i], base[i], epsilon = 1e-10, max_relative = 1e-10);
        }
        assert!(bs_kernel_deriv(MultiIndex::new(4, 3), p).is_err());
    }

    #[test]
    fn bs_deriv_far_field_decay_bound() {
        // (1+|x|)^{1+|alpha|} |grad^alpha bs(1,x)| bounded over |x| <= 40 and
        // stable when the sample radius doubles.
        for alpha in [MultiIndex::new(1, 0), MultiIndex::new(2, 1)] {
            let sup = |radius: f64| {
                let mut best: f64 = 0.0;
                let n = 400;
                for i in 0..n {
                    let r = radius * (i as f64 + 0.5) / n as f64;
                    for &ang in &[0.0, 0.7, 1.9, 3.1, 4.4] {
                        let x = [r * f64::cos(ang), r * f64::sin(ang)];
                        let v = bs_kernel_deriv(alpha, SpaceTimePoint::new(1.0, x)).unwrap();
                        let mag = v[0].hypot(v[1]);
                        best = best.max((1.0 + r).powi(1 + alpha.order() as i32) * mag);
                    }
                }
                best
            };
            let s40 = sup(40.0);
            let s80 = sup(80.0);
            assert!(s40.is_finite() && s40 > 0.0);
            assert!(s80 / s40 <= 1.05, "sup grew: {s40} -> {s80}");
        }
    }

    #[test]
    fn riesz_tensor_cases() {
        let p = SpaceTimePoint::new(1.0, [1.0, 1.0]);
        let m = riesz_tensor(p).unwrap();
        // trace identity R1^2 G + R2^2 G = -G: entries (1,0) and -(0,1).
        let trace = m[1][0] - m[0][1];
        assert_relative_eq!(trace, -gauss(p).unwrap(), epsilon = 1e-9);

        // far-field boundedness of (1+|x|)^2 |entries|
        let mut sup: f64 = 0.0;
        for i in 0..200 {
            let r = 40.0 * (i as f64 + 0.5) / 200.0;
            let x = [r * 0.6, r * 0.8];
            let m = riesz_tensor(SpaceTimePoint::new(1.0, x)).unwrap();
            for row in m {
                for e in row {
                    sup = sup.max((1.0 + r).powi(2) * e.abs());
                }
            }
        }
        assert!(sup.is_finite() && sup < 1.0);

        // lambda^2 scaling
        let lam = 2.0f64;
        let scaled =
            riesz_tensor(SpaceTimePoint::new(lam * lam, [lam, lam])).unwrap();
        let base = riesz_tensor(SpaceTimePoint::new(1.0, [1.0, 1.0])).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(lam * lam * scaled[i][j], base[i][j], epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn riesz_deriv_identity_and_heat_identity() {
        let p = SpaceTimePoint::new(1.0, [0.5, 0.5]);
        let a = riesz_tensor_deriv(0, MultiIndex::ZERO, p).unwrap();
        let b = riesz_tensor(p).unwrap();
        assert_eq!(a, b);

        // d_t R = sum_j grad^{2e_j} R
        let dt = riesz_tensor_deriv(1, MultiIndex::ZERO, p).unwrap();
        let dxx = riesz_tensor_deriv(0, MultiIndex::new(2, 0), p).unwrap();
        let dyy = riesz_tensor_deriv(0, MultiIndex::new(0, 2), p).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(dt[i][j], dxx[i][j] + dyy[i][j], epsilon = 1e-9);
            }
        }
        assert!(riesz_tensor_deriv(2, MultiIndex::new(3, 0), p).is_err());

        // lambda^{2 + 2l + |beta|} scaling
        let lam = 2.0f64;
        let l = 1;
        let beta = MultiIndex::new(1, 0);
        let base = riesz_tensor_deriv(l, beta, p).unwrap();
        let scaled = riesz_tensor_deriv(
            l,
            beta,
            SpaceTimePoint::new(lam * lam * p.t, [lam * p.x[0], lam * p.x[1]]),
        )
        .unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(
                    lam.powi(5) * scaled[i][j],
                    base[i][j],
                    epsilon = 1e-10,
                    max_relative = 1e-10
                );
            }
        }
    }
}
