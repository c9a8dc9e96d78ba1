//! Fourier-multiplier quadrature oracle.
//!
//! Evaluates `(2 pi)^{-2} integral m(xi) (i xi)^beta (-|xi|^2)^l e^{-t|xi|^2}
//! e^{i x . xi} d xi` over a disk whose radius makes the Gaussian tail
//! negligible, by tensor-product quadrature in polar coordinates
//! (Gauss-Legendre radially, trapezoid in angle). Independent of the
//! closed-form evaluators; used to validate them.

use num_complex::Complex64;

use super::{KernelFamily, KernelValue, MultiplierSpec, SpaceTimePoint};
use crate::error::{Error, Result};
use crate::par;
use crate::tolerances::{ORACLE_RTOL, ORACLE_TAIL};

/// Radial/angular node counts; `None` picks counts from the oscillation
/// scale `R |x|`.
#[derive(Debug, Clone, Copy, Default)]
pub struct QuadratureParams {
    pub radial_nodes: Option<usize>,
    pub angular_nodes: Option<usize>,
    /// Relative accuracy demanded of the refinement estimate.
    pub rtol: Option<f64>,
}

/// Gauss-Legendre nodes and weights on [0, 1] by Newton iteration.
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // initial guess (Chebyshev-like)
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre P_n and derivative by recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let (kf, xk) = (k as f64, x);
                let p2 = ((2.0 * kf - 1.0) * xk * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = 0.5 * (1.0 - x); // map [-1,1] -> [0,1], reversed order is fine
        weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Family symbol entries at `xi` (without the Gaussian factor).
fn symbol(family: KernelFamily, xi: [f64; 2]) -> Vec<Complex64> {
    let r2 = xi[0] * xi[0] + xi[1] * xi[1];
    match family {
        KernelFamily::Heat => vec![Complex64::new(1.0, 0.0)],
        KernelFamily::BiotSavart => {
            if r2 == 0.0 {
                return vec![Complex64::ZERO; 2];
            }
            // i xi^perp / |xi|^2, xi^perp = (-xi2, xi1)
            vec![
                Complex64::new(0.0, -xi[1] / r2),
                Complex64::new(0.0, xi[0] / r2),
            ]
        }
        KernelFamily::RieszTensor => {
            if r2 == 0.0 {
                return vec![Complex64::ZERO; 4];
            }
            // -xi^perp (x) xi / |xi|^2 = [[x1x2, x2^2], [-x1^2, -x1x2]]/|xi|^2
            vec![
                Complex64::new(xi[0] * xi[1] / r2, 0.0),
                Complex64::new(xi[1] * xi[1] / r2, 0.0),
                Complex64::new(-xi[0] * xi[0] / r2, 0.0),
                Complex64::new(-xi[0] * xi[1] / r2, 0.0),
            ]
        }
    }
}

fn integrate(
    spec: MultiplierSpec,
    p: SpaceTimePoint,
    radius: f64,
    n_r: usize,
    n_th: usize,
) -> Vec<Complex64> {
    let rank = spec.family.rank();
    let (nodes, weights) = gauss_legendre_unit(n_r);
    let dth = 2.0 * std::f64::consts::PI / n_th as f64;
    let rows = par::map_rows(n_r, |ir| {
        let r = nodes[ir] * radius;
        let wr = weights[ir] * radius;
        let gaussian = (-p.t * r * r).exp();
        let mut acc = vec![Complex64::ZERO; rank];
        for it in 0..n_th {
            let th = it as f64 * dth;
            let xi = [r * th.cos(), r * th.sin()];
            let mut factor = Complex64::new(gaussian, 0.0);
            // (i xi)^beta
            for _ in 0..spec.space_index.a1 {
                factor *= Complex64::new(0.0, xi[0]);
            }
            for _ in 0..spec.space_index.a2 {
                factor *= Complex64::new(0.0, xi[1]);
            }
            // (-|xi|^2)^l
            for _ in 0..spec.time_order {
                factor *= -(r * r);
            }
            let phase = Complex64::from_polar(1.0, p.x[0] * xi[0] + p.x[1] * xi[1]);
            let fp = factor * phase * (wr * dth * r);
            for (a, s) in acc.iter_mut().zip(symbol(spec.family, xi)) {
                *a += s * fp;
            }
        }
        acc
    });
    let mut total = vec![Complex64::ZERO; rank];
    for row in rows {
        for (t, v) in total.iter_mut().zip(row) {
            *t += v;
        }
    }
    let norm = (2.0 * std::f64::consts::PI).powi(-2);
    total.iter_mut().for_each(|v| *v *= norm);
    total
}

/// Evaluate the multiplier and an error estimate from node refinement.
/// Fails with [`Error::Accuracy`] if the estimate misses the requested
/// relative tolerance.
pub fn fourier_oracle(
    spec: MultiplierSpec,
    p: SpaceTimePoint,
    quad: QuadratureParams,
) -> Result<(KernelValue, f64)> {
    if p.t <= 0.0 {
        return Err(Error::NonPositiveTime(p.t));
    }
    let radius = ((1.0 / ORACLE_TAIL).ln() / p.t).sqrt();
    let osc = radius * p.x[0].hypot(p.x[1]);
    let n_r = quad
        .radial_nodes
        .unwrap_or_else(|| (0.75 * osc) as usize + 60);
    let n_th = quad
        .angular_nodes
        .unwrap_or_else(|| (1.2 * osc + 30.0 * osc.cbrt()) as usize + 48);
    let rtol = quad.rtol.unwrap_or(ORACLE_RTOL);

    let coarse = integrate(spec, p, radius, n_r, n_th);
    let fine = integrate(spec, p, radius, n_r * 7 / 5 + 4, n_th * 7 / 5 + 4);

    let scale = fine
        .iter()
        .map(|v| v.norm())
        .fold(0.0f64, f64::max)
        .max(1e-30);
    let mut est = 0.0f64;
    for (c, f) in coarse.iter().zip(&fine) {
        est = est.max((c - f).norm());
        est = est.max(f.im.abs()); // imaginary part must vanish for real kernels
    }
    let rel = est / scale;
    if rel > rtol {
        return Err(Error::Accuracy {
            achieved: rel,
            requested: rtol,
        });
    }
    let re: Vec<f64> = fine.iter().map(|v| v.re).collect();
    let value = match spec.family {
        KernelFamily::Heat => KernelValue::Scalar(re[0]),
        KernelFamily::BiotSavart => KernelValue::Vector([re[0], re[1]]),
        KernelFamily::RieszTensor => KernelValue::Tensor([[re[0], re[1]], [re[2], re[3]]]),
    };
    Ok((value, est))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multi_index::MultiIndex;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre_unit(8);
        let quad: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(9)).sum();
        assert_relative_eq!(quad, 0.1, max_relative = 1e-13);
        let total: f64 = w.iter().sum();
        assert_relative_eq!(total, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn heat_family_recovers_gaussian() {
        let spec = MultiplierSpec {
            family: KernelFamily::Heat,
            time_order: 0,
            space_index: MultiIndex::ZERO,
        };
        let p = SpaceTimePoint::new(1.0, [0.0, 0.0]);
        let (v, _) = fourier_oracle(spec, p, QuadratureParams::default()).unwrap();
        match v {
            KernelValue::Scalar(s) => {
                assert_relative_eq!(s, 1.0 / (4.0 * PI), max_relative = 1e-10)
            }
            _ => panic!("rank"),
        }
    }

    #[test]
    fn riesz_trace_is_minus_gauss() {
        let spec = MultiplierSpec {
            family: KernelFamily::RieszTensor,
            time_order: 0,
            space_index: MultiIndex::ZERO,
        };
        let p = SpaceTimePoint::new(0.8, [1.3, -0.4]);
        let (v, _) = fourier_oracle(spec, p, QuadratureParams::default()).unwrap();
        let m = match v {
            KernelValue::Tensor(m) => m,
            _ => panic!("rank"),
        };
        let g = crate::kernels::gauss(p).unwrap();
        assert_relative_eq!(m[1][0] - m[0][1], -g, epsilon = 1e-10);
    }

    #[test]
    fn insufficient_nodes_reports_accuracy_error() {
        let spec = MultiplierSpec {
            family: KernelFamily::Heat,
            time_order: 0,
            space_index: MultiIndex::ZERO,
        };
        let p = SpaceTimePoint::new(0.5, [9.0, 7.0]);
        let err = fourier_oracle(
            spec,
            p,
            QuadratureParams {
                radial_nodes: Some(6),
                angular_nodes: Some(8),
                rtol: Some(1e-10),
            },
        )
        .unwrap_err();
        match err {
            Error::Accuracy { achieved, .. } => assert!(achieved > 1e-10),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
