//! Scalar, vector and spectral fields on the periodic box.

use ndarray::Array2;
use num_complex::Complex64;

use super::fft;
use super::grid::GridSpec;
use crate::error::{Error, Result};
use crate::par;
use crate::tolerances::BS_MEAN_TOL;

/// Real scalar samples, e.g. the vorticity.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid: GridSpec,
    pub data: Array2<f64>,
}

/// Real 2-vector samples, e.g. the velocity; stored as two planes.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub grid: GridSpec,
    pub x: Array2<f64>,
    pub y: Array2<f64>,
}

/// Fourier coefficients, FFT bin ordering along both axes.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    pub grid: GridSpec,
    pub data: Array2<Complex64>,
}

impl ScalarField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            data: Array2::zeros((grid.n, grid.n)),
        }
    }

    /// Sample `f(x)` on the grid, row-parallel.
    pub fn from_fn<F: Fn([f64; 2]) -> f64 + Sync + Send>(grid: GridSpec, f: F) -> Self {
        let n = grid.n;
        let mut data = Array2::zeros((n, n));
        {
            let slice = data.as_slice_mut().unwrap();
            par::for_each_row(slice, n, |i, row| {
                let x1 = grid.coord(i);
                for (j, v) in row.iter_mut().enumerate() {
                    *v = f([x1, grid.coord(j)]);
                }
            });
        }
        Self { grid, data }
    }

    pub fn mean(&self) -> f64 {
        let n = self.grid.n;
        let slice = self.data.as_slice().unwrap();
        par::sum_rows(n, |i| slice[i * n..(i + 1) * n].iter().sum::<f64>()) / (n * n) as f64
    }

    pub fn max_abs(&self) -> f64 {
        let n = self.grid.n;
        let slice = self.data.as_slice().unwrap();
        par::max_rows(n, |i| {
            slice[i * n..(i + 1) * n]
                .iter()
                .fold(0.0f64, |a, v| a.max(v.abs()))
        })
    }

    /// Largest |value| on the boundary ring of the box.
    pub fn boundary_max(&self) -> f64 {
        let n = self.grid.n;
        let mut best = 0.0f64;
        for i in 0..n {
            for &j in &[0usize, n - 1] {
                best = best.max(self.data[[i, j]].abs());
                best = best.max(self.data[[j, i]].abs());
            }
        }
        best
    }

    pub fn scale(&mut self, a: f64) {
        self.data.mapv_inplace(|v| a * v);
    }
}

impl VectorField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            x: Array2::zeros((grid.n, grid.n)),
            y: Array2::zeros((grid.n, grid.n)),
        }
    }

    pub fn from_fn<F: Fn([f64; 2]) -> [f64; 2] + Sync + Send>(grid: GridSpec, f: F) -> Self {
        let n = grid.n;
        let mut fx = Array2::zeros((n, n));
        let mut fy = Array2::zeros((n, n));
        {
            let sx = fx.as_slice_mut().unwrap();
            par::for_each_row(sx, n, |i, row| {
                let x1 = grid.coord(i);
                for (j, v) in row.iter_mut().enumerate() {
                    *v = f([x1, grid.coord(j)])[0];
                }
            });
            let sy = fy.as_slice_mut().unwrap();
            par::for_each_row(sy, n, |i, row| {
                let x1 = grid.coord(i);
                for (j, v) in row.iter_mut().enumerate() {
                    *v = f([x1, grid.coord(j)])[1];
                }
            });
        }
        Self { grid, x: fx, y: fy }
    }

    pub fn magnitude_at(&self, i: usize, j: usize) -> f64 {
        self.x[[i, j]].hypot(self.y[[i, j]])
    }

    pub fn max_magnitude(&self) -> f64 {
        let n = self.grid.n;
        let (sx, sy) = (self.x.as_slice().unwrap(), self.y.as_slice().unwrap());
        par::max_rows(n, |i| {
            let mut best = 0.0f64;
            for j in i * n..(i + 1) * n {
                best = best.max(sx[j].hypot(sy[j]));
            }
            best
        })
    }

    /// `self - other`, shapes must match.
    pub fn sub(&self, other: &VectorField) -> Result<VectorField> {
        self.grid.same_shape(&other.grid)?;
        Ok(VectorField {
            grid: self.grid,
            x: &self.x - &other.x,
            y: &self.y - &other.y,
        })
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        self.grid.same_shape(&other.grid)?;
        Ok(VectorField {
            grid: self.grid,
            x: &self.x + &other.x,
            y: &self.y + &other.y,
        })
    }

    pub fn scaled(&self, a: f64) -> VectorField {
        VectorField {
            grid: self.grid,
            x: self.x.mapv(|v| a * v),
            y: self.y.mapv(|v| a * v),
        }
    }
}

impl SpectralField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            data: Array2::zeros((grid.n, grid.n)),
        }
    }

    /// Multiply bin-wise by `m(k1, k2)`.
    pub fn multiplier<F: Fn(f64, f64) -> Complex64 + Sync + Send>(&self, m: F) -> SpectralField {
        let grid = self.grid;
        let n = grid.n;
        let mut out = self.data.clone();
        {
            let slice = out.as_slice_mut().unwrap();
            par::for_each_row(slice, n, |i, row| {
                let k1 = grid.wavenumber(i);
                for (j, v) in row.iter_mut().enumerate() {
                    *v *= m(k1, grid.wavenumber(j));
                }
            });
        }
        SpectralField { grid, data: out }
    }

    /// Spectral derivative along `axis`; the Nyquist mode is zeroed to keep
    /// the inverse transform real.
    pub fn deriv(&self, axis: usize) -> SpectralField {
        let nyq = -(self.grid.n as i64) / 2;
        let grid = self.grid;
        let n = grid.n;
        let mut out = self.data.clone();
        {
            let slice = out.as_slice_mut().unwrap();
            par::for_each_row(slice, n, |i, row| {
                let m1 = grid.signed_mode(i);
                let k1 = grid.wavenumber(i);
                for (j, v) in row.iter_mut().enumerate() {
                    let m2 = grid.signed_mode(j);
                    let k = if axis == 0 { k1 } else { grid.wavenumber(j) };
                    let m = if axis == 0 { m1 } else { m2 };
                    *v = if m == nyq {
                        Complex64::ZERO
                    } else {
                        Complex64::new(0.0, k) * *v
                    };
                }
            });
        }
        SpectralField { grid, data: out }
    }

    /// Zero every mode outside the dealias square.
    pub fn dealias(&mut self) {
        let cutoff = self.grid.dealias_cutoff();
        let grid = self.grid;
        let n = grid.n;
        let slice = self.data.as_slice_mut().unwrap();
        par::for_each_row(slice, n, |i, row| {
            let m1 = grid.signed_mode(i).abs();
            for (j, v) in row.iter_mut().enumerate() {
                if m1 > cutoff || grid.signed_mode(j).abs() > cutoff {
                    *v = Complex64::ZERO;
                }
            }
        });
    }

    /// Worst conjugate-symmetry violation (a real-field invariant).
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.grid.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let ic = (n - i) % n;
                let jc = (n - j) % n;
                let d = (self.data[[i, j]] - self.data[[ic, jc]].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }
}

/// Forward transform with `1/n^2` normalization, so coefficients are the
/// Fourier-series coefficients of the periodic interpolant.
pub fn to_spectral(f: &ScalarField) -> SpectralField {
    let n = f.grid.n;
    let mut data = Array2::from_shape_fn((n, n), |(i, j)| Complex64::new(f.data[[i, j]], 0.0));
    fft::plan(n).forward(&mut data);
    let scale = 1.0 / (n * n) as f64;
    data.mapv_inplace(|v| v * scale);
    SpectralField { grid: f.grid, data }
}

/// Inverse of [`to_spectral`]; imaginary residue is discarded.
pub fn from_spectral(f: &SpectralField) -> ScalarField {
    let n = f.grid.n;
    let mut data = f.data.clone();
    fft::plan(n).inverse(&mut data);
    ScalarField {
        grid: f.grid,
        data: data.mapv(|v| v.re),
    }
}

/// Velocity from vorticity: `u_hat = -i k^perp |k|^{-2} omega_hat`, zero mode
/// dropped. Errors if the mean vorticity is not negligible (Biot-Savart on
/// the torus needs zero mean).
pub fn biot_savart_spectral(omega_hat: &SpectralField) -> Result<(SpectralField, SpectralField)> {
    let mean = omega_hat.data[[0, 0]].norm();
    if mean > BS_MEAN_TOL {
        return Err(Error::NonzeroMean {
            mean,
            tol: BS_MEAN_TOL,
        });
    }
    let grid = omega_hat.grid;
    let n = grid.n;
    let mut ux = omega_hat.data.clone();
    let mut uy = omega_hat.data.clone();
    {
        let sx = ux.as_slice_mut().unwrap();
        par::for_each_row(sx, n, |i, row| {
            let k1 = grid.wavenumber(i);
            for (j, v) in row.iter_mut().enumerate() {
                let k2 = grid.wavenumber(j);
                let k2n = k1 * k1 + k2 * k2;
                *v = if k2n == 0.0 {
                    Complex64::ZERO
                } else {
                    Complex64::new(0.0, k2 / k2n) * *v
                };
            }
        });
        let sy = uy.as_slice_mut().unwrap();
        par::for_each_row(sy, n, |i, row| {
            let k1 = grid.wavenumber(i);
            for (j, v) in row.iter_mut().enumerate() {
                let k2 = grid.wavenumber(j);
                let k2n = k1 * k1 + k2 * k2;
                *v = if k2n == 0.0 {
                    Complex64::ZERO
                } else {
                    Complex64::new(0.0, -k1 / k2n) * *v
                };
            }
        });
    }
    Ok((
        SpectralField { grid, data: ux },
        SpectralField { grid, data: uy },
    ))
}

/// Velocity field of a (zero-mean) vorticity field.
pub fn biot_savart_velocity(omega: &ScalarField) -> Result<VectorField> {
    let mut omega_hat = to_spectral(omega);
    // subtract a numerically-negligible mean rather than failing
    let mean = omega_hat.data[[0, 0]];
    if mean.norm() <= BS_MEAN_TOL {
        omega_hat.data[[0, 0]] = Complex64::ZERO;
    }
    let (ux, uy) = biot_savart_spectral(&omega_hat)?;
    Ok(VectorField {
        grid: omega.grid,
        x: from_spectral(&ux).data,
        y: from_spectral(&uy).data,
    })
}

/// Scalar curl `d1 u2 - d2 u1` by spectral differentiation.
pub fn curl(u: &VectorField) -> ScalarField {
    let ux = to_spectral(&ScalarField {
        grid: u.grid,
        data: u.x.clone(),
    });
    let uy = to_spectral(&ScalarField {
        grid: u.grid,
        data: u.y.clone(),
    });
    let mut c = uy.deriv(0);
    let d2ux = ux.deriv(1);
    c.data = &c.data - &d2ux.data;
    from_spectral(&c)
}

/// Divergence `d1 u1 + d2 u2` by spectral differentiation.
pub fn divergence(u: &VectorField) -> ScalarField {
    let ux = to_spectral(&ScalarField {
        grid: u.grid,
        data: u.x.clone(),
    });
    let uy = to_spectral(&ScalarField {
        grid: u.grid,
        data: u.y.clone(),
    });
    let mut d = ux.deriv(0);
    let d2uy = uy.deriv(1);
    d.data = &d.data + &d2uy.data;
    from_spectral(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{self, SpaceTimePoint};
    use crate::multi_index::MultiIndex;
    use approx::assert_relative_eq;

    fn grid() -> GridSpec {
        GridSpec::new(64, 8.0).unwrap()
    }

    #[test]
    fn constant_field_has_only_zero_mode() {
        let f = ScalarField::from_fn(grid(), |_| 3.5);
        let s = to_spectral(&f);
        assert_relative_eq!(s.data[[0, 0]].re, 3.5, max_relative = 1e-13);
        let off: f64 = s
            .data
            .iter()
            .skip(1)
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        assert!(off < 1e-13);
    }

    #[test]
    fn round_trip_and_parseval() {
        let f = ScalarField::from_fn(grid(), |x| {
            (0.7 * x[0]).sin() * (-0.2 * x[1] * x[1]).exp() + 0.1 * (x[0] * x[1]).cos()
        });
        let s = to_spectral(&f);
        let back = from_spectral(&s);
        let mut worst = 0.0f64;
        for (a, b) in f.data.iter().zip(back.data.iter()) {
            worst = worst.max((a - b).abs());
        }
        assert!(worst < 1e-13, "round trip error {worst}");

        // Parseval: h^2 sum f^2 = (2L)^2 sum |f_hat|^2
        let h2 = f.grid.h() * f.grid.h();
        let phys: f64 = f.data.iter().map(|v| v * v).sum::<f64>() * h2;
        let area = (2.0 * f.grid.half_length).powi(2);
        let spec: f64 = s.data.iter().map(|v| v.norm_sqr()).sum::<f64>() * area;
        assert_relative_eq!(phys, spec, max_relative = 1e-12);
    }

    #[test]
    fn biot_savart_inverts_curl() {
        // omega = d1 G(1,.): a dipole with zero mean, well inside the box
        let g = GridSpec::new(64, 12.0).unwrap();
        let omega = ScalarField::from_fn(g, |x| {
            kernels::gauss_deriv(MultiIndex::new(1, 0), SpaceTimePoint::new(1.0, x)).unwrap()
        });
        let u = biot_savart_velocity(&omega).unwrap();
        let back = curl(&u);
        let mut worst = 0.0f64;
        for (a, b) in back.data.iter().zip(omega.data.iter()) {
            worst = worst.max((a - b).abs());
        }
        assert!(worst < 1e-9, "curl round trip {worst}");

        let div = divergence(&u);
        assert!(div.max_abs() < 1e-10, "divergence {}", div.max_abs());
    }

    #[test]
    fn biot_savart_zero_field() {
        let u = biot_savart_velocity(&ScalarField::zeros(grid())).unwrap();
        assert_eq!(u.max_magnitude(), 0.0);
    }

    #[test]
    fn biot_savart_rejects_mean() {
        let f = ScalarField::from_fn(grid(), |x| (-x[0] * x[0] - x[1] * x[1]).exp());
        assert!(matches!(
            biot_savart_velocity(&f),
            Err(Error::NonzeroMean { .. })
        ));
    }

    #[test]
    fn rigid_rotation_curl() {
        // u = (-x2, x1) * window: curl = 2 well inside the window
        let g = GridSpec::new(128, 8.0).unwrap();
        let window = |x: [f64; 2]| (-((x[0] * x[0] + x[1] * x[1]) / 9.0).powi(4)).exp();
        let u = VectorField::from_fn(g, |x| {
            let w = window(x);
            [-x[1] * w, x[0] * w]
        });
        let c = curl(&u);
        let center = g.n / 2; // x = 0
        assert_relative_eq!(c.data[[center, center]], 2.0, max_relative = 1e-6);
    }

    #[test]
    fn dealias_zeroes_high_modes() {
        let f = ScalarField::from_fn(grid(), |x| {
            (std::f64::consts::PI / 8.0 * 30.0 * x[0]).cos()
        });
        let mut s = to_spectral(&f);
        s.dealias();
        let back = from_spectral(&s);
        assert!(back.max_abs() < 1e-12);
    }

    #[test]
    fn symmetry_defect_zero_for_real_fields() {
        let f = ScalarField::from_fn(grid(), |x| (x[0] - 0.3 * x[1]).sin());
        let s = to_spectral(&f);
        assert!(s.symmetry_defect() < 1e-14);
        assert!(s.deriv(0).symmetry_defect() < 1e-13);
    }
}
