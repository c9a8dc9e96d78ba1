//! Uniform periodic grid on the square box `[-L, L)^2`.

use crate::error::{Error, Result};

/// Grid geometry: `n` points per axis (power of two), half box length `L`,
/// and the dealiasing fraction for quadratic products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    pub half_length: f64,
    pub dealias_fraction: f64,
}

impl GridSpec {
    pub fn new(n: usize, half_length: f64) -> Result<Self> {
        Self::with_dealias(n, half_length, 2.0 / 3.0)
    }

    pub fn with_dealias(n: usize, half_length: f64, dealias_fraction: f64) -> Result<Self> {
        if !n.is_power_of_two() || n < 4 {
            return Err(Error::InvalidGrid(format!(
                "n must be a power of two >= 4, got {n}"
            )));
        }
        if !(half_length > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "half length must be positive, got {half_length}"
            )));
        }
        if !(dealias_fraction > 0.0 && dealias_fraction <= 1.0) {
            return Err(Error::InvalidGrid(format!(
                "dealias fraction must lie in (0,1], got {dealias_fraction}"
            )));
        }
        Ok(Self {
            n,
            half_length,
            dealias_fraction,
        })
    }

    /// Grid spacing `h = 2L/n`.
    pub fn h(&self) -> f64 {
        2.0 * self.half_length / self.n as f64
    }

    /// Physical coordinate of index `i` along either axis.
    pub fn coord(&self, i: usize) -> f64 {
        -self.half_length + i as f64 * self.h()
    }

    /// Signed integer mode of FFT bin `i` (`0..n/2`, then negative).
    pub fn signed_mode(&self, i: usize) -> i64 {
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Wavenumber of FFT bin `i`: integer multiple of `pi / L`.
    pub fn wavenumber(&self, i: usize) -> f64 {
        self.signed_mode(i) as f64 * std::f64::consts::PI / self.half_length
    }

    /// Largest retained mode magnitude under the dealias rule.
    pub fn dealias_cutoff(&self) -> i64 {
        ((self.n as f64) * self.dealias_fraction / 2.0).floor() as i64
    }

    pub fn same_shape(&self, other: &GridSpec) -> Result<()> {
        if self.n == other.n && self.half_length == other.half_length {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "grid {}x{} (L={}) vs {}x{} (L={})",
                self.n, self.n, self.half_length, other.n, other.n, other.half_length
            )))
        }
    }

    /// Grid rescaled by `lambda` in space (`L -> lambda L`, same `n`), so that
    /// point `i` sits at `lambda` times its old coordinate.
    pub fn scaled(&self, lambda: f64) -> GridSpec {
        GridSpec {
            n: self.n,
            half_length: self.half_length * lambda,
            dealias_fraction: self.dealias_fraction,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_geometry() {
        let g = GridSpec::new(8, 4.0).unwrap();
        assert_eq!(g.h(), 1.0);
        assert_eq!(g.coord(0), -4.0);
        assert_eq!(g.coord(7), 3.0);
        assert_eq!(g.signed_mode(3), 3);
        assert_eq!(g.signed_mode(4), -4);
        assert_eq!(g.signed_mode(7), -1);
        assert_eq!(g.dealias_cutoff(), 2);
        assert!(GridSpec::new(12, 4.0).is_err());
        assert!(GridSpec::new(8, -1.0).is_err());
    }
}
