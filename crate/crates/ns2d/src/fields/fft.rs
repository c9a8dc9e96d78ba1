//! Cached 2D complex FFT built on rustfft, row-parallel.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use ndarray::Array2;
use num_complex::Complex64;
use once_cell::sync::Lazy;
use rustfft::{Fft, FftPlanner};

use crate::par;

pub struct Fft2 {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

static CACHE: Lazy<Mutex<HashMap<usize, Arc<Fft2>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Planner for size `n x n`, cached per `n`.
pub fn plan(n: usize) -> Arc<Fft2> {
    let mut cache = CACHE.lock().unwrap();
    cache
        .entry(n)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            Arc::new(Fft2 {
                n,
                forward: planner.plan_fft_forward(n),
                inverse: planner.plan_fft_inverse(n),
            })
        })
        .clone()
}

fn transpose(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    let src = a.as_slice().expect("standard layout");
    let mut out = Array2::zeros((n, n));
    {
        let dst = out.as_slice_mut().unwrap();
        par::for_each_row(dst, n, |j, row| {
            for (i, v) in row.iter_mut().enumerate() {
                *v = src[i * n + j];
            }
        });
    }
    out
}

impl Fft2 {
    fn rows(&self, a: &mut Array2<Complex64>, forward: bool) {
        let plan = if forward {
            self.forward.clone()
        } else {
            self.inverse.clone()
        };
        let n = self.n;
        let data = a.as_slice_mut().expect("standard layout");
        par::for_each_row(data, n, |_, row| {
            let mut scratch = vec![Complex64::ZERO; plan.get_inplace_scratch_len()];
            plan.process_with_scratch(row, &mut scratch);
        });
    }

    /// Unnormalized forward transform over both axes.
    pub fn forward(&self, a: &mut Array2<Complex64>) {
        self.rows(a, true);
        let mut t = transpose(a);
        self.rows(&mut t, true);
        *a = transpose(&t);
    }

    /// Unnormalized inverse transform over both axes.
    pub fn inverse(&self, a: &mut Array2<Complex64>) {
        self.rows(a, false);
        let mut t = transpose(a);
        self.rows(&mut t, false);
        *a = transpose(&t);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_identity_over_n_squared() {
        let n = 16;
        let f = plan(n);
        let mut a = Array2::from_shape_fn((n, n), |(i, j)| {
            Complex64::new((i * 7 + j) as f64 * 0.1, (j * 3) as f64 * 0.2)
        });
        let orig = a.clone();
        f.forward(&mut a);
        f.inverse(&mut a);
        let scale = (n * n) as f64;
        for (x, y) in a.iter().zip(orig.iter()) {
            assert!((x / scale - y).norm() < 1e-12);
        }
    }
}
