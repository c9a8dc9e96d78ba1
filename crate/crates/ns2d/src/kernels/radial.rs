//! Radial building blocks of the kernel closed forms.
//!
//! With `rho = |x|^2 / 4t`, every kernel in the crate is a finite sum of
//! monomials times either `exp(-rho)` or a derivative of
//!
//! ```text
//! phi(rho) = (1 - e^{-rho}) / rho = integral_0^1 e^{-rho u} du.
//! ```
//!
//! The k-th derivative is `phi^(k)(rho) = (-1)^k I_k(rho)` with
//! `I_k(rho) = integral_0^1 u^k e^{-rho u} du`, which we evaluate to near
//! machine precision on all of `rho >= 0`.

use crate::tolerances::RADIAL_SERIES_RHO;

/// `I_k(rho) = integral_0^1 u^k e^{-rho u} du`.
pub fn i_k(k: u32, rho: f64) -> f64 {
    debug_assert!(rho >= 0.0);
    if rho <= RADIAL_SERIES_RHO {
        return i_k_series(k, rho);
    }
    // tail = e^{-rho} * sum_{j<=k} rho^j / j!  equals 1 - P(k+1, rho); the
    // direct formula I_k = k! (1 - tail) / rho^{k+1} is safe while the
    // subtraction keeps enough signal.
    let mut term = 1.0;
    let mut partial = 1.0;
    for j in 1..=k {
        term *= rho / j as f64;
        partial += term;
    }
    let tail = (-rho).exp() * partial;
    if tail <= 0.9 {
        let mut kfac = 1.0;
        for j in 2..=k {
            kfac *= j as f64;
        }
        return kfac * (1.0 - tail) / rho.powi(k as i32 + 1);
    }
    i_k_backward(k, rho)
}

fn i_k_series(k: u32, rho: f64) -> f64 {
    // sum_j (-rho)^j / (j! (k + j + 1)), alternating with fast decay.
    let mut sum = 0.0;
    let mut term = 1.0; // (-rho)^j / j!
    for j in 0..200u32 {
        let contrib = term / (k as f64 + j as f64 + 1.0);
        sum += contrib;
        if contrib.abs() < 1e-18 * sum.abs().max(1e-30) {
            break;
        }
        term *= -rho / (j as f64 + 1.0);
    }
    sum
}

fn i_k_backward(k: u32, rho: f64) -> f64 {
    // I_{j-1} = (rho I_j + e^{-rho}) / j, contracting while j > rho. Seed
    // error at j = big is damped to below 1e-15 by the descent.
    let big = k as usize + 60 + rho.ceil() as usize;
    let e = (-rho).exp();
    let mut val = 1.0 / (big as f64 + 1.0);
    for j in (k as usize + 1..=big).rev() {
        val = (rho * val + e) / j as f64;
    }
    val
}

/// `phi^{(k)}(rho)`, the k-th derivative of `(1 - e^{-rho})/rho`.
pub fn phi_deriv(k: u32, rho: f64) -> f64 {
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    sign * i_k(k, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Brute-force oracle: composite Simpson on [0,1] with many panels.
    fn i_k_quadrature(k: u32, rho: f64) -> f64 {
        let n = 20_000;
        let h = 1.0 / n as f64;
        let f = |u: f64| u.powi(k as i32) * (-rho * u).exp();
        let mut s = f(0.0) + f(1.0);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn matches_quadrature_across_branches() {
        for &rho in &[0.0, 1e-8, 0.3, 0.9999, 1.0001, 2.5, 6.0, 14.0, 40.0, 250.0] {
            for k in 0..=9u32 {
                let exact = i_k_quadrature(k, rho);
                let got = i_k(k, rho);
                assert_relative_eq!(got, exact, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn known_values() {
        // I_0(rho) = (1 - e^{-rho})/rho.
        assert_relative_eq!(i_k(0, 2.0), (1.0 - (-2.0f64).exp()) / 2.0, max_relative = 1e-14);
        // I_k(0) = 1/(k+1).
        assert_relative_eq!(i_k(3, 0.0), 0.25, max_relative = 1e-15);
    }

    #[test]
    fn derivative_consistency() {
        // phi^{(k+1)} is the rho-derivative of phi^{(k)} (central difference).
        for &rho in &[0.5, 1.5, 5.0] {
            for k in 0..4 {
                let h = 1e-5;
                let fd = (phi_deriv(k, rho + h) - phi_deriv(k, rho - h)) / (2.0 * h);
                assert_relative_eq!(fd, phi_deriv(k + 1, rho), max_relative = 1e-8);
            }
        }
    }
}
