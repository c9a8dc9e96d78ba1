//! Weighted Lebesgue norms, moments and the vorticity flux product.

use super::field::{ScalarField, VectorField};
use super::grid::GridSpec;
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::par;
use crate::tolerances::{GRID_CONVERGENCE_REL, MU_SUBBOX_THRESHOLD, SUBBOX_FRACTION};

/// The representative Lebesgue exponents; `gamma_q = 1 - 1/q` is the decay
/// rate of the 2D Gaussian in `L^q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lq {
    One,
    Two,
    Inf,
}

impl Lq {
    pub fn gamma(&self) -> f64 {
        match self {
            Lq::One => 0.0,
            Lq::Two => 0.5,
            Lq::Inf => 1.0,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Lq::One => "1",
            Lq::Two => "2",
            Lq::Inf => "inf",
        }
    }

    pub fn parse(s: &str) -> Result<Lq> {
        match s {
            "1" => Ok(Lq::One),
            "2" => Ok(Lq::Two),
            "inf" | "oo" => Ok(Lq::Inf),
            other => Err(Error::NormParameter(format!("q must be 1, 2 or inf, got {other}"))),
        }
    }
}

/// Anything with grid samples and a pointwise magnitude.
pub trait GridSampled {
    fn grid(&self) -> &GridSpec;
    fn magnitude(&self, i: usize, j: usize) -> f64;
}

impl GridSampled for ScalarField {
    fn grid(&self) -> &GridSpec {
        &self.grid
    }
    fn magnitude(&self, i: usize, j: usize) -> f64 {
        self.data[[i, j]].abs()
    }
}

impl GridSampled for VectorField {
    fn grid(&self) -> &GridSpec {
        &self.grid
    }
    fn magnitude(&self, i: usize, j: usize) -> f64 {
        self.magnitude_at(i, j)
    }
}

/// `|| |x|^mu f ||_q` by trapezoidal quadrature (max over the grid for
/// `q = infinity`). Weights with `mu >= 4` are restricted to the sub-box
/// `|x| <= 0.9 L` where the weight does not amplify corner truncation.
pub fn weighted_norm<F: GridSampled + Sync>(f: &F, mu: f64, q: Lq) -> Result<f64> {
    let cutoff = if mu >= MU_SUBBOX_THRESHOLD {
        Some(SUBBOX_FRACTION * f.grid().half_length)
    } else {
        None
    };
    weighted_norm_with(f, mu, q, cutoff)
}

/// [`weighted_norm`] with an explicit radial cutoff (`None` = whole box).
pub fn weighted_norm_with<F: GridSampled + Sync>(
    f: &F,
    mu: f64,
    q: Lq,
    cutoff: Option<f64>,
) -> Result<f64> {
    if mu < 0.0 {
        return Err(Error::NormParameter(format!("mu must be >= 0, got {mu}")));
    }
    let grid = *f.grid();
    let n = grid.n;
    let rmax = cutoff.unwrap_or(f64::INFINITY);
    let weight = |x: [f64; 2]| -> f64 {
        let r = x[0].hypot(x[1]);
        if r > rmax {
            return 0.0;
        }
        if mu == 0.0 {
            1.0
        } else {
            r.powf(mu)
        }
    };
    let h2 = grid.h() * grid.h();
    let val = match q {
        Lq::One => {
            h2 * par::sum_rows(n, |i| {
                let x1 = grid.coord(i);
                (0..n)
                    .map(|j| weight([x1, grid.coord(j)]) * f.magnitude(i, j))
                    .sum::<f64>()
            })
        }
        Lq::Two => (h2 * par::sum_rows(n, |i| {
            let x1 = grid.coord(i);
            (0..n)
                .map(|j| {
                    let w = weight([x1, grid.coord(j)]) * f.magnitude(i, j);
                    w * w
                })
                .sum::<f64>()
        }))
        .sqrt(),
        Lq::Inf => par::max_rows(n, |i| {
            let x1 = grid.coord(i);
            (0..n)
                .map(|j| weight([x1, grid.coord(j)]) * f.magnitude(i, j))
                .fold(0.0f64, f64::max)
        }),
    };
    Ok(val)
}

/// Fraction of a weighted L1/L2 norm contributed by the outer shell
/// `|x| > shell_start`; a truncation-domination diagnostic.
pub fn shell_fraction<F: GridSampled + Sync>(f: &F, mu: f64, q: Lq, shell_start: f64) -> f64 {
    let total = weighted_norm(f, mu, q).unwrap_or(0.0);
    if total == 0.0 {
        return 0.0;
    }
    let grid = *f.grid();
    let n = grid.n;
    let rmax = if mu >= MU_SUBBOX_THRESHOLD {
        SUBBOX_FRACTION * grid.half_length
    } else {
        f64::INFINITY
    };
    let h2 = grid.h() * grid.h();
    let shell = par::sum_rows(n, |i| {
        let x1 = grid.coord(i);
        (0..n)
            .map(|j| {
                let x = [x1, grid.coord(j)];
                let r = x[0].hypot(x[1]);
                if r <= shell_start || r > rmax {
                    return 0.0;
                }
                let w = if mu == 0.0 { 1.0 } else { r.powf(mu) };
                let m = w * f.magnitude(i, j);
                match q {
                    Lq::One => m,
                    Lq::Two => m * m,
                    Lq::Inf => m,
                }
            })
            .sum::<f64>()
    });
    match q {
        Lq::One => h2 * shell / total,
        Lq::Two => (h2 * shell).sqrt() / total,
        Lq::Inf => {
            let shell_max = par::max_rows(n, |i| {
                let x1 = grid.coord(i);
                (0..n)
                    .map(|j| {
                        let x = [x1, grid.coord(j)];
                        let r = x[0].hypot(x[1]);
                        if r <= shell_start || r > rmax {
                            return 0.0;
                        }
                        let w = if mu == 0.0 { 1.0 } else { r.powf(mu) };
                        w * f.magnitude(i, j)
                    })
                    .fold(0.0f64, f64::max)
            });
            shell_max / total
        }
    }
}

/// `integral (-y)^alpha f(y) dy` for `|alpha| <= 7`.
pub fn moment(f: &ScalarField, alpha: MultiIndex) -> Result<f64> {
    if alpha.order() > 7 {
        return Err(Error::UnsupportedOrder {
            got: alpha.order(),
            limit: 7,
        });
    }
    let grid = f.grid;
    let n = grid.n;
    let h2 = grid.h() * grid.h();
    Ok(h2 * par::sum_rows(n, |i| {
        let x1 = grid.coord(i);
        (0..n)
            .map(|j| alpha.pow_neg([x1, grid.coord(j)]) * f.data[[i, j]])
            .sum::<f64>()
    }))
}

/// Componentwise `integral (-y)^beta v(y) dy` of a vector field.
pub fn vector_moment(v: &VectorField, beta: MultiIndex) -> Result<[f64; 2]> {
    if beta.order() > 7 {
        return Err(Error::UnsupportedOrder {
            got: beta.order(),
            limit: 7,
        });
    }
    let grid = v.grid;
    let n = grid.n;
    let h2 = grid.h() * grid.h();
    let s = par::sum_rows2(n, |i| {
        let x1 = grid.coord(i);
        let mut acc = [0.0, 0.0];
        for j in 0..n {
            let w = beta.pow_neg([x1, grid.coord(j)]);
            acc[0] += w * v.x[[i, j]];
            acc[1] += w * v.y[[i, j]];
        }
        acc
    });
    Ok([h2 * s[0], h2 * s[1]])
}

/// Pointwise flux `omega * u` and its integral over the box.
pub fn pointwise_product(omega: &ScalarField, u: &VectorField) -> Result<(VectorField, [f64; 2])> {
    omega.grid.same_shape(&u.grid)?;
    let out = VectorField {
        grid: omega.grid,
        x: &omega.data * &u.x,
        y: &omega.data * &u.y,
    };
    let integral = vector_moment(&out, MultiIndex::ZERO)?;
    Ok((out, integral))
}

/// Relative change of a reported norm when the resolution doubles; values
/// above [`GRID_CONVERGENCE_REL`] mean the quantity is unresolved.
pub fn grid_convergence_defect(coarse: f64, fine: f64) -> f64 {
    if fine == 0.0 {
        coarse.abs()
    } else {
        ((coarse - fine) / fine).abs()
    }
}

pub fn is_grid_converged(coarse: f64, fine: f64) -> bool {
    grid_convergence_defect(coarse, fine) < GRID_CONVERGENCE_REL
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{self, SpaceTimePoint};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn gauss_field(grid: GridSpec, t: f64) -> ScalarField {
        ScalarField::from_fn(grid, |x| kernels::gauss(SpaceTimePoint::new(t, x)).unwrap())
    }

    #[test]
    fn gaussian_mass_and_sup() {
        let grid = GridSpec::new(128, 12.0).unwrap();
        let g = gauss_field(grid, 1.0);
        let l1 = weighted_norm(&g, 0.0, Lq::One).unwrap();
        assert_relative_eq!(l1, 1.0, max_relative = 1e-8);
        let linf = weighted_norm(&g, 0.0, Lq::Inf).unwrap();
        assert_relative_eq!(linf, 1.0 / (4.0 * PI), max_relative = 1e-12);
        // || |x|^2 G(1) ||_1 = 4t = 4
        let w = weighted_norm(&g, 2.0, Lq::One).unwrap();
        assert_relative_eq!(w, 4.0, max_relative = 1e-6);
    }

    #[test]
    fn moments_of_gaussian_and_dipole() {
        let grid = GridSpec::new(128, 12.0).unwrap();
        let g = gauss_field(grid, 1.0);
        assert_relative_eq!(moment(&g, MultiIndex::ZERO).unwrap(), 1.0, max_relative = 1e-8);

        // moment(d1 G, (1,0)) = +1 under the (-y)^alpha convention
        let d = ScalarField::from_fn(grid, |x| {
            kernels::gauss_deriv(MultiIndex::new(1, 0), SpaceTimePoint::new(1.0, x)).unwrap()
        });
        assert_relative_eq!(
            moment(&d, MultiIndex::new(1, 0)).unwrap(),
            1.0,
            max_relative = 1e-8
        );
        // laplacian of a smooth decaying function has vanishing low moments
        let lap = ScalarField::from_fn(grid, |x| {
            let r2 = x[0] * x[0] + x[1] * x[1];
            (4.0 * r2 - 4.0) * (-r2).exp()
        });
        for alpha in [MultiIndex::ZERO, MultiIndex::new(1, 0), MultiIndex::new(0, 1)] {
            assert!(moment(&lap, alpha).unwrap().abs() < 1e-10);
        }
        assert!(moment(&g, MultiIndex::new(5, 3)).is_err());
    }

    #[test]
    fn flux_integral_cancels_for_biot_savart_pairs() {
        let grid = GridSpec::new(128, 10.0).unwrap();
        let omega = ScalarField::from_fn(grid, |x| {
            kernels::gauss_deriv(MultiIndex::new(1, 1), SpaceTimePoint::new(0.8, x)).unwrap()
        });
        let u = super::super::field::biot_savart_velocity(&omega).unwrap();
        let (_fu, integral) = pointwise_product(&omega, &u).unwrap();
        let scale = weighted_norm(&omega, 0.0, Lq::Two).unwrap()
            * weighted_norm(&u, 0.0, Lq::Two).unwrap();
        assert!(integral[0].abs() <= 1e-8 * scale);
        assert!(integral[1].abs() <= 1e-8 * scale);
    }

    #[test]
    fn zero_flux_for_zero_vorticity() {
        let grid = GridSpec::new(64, 8.0).unwrap();
        let omega = ScalarField::zeros(grid);
        let u = VectorField::from_fn(grid, |x| [x[1], -x[0]]);
        let (f, integral) = pointwise_product(&omega, &u).unwrap();
        assert_eq!(f.max_magnitude(), 0.0);
        assert_eq!(integral, [0.0, 0.0]);
    }

    #[test]
    fn norm_scaling_under_heat_time() {
        // || |x|^mu grad^beta R^perp R G(t) ||_q = t^{-gamma_q - |beta|/2 + mu/2} * value at t=1;
        // the box must be large enough that the polynomial kernel tail sits
        // below the 1e-3 target.
        let grid = GridSpec::new(512, 64.0).unwrap();
        let beta = MultiIndex::new(1, 0);
        let entries = |t: f64| {
            VectorField::from_fn(grid, |x| {
                let m = kernels::riesz_tensor_deriv(0, beta, SpaceTimePoint::new(t, x)).unwrap();
                [m[0][0], m[1][0]]
            })
        };
        let (mu, q) = (1.0, Lq::Two);
        let a = weighted_norm(&entries(1.0), mu, q).unwrap();
        let b = weighted_norm(&entries(2.0), mu, q).unwrap();
        let expect = 2.0f64.powf(-q.gamma() - 0.5 + 0.5);
        assert_relative_eq!(b / a, expect, max_relative = 1e-3);
    }

    #[test]
    fn unsupported_q_is_a_parse_error() {
        assert!(Lq::parse("3").is_err());
        assert_eq!(Lq::parse("inf").unwrap(), Lq::Inf);
    }
}
