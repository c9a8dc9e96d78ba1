//! The `J_m` space-time integrals.
//!
//! `J_m(t) = integral_0^t [ R^perp R G(t-s) * I_p(s) - Taylor_m(t; s) ] ds`
//! with `p = m + 2`. The smoothed convolution is applied spectrally per
//! `s`-node, the Taylor part uses the exact moment scaling of `I_p`, the
//! `s`-integral runs over dyadic panels with Gauss-Legendre nodes, and the
//! `epsilon -> 0` limit is Richardson-extrapolated from three nested cutoffs
//! (the integrand magnitude grows like `s^{-1/2}`, so increments shrink by
//! `1/sqrt(2)` per halving).

use num_complex::Complex64;

use super::coeffs::ExpansionCoefficients;
use super::profiles::{self, ProfileKind};
use crate::error::{Error, Result};
use crate::fields::{from_spectral, to_spectral, GridSpec, ScalarField, VectorField};
use crate::kernels::oracle::gauss_legendre_unit;
use crate::multi_index::MultiIndex;
use crate::tolerances::{JM_EPS0_DIVISOR, JM_NODES_PER_PANEL};

#[derive(Debug, Clone, Copy)]
pub struct JOptions {
    /// `epsilon_0 = t / eps0_divisor`.
    pub eps0_divisor: f64,
    /// Gauss-Legendre nodes per dyadic panel.
    pub nodes_per_panel: usize,
}

impl Default for JOptions {
    fn default() -> Self {
        Self {
            eps0_divisor: JM_EPS0_DIVISOR,
            nodes_per_panel: JM_NODES_PER_PANEL,
        }
    }
}

/// A built `J_m` with its cutoff-convergence certificate.
#[derive(Debug, Clone)]
pub struct JTerm {
    pub field: VectorField,
    /// Sup norms of the two epsilon-refinement increments (must shrink).
    pub eps_increments: [f64; 2],
    /// Total number of `s`-nodes used.
    pub nodes: usize,
}

/// Apply `R^perp R G(tau) *` to a (mean-free) vector field spectrally.
pub fn riesz_smoothed(v: &VectorField, tau: f64) -> VectorField {
    let grid = v.grid;
    let vx = to_spectral(&ScalarField {
        grid,
        data: v.x.clone(),
    });
    let vy = to_spectral(&ScalarField {
        grid,
        data: v.y.clone(),
    });
    let mut ox = vx.clone();
    let mut oy = vy.clone();
    let n = grid.n;
    for i in 0..n {
        let k1 = grid.wavenumber(i);
        for j in 0..n {
            let k2 = grid.wavenumber(j);
            let k2n = k1 * k1 + k2 * k2;
            if k2n == 0.0 {
                ox.data[[i, j]] = Complex64::ZERO;
                oy.data[[i, j]] = Complex64::ZERO;
                continue;
            }
            let damp = (-tau * k2n).exp() / k2n;
            let a = vx.data[[i, j]];
            let b = vy.data[[i, j]];
            // [[k1 k2, k2^2], [-k1^2, -k1 k2]] / |k|^2
            ox.data[[i, j]] = (a * (k1 * k2) + b * (k2 * k2)) * damp;
            oy.data[[i, j]] = (a * (-k1 * k1) + b * (-k1 * k2)) * damp;
        }
    }
    VectorField {
        grid,
        x: from_spectral(&ox).data,
        y: from_spectral(&oy).data,
    }
}

struct TaylorPart {
    field: VectorField,
    /// scalar factor is `sign * s^exponent`
    sign: f64,
    exponent: f64,
}

fn taylor_parts(
    c: &ExpansionCoefficients,
    m: u32,
    t: f64,
    grid: GridSpec,
) -> Result<Vec<TaylorPart>> {
    let p = m + 2;
    let mut parts = Vec::new();
    for order in 0..=m {
        for (l, beta) in crate::multi_index::time_space_of_order(order) {
            let norm = if m == 4 {
                (1..=l).map(|k| k as f64).product::<f64>() * beta.factorial()
            } else {
                beta.factorial()
            };
            let mm = c.i_moment(p, beta)?;
            let mut stack = profiles::KernelStack::new(2);
            push_tensor_block(&mut stack, l, beta, mm, 1.0 / norm);
            let planes = stack.eval_grid(t, grid);
            let mut it = planes.into_iter();
            let field = VectorField {
                grid,
                x: it.next().unwrap(),
                y: it.next().unwrap(),
            };
            parts.push(TaylorPart {
                field,
                sign: if l % 2 == 0 { 1.0 } else { -1.0 },
                exponent: l as f64 + (beta.order() as f64 - p as f64) / 2.0,
            });
        }
    }
    Ok(parts)
}

fn push_tensor_block(
    stack: &mut profiles::KernelStack,
    l: u32,
    beta: MultiIndex,
    coeff: [f64; 2],
    scale: f64,
) {
    use crate::kernels::KernelSum;
    for i in 0..2 {
        for j in 0..2 {
            let sum = KernelSum::riesz_entry(i, j).deriv_lt(l, beta);
            stack.push(i, &sum, coeff[j] * scale);
        }
    }
}

fn integrand(
    c: &ExpansionCoefficients,
    m: u32,
    t: f64,
    s: f64,
    grid: GridSpec,
    taylor: &[TaylorPart],
) -> Result<VectorField> {
    let p = m + 2;
    let ip = profiles::build_i_p(c, p, s, grid)?;
    let mut out = riesz_smoothed(&ip, t - s);
    for part in taylor {
        let a = part.sign * s.powf(part.exponent);
        out = out.sub(&part.field.scaled(a))?;
    }
    Ok(out)
}

/// Integrate the field-valued integrand over `[a, b]` with Gauss-Legendre.
fn panel(
    c: &ExpansionCoefficients,
    m: u32,
    t: f64,
    a: f64,
    b: f64,
    nodes: usize,
    grid: GridSpec,
    taylor: &[TaylorPart],
    acc: &mut VectorField,
) -> Result<usize> {
    let (xs, ws) = gauss_legendre_unit(nodes);
    for (x, w) in xs.iter().zip(&ws) {
        let s = a + (b - a) * x;
        let f = integrand(c, m, t, s, grid, taylor)?;
        *acc = acc.add(&f.scaled(w * (b - a)))?;
    }
    Ok(nodes)
}

/// Build `J_m(t)` with the epsilon-extrapolated lower cutoff.
pub fn build_j_m(
    c: &ExpansionCoefficients,
    m: u32,
    t: f64,
    grid: GridSpec,
    opts: JOptions,
) -> Result<JTerm> {
    ProfileKind::J(m).validate()?;
    if t <= 0.0 {
        return Err(Error::NonPositiveTime(t));
    }
    let eps0 = t / opts.eps0_divisor;
    let taylor = taylor_parts(c, m, t, grid)?;

    // dyadic breakpoints from t down to eps0
    let mut breaks = vec![t];
    let mut b = t;
    while b / 2.0 > eps0 * 1.000_001 {
        b /= 2.0;
        breaks.push(b);
    }
    breaks.push(eps0);

    let mut nodes = 0;
    let mut base = VectorField::zeros(grid);
    for w in breaks.windows(2) {
        nodes += panel(c, m, t, w[1], w[0], opts.nodes_per_panel, grid, &taylor, &mut base)?;
    }

    // refinement increments [eps0/2, eps0] and [eps0/4, eps0/2]
    let mut inc1 = VectorField::zeros(grid);
    nodes += panel(
        c,
        m,
        t,
        eps0 / 2.0,
        eps0,
        opts.nodes_per_panel,
        grid,
        &taylor,
        &mut inc1,
    )?;
    let mut inc2 = VectorField::zeros(grid);
    nodes += panel(
        c,
        m,
        t,
        eps0 / 4.0,
        eps0 / 2.0,
        opts.nodes_per_panel,
        grid,
        &taylor,
        &mut inc2,
    )?;

    let d1 = inc1.max_magnitude();
    let d2 = inc2.max_magnitude();
    if d2 > d1 * 1.000_001 && d2 > 1e-300 {
        return Err(Error::Integration(format!(
            "epsilon increments not shrinking: {d1:.3e} -> {d2:.3e}"
        )));
    }

    // J = J^{eps/4} + inc_tail, Richardson for sqrt(eps) convergence:
    // tail = inc2 / (sqrt(2) - 1)
    let tail_factor = 1.0 / (2.0f64.sqrt() - 1.0);
    let field = base
        .add(&inc1)?
        .add(&inc2)?
        .add(&inc2.scaled(tail_factor))?;

    Ok(JTerm {
        field,
        eps_increments: [d1, d2],
        nodes,
    })
}
