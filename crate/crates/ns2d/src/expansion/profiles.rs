//! Construction of the asymptotic profile terms on a grid.
//!
//! Every builder samples exact kernel closed forms weighted by scalar
//! coefficients, so each term inherits its parabolic self-similarity from the
//! kernels; evaluating at `(s, x)` IS the rescaled unit-time profile.

use num_rational::Ratio;

use super::coeffs::ExpansionCoefficients;
use crate::error::{Error, Result};
use crate::fields::{GridSpec, ScalarField, VectorField};
use crate::kernels::KernelSum;
use crate::multi_index::{of_order, time_space_of_order, MultiIndex};
use crate::par;

/// Profile kinds and their admissible orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    /// `U_m`, m = 1..4
    U(u32),
    /// `U_m^t`, m = 1..4
    UT(u32),
    /// `U_m^inf`, m = 1..4
    UInf(u32),
    /// `Omega_m`, m = 2..3
    Omega(u32),
    /// `I_p`, p = 5..6
    IP(u32),
    /// `K_m`, m = 3..4
    K(u32),
    /// `J_m`, m = 3..4
    J(u32),
    /// `V_m`, m = 3..4
    V(u32),
}

impl ProfileKind {
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            ProfileKind::U(m) | ProfileKind::UT(m) | ProfileKind::UInf(m) => (1..=4).contains(m),
            ProfileKind::Omega(m) => (2..=3).contains(m),
            ProfileKind::IP(p) => (5..=6).contains(p),
            ProfileKind::K(m) | ProfileKind::J(m) | ProfileKind::V(m) => (3..=4).contains(m),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid profile kind {self:?}")))
        }
    }

    /// Scaling index: `lambda^{2+s} F(lambda^2 t, lambda x) = F(t,x)`.
    pub fn scaling_index(&self) -> u32 {
        match self {
            ProfileKind::U(m)
            | ProfileKind::UT(m)
            | ProfileKind::UInf(m)
            | ProfileKind::Omega(m)
            | ProfileKind::K(m)
            | ProfileKind::J(m)
            | ProfileKind::V(m) => *m,
            ProfileKind::IP(p) => *p,
        }
    }

    pub fn label(&self) -> String {
        match self {
            ProfileKind::U(m) => format!("U_{m}"),
            ProfileKind::UT(m) => format!("U_{m}^t"),
            ProfileKind::UInf(m) => format!("U_{m}^inf"),
            ProfileKind::Omega(m) => format!("Omega_{m}"),
            ProfileKind::IP(p) => format!("I_{p}"),
            ProfileKind::K(m) => format!("K_{m}"),
            ProfileKind::J(m) => format!("J_{m}"),
            ProfileKind::V(m) => format!("V_{m}"),
        }
    }
}

/// A built vector term with its propagated horizon-tail uncertainty (sup-norm
/// bound) and a warning when some coefficient's tail tops a tenth of it.
#[derive(Debug, Clone)]
pub struct VectorTerm {
    pub field: VectorField,
    pub tail_linf: f64,
    pub tail_warning: bool,
}

/// Flattened kernel term for fast grid sweeps (rationals folded to floats).
struct FlatTerm {
    c: f64,
    tpow: i32,
    xp: (u32, u32),
    /// radial index: 0 = exp(-rho), k >= 1 = phi^{(k-1)}(rho)
    radial: usize,
}

/// A weighted batch of kernel sums targeting output planes; evaluated in one
/// sweep with the radial functions computed once per point.
pub struct KernelStack {
    terms: Vec<(usize, FlatTerm)>, // (target plane, term)
    max_phi: u32,
    targets: usize,
}

impl KernelStack {
    pub fn new(targets: usize) -> Self {
        Self {
            terms: Vec::new(),
            max_phi: 0,
            targets,
        }
    }

    /// Add `weight * sum` into plane `target`.
    pub fn push(&mut self, target: usize, sum: &KernelSum, weight: f64) {
        debug_assert!(target < self.targets);
        if weight == 0.0 {
            return;
        }
        for t in sum.raw_terms() {
            let (kind, k) = t.radial_kind();
            let radial = if kind == 0 {
                0
            } else {
                self.max_phi = self.max_phi.max(k);
                (k + 1) as usize
            };
            self.terms.push((
                target,
                FlatTerm {
                    c: ratio_to_f64(t.coefficient()) * weight / std::f64::consts::PI,
                    tpow: t.t_power(),
                    xp: t.x_powers(),
                    radial,
                },
            ));
        }
    }

    /// Evaluate all planes at `(t, x)`.
    pub fn eval_point(&self, t: f64, x: [f64; 2], out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.targets);
        out.iter_mut().for_each(|v| *v = 0.0);
        let rho = (x[0] * x[0] + x[1] * x[1]) / (4.0 * t);
        let expv = (-rho).exp();
        let mut phi = [0.0f64; 12];
        for k in 0..=self.max_phi as usize {
            phi[k] = crate::kernels::radial::phi_deriv(k as u32, rho);
        }
        for (target, term) in &self.terms {
            let r = if term.radial == 0 {
                expv
            } else {
                phi[term.radial - 1]
            };
            out[*target] += term.c
                * t.powi(term.tpow)
                * x[0].powi(term.xp.0 as i32)
                * x[1].powi(term.xp.1 as i32)
                * r;
        }
    }

    /// Evaluate over a grid into `targets` planes, row-parallel.
    pub fn eval_grid(&self, t: f64, grid: GridSpec) -> Vec<ndarray::Array2<f64>> {
        let n = grid.n;
        let rows = par::map_rows(n, |i| {
            let x1 = grid.coord(i);
            let mut planes = vec![vec![0.0f64; n]; self.targets];
            let mut buf = vec![0.0f64; self.targets];
            for j in 0..n {
                self.eval_point(t, [x1, grid.coord(j)], &mut buf);
                for (p, v) in planes.iter_mut().zip(&buf) {
                    p[j] = *v;
                }
            }
            planes
        });
        let mut out = vec![ndarray::Array2::zeros((n, n)); self.targets];
        for (i, planes) in rows.into_iter().enumerate() {
            for (t_idx, p) in planes.into_iter().enumerate() {
                out[t_idx]
                    .row_mut(i)
                    .iter_mut()
                    .zip(p)
                    .for_each(|(o, v)| *o = v);
            }
        }
        out
    }
}

fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn bs_sums(alpha: MultiIndex) -> [KernelSum; 2] {
    [
        KernelSum::bs_component(0).deriv(alpha),
        KernelSum::bs_component(1).deriv(alpha),
    ]
}

fn riesz_sums(l: u32, beta: MultiIndex) -> [[KernelSum; 2]; 2] {
    [
        [
            KernelSum::riesz_entry(0, 0).deriv_lt(l, beta),
            KernelSum::riesz_entry(0, 1).deriv_lt(l, beta),
        ],
        [
            KernelSum::riesz_entry(1, 0).deriv_lt(l, beta),
            KernelSum::riesz_entry(1, 1).deriv_lt(l, beta),
        ],
    ]
}

/// Push `scale * (d_t^l grad^beta R^perp R G) . coeff` onto planes (0, 1).
fn push_tensor(stack: &mut KernelStack, l: u32, beta: MultiIndex, coeff: [f64; 2], scale: f64) {
    let sums = riesz_sums(l, beta);
    for (i, row) in sums.iter().enumerate() {
        for (j, sum) in row.iter().enumerate() {
            stack.push(i, sum, coeff[j] * scale);
        }
    }
}

fn vector_field_from_planes(grid: GridSpec, mut planes: Vec<ndarray::Array2<f64>>) -> VectorField {
    let y = planes.pop().unwrap();
    let x = planes.pop().unwrap();
    VectorField { grid, x, y }
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveTime(t))
    }
}

/// `U_m(t) = -sum_{|alpha|=m+1} grad^alpha grad^perp (-Delta)^{-1} G(t) / alpha! * m_alpha`.
pub fn build_u_m(
    c: &ExpansionCoefficients,
    m: u32,
    t: f64,
    grid: GridSpec,
) -> Result<VectorField> {
    ProfileKind::U(m).validate()?;
    check_time(t)?;
    let mut stack = KernelStack::new(2);
    for alpha in of_order(m + 1) {
        let m_alpha = c.initial_moment(alpha)?;
        let w = -m_alpha / alpha.factorial();
        let sums = bs_sums(alpha);
        stack.push(0, &sums[0], w);
        stack.push(1, &sums[1], w);
    }
    Ok(vector_field_from_planes(grid, stack.eval_grid(t, grid)))
}

/// Index set and normalization of the horizon terms: `(l, beta)` pairs with
/// the divisor (`beta!` below order 4, `l! beta!` at order 4).
fn horizon_index_set(m: u32) -> Vec<(u32, MultiIndex, f64)> {
    let pairs: Vec<(u32, MultiIndex)> = if m <= 2 {
        of_order(m).into_iter().map(|b| (0, b)).collect()
    } else {
        time_space_of_order(m)
    };
    pairs
        .into_iter()
        .map(|(l, beta)| {
            let norm = if m == 4 {
                (1..=l).map(|k| k as f64).product::<f64>() * beta.factorial()
            } else {
                beta.factorial()
            };
            (l, beta, norm)
        })
        .collect()
}

fn horizon_coefficient(
    c: &ExpansionCoefficients,
    m: u32,
    l: u32,
    beta: MultiIndex,
    t: f64,
) -> Result<[f64; 2]> {
    match m {
        1 | 2 => c.table.s_at(l, beta, t),
        3 => c.table.ren3_at(l, beta, t),
        4 => c.table.ren4_at(l, beta, t),
        _ => unreachable!(),
    }
}

fn inf_coefficient(
    c: &ExpansionCoefficients,
    m: u32,
    l: u32,
    beta: MultiIndex,
) -> Result<super::coeffs::InfEntry> {
    match m {
        1 | 2 => c.s_inf_entry(l, beta),
        3 => c.ren3_inf_entry(l, beta),
        4 => c.ren4_inf_entry(l, beta),
        _ => unreachable!(),
    }
}

/// `U_m^t(t)`: horizon coefficients at `t`, renormalized at orders 3 and 4.
pub fn build_u_m_t(
    c: &ExpansionCoefficients,
    m: u32,
    t: f64,
    grid: GridSpec,
) -> Result<VectorField> {
    ProfileKind::UT(m).validate()?;
    check_time(t)?;
    let mut stack = KernelStack::new(2);
    for (l, beta, norm) in horizon_index_set(m) {
        let coeff = horizon_coefficient(c, m, l, beta, t)?;
        push_tensor(&mut stack, l, beta, coeff, 1.0 / norm);
    }
    Ok(vector_field_from_planes(grid, stack.eval_grid(t, grid)))
}

/// `U_m^inf(t)`: same kernel combination with infinite-horizon coefficients;
/// carries the propagated tail-uncertainty bound.
pub fn build_u_m_inf(
    c: &ExpansionCoefficients,
    m: u32,
    t: f64,
    grid: GridSpec,
) -> Result<VectorTerm> {
    ProfileKind::UInf(m).validate()?;
    check_time(t)?;
    let mut stack = KernelStack::new(2);
    let mut tail_ops: Vec<(u32, MultiIndex, f64, f64)> = Vec::new(); // (l, beta, tail, 1/norm)
    let mut warning = false;
    for (l, beta, norm) in horizon_index_set(m) {
        let entry = inf_coefficient(c, m, l, beta)?;
        warning |= entry.warn();
        push_tensor(&mut stack, l, beta, entry.value, 1.0 / norm);
        tail_ops.push((l, beta, entry.tail, 1.0 / norm));
    }
    let field = vector_field_from_planes(grid, stack.eval_grid(t, grid));
    // tail bound: sum of coefficient tails times the sup of each kernel block
    let mut tail_linf = 0.0;
    for (l, beta, tail, inv_norm) in tail_ops {
        if tail == 0.0 {
            continue;
        }
        let sums = riesz_sums(l, beta);
        let mut sup = 0.0f64;
        for row in &sums {
            for s in row {
                // kernel sup at time t over the grid diag sample
                let mut best = 0.0f64;
                for k in 0..64 {
                    let r = grid.half_length * (k as f64 + 0.5) / 64.0;
                    for ang in [0.0f64, 0.9, 2.1, 3.9, 5.2] {
                        best = best.max(s.eval(t, [r * ang.cos(), r * ang.sin()]).abs());
                    }
                }
                sup = sup.max(best);
            }
        }
        tail_linf += tail * inv_norm * sup * 2.0;
    }
    Ok(VectorTerm {
        field,
        tail_linf,
        tail_warning: warning,
    })
}

/// `Omega_m(t)`: vorticity profile; heat-kernel derivatives against initial
/// moments minus `grad^beta grad G . S_inf` terms.
pub fn build_omega_m(
    c: &ExpansionCoefficients,
    m: u32,
    t: f64,
    grid: GridSpec,
) -> Result<ScalarField> {
    ProfileKind::Omega(m).validate()?;
    check_time(t)?;
    let mut stack = KernelStack::new(1);
    let heat = KernelSum::heat();
    for alpha in of_order(m) {
        let m_alpha = c.initial_moment(alpha)?;
        stack.push(0, &heat.deriv(alpha), m_alpha / alpha.factorial());
    }
    for beta in of_order(m - 1) {
        let s = c.s_inf_entry(0, beta)?.value;
        for (k, sk) in s.iter().enumerate() {
            let e_k = if k == 0 {
                MultiIndex::new(beta.a1 + 1, beta.a2)
            } else {
                MultiIndex::new(beta.a1, beta.a2 + 1)
            };
            stack.push(0, &heat.deriv(e_k), -sk / beta.factorial());
        }
    }
    let planes = stack.eval_grid(t, grid);
    Ok(ScalarField {
        grid,
        data: planes.into_iter().next().unwrap(),
    })
}

/// `I_5 = Omega_2 (U_1 + U_1^inf)`, `I_6 = Omega_3 (U_1+U_1^inf) + Omega_2 (U_2+U_2^inf)`;
/// exactly self-similar of degree `2+p` since all factors are kernel sums
/// with constant coefficients.
pub fn build_i_p(c: &ExpansionCoefficients, p: u32, t: f64, grid: GridSpec) -> Result<VectorField> {
    ProfileKind::IP(p).validate()?;
    check_time(t)?;
    let u_sum = |m: u32| -> Result<VectorField> {
        let u = build_u_m(c, m, t, grid)?;
        let uinf = build_u_m_inf(c, m, t, grid)?;
        u.add(&uinf.field)
    };
    let scale_by = |omega: &ScalarField, u: &VectorField| VectorField {
        grid,
        x: &omega.data * &u.x,
        y: &omega.data * &u.y,
    };
    match p {
        5 => {
            let omega2 = build_omega_m(c, 2, t, grid)?;
            Ok(scale_by(&omega2, &u_sum(1)?))
        }
        _ => {
            let omega3 = build_omega_m(c, 3, t, grid)?;
            let omega2 = build_omega_m(c, 2, t, grid)?;
            scale_by(&omega3, &u_sum(1)?).add(&scale_by(&omega2, &u_sum(2)?))
        }
    }
}

/// `K_m(t)` from the exact antiderivatives `log(1+t)` and
/// `log(1+t) + (1+t)^{-1} - 1`; no numerical time integration.
pub fn build_k_m(c: &ExpansionCoefficients, m: u32, t: f64, grid: GridSpec) -> Result<VectorField> {
    ProfileKind::K(m).validate()?;
    check_time(t)?;
    let p = m + 2;
    let a = crate::solver::moments::time_integrals::log1p(t);
    let b = crate::solver::moments::time_integrals::s_over_1p2(t);
    let mut stack = KernelStack::new(2);
    // l = 0, |beta| = m: + A(t) M_beta / beta!
    for beta in of_order(m) {
        let mm = c.i_moment(p, beta)?;
        push_tensor(&mut stack, 0, beta, mm, a / beta.factorial());
    }
    // l = 1, |beta| = m-2: - B(t) M_beta / beta!  (the l! is 1)
    for beta in of_order(m - 2) {
        let mm = c.i_moment(p, beta)?;
        push_tensor(&mut stack, 1, beta, mm, -b / beta.factorial());
    }
    Ok(vector_field_from_planes(grid, stack.eval_grid(t, grid)))
}

/// `V_m(t)`: tail integrals of the renormalization profiles, reduced by the
/// scaling identity to exact power laws in `s`.
pub fn build_v_m(c: &ExpansionCoefficients, m: u32, t: f64, grid: GridSpec) -> Result<VectorTerm> {
    ProfileKind::V(m).validate()?;
    check_time(t)?;
    let p = m + 2;
    let orders = match m {
        3 => vec![(0u32, 1u32), (0, 2)],
        _ => vec![(0, 1), (0, 2), (1, 0), (0, 3), (1, 1)],
    };
    let mut stack = KernelStack::new(2);
    for (l, border) in orders {
        for beta in of_order(border) {
            let mm = c.i_moment(p, beta)?;
            // integral_t^inf s^{l + (|beta|-p)/2} ds
            let e = l as f64 + (beta.order() as f64 - p as f64) / 2.0;
            if e >= -1.0 {
                return Err(Error::NonIntegrableTail(e));
            }
            let tail_integral = t.powf(e + 1.0) / (e + 1.0).abs();
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            let scale = -sign * tail_integral / beta.factorial();
            push_tensor(&mut stack, l, beta, mm, scale);
        }
    }
    let field = vector_field_from_planes(grid, stack.eval_grid(t, grid));
    let rel = c.i_moment_rel_tail();
    let sup = field.max_magnitude();
    Ok(VectorTerm {
        field,
        tail_linf: rel * sup,
        tail_warning: rel > crate::tolerances::TAIL_WARN_FRACTION,
    })
}

/// Symbolic curl of `U_{m-1} + U_{m-1}^inf` evaluated on the grid: the
/// differentiation runs through the kernel tables, independently of the
/// heat-kernel route that defines `Omega_m`.
pub fn build_curl_of_u_sum(
    c: &ExpansionCoefficients,
    m: u32,
    t: f64,
    grid: GridSpec,
) -> Result<ScalarField> {
    ProfileKind::Omega(m).validate()?;
    check_time(t)?;
    let mm = m - 1;
    let mut stack = KernelStack::new(1);
    // curl U_{m-1}: -sum grad^alpha curl(bs) m_alpha/alpha!, curl = d1 b2 - d2 b1
    for alpha in of_order(mm + 1) {
        let w = -c.initial_moment(alpha)?/ alpha.factorial();
        let b = bs_sums(alpha);
        stack.push(0, &b[1].dx(0), w);
        stack.push(0, &b[0].dx(1), -w);
    }
    // curl U_{m-1}^inf
    for beta in of_order(mm) {
        let entry = c.s_inf_entry(0, beta)?;
        let w = 1.0 / beta.factorial();
        let sums = riesz_sums(0, beta);
        for j in 0..2 {
            stack.push(0, &sums[1][j].dx(0), w * entry.value[j]);
            stack.push(0, &sums[0][j].dx(1), -w * entry.value[j]);
        }
    }
    let planes = stack.eval_grid(t, grid);
    Ok(ScalarField {
        grid,
        data: planes.into_iter().next().unwrap(),
    })
}

/// Pointwise evaluation of a vector profile at arbitrary points (scaling
/// checks); same code path as the grid builders.
pub fn eval_term_at_points(
    c: &ExpansionCoefficients,
    kind: ProfileKind,
    t: f64,
    points: &[[f64; 2]],
) -> Result<Vec<[f64; 2]>> {
    kind.validate()?;
    check_time(t)?;
    let mut stack = KernelStack::new(2);
    match kind {
        ProfileKind::U(m) => {
            for alpha in of_order(m + 1) {
                let w = -c.initial_moment(alpha)? / alpha.factorial();
                let sums = bs_sums(alpha);
                stack.push(0, &sums[0], w);
                stack.push(1, &sums[1], w);
            }
        }
        ProfileKind::UT(m) => {
            for (l, beta, norm) in horizon_index_set(m) {
                let coeff = horizon_coefficient(c, m, l, beta, t)?;
                push_tensor(&mut stack, l, beta, coeff, 1.0 / norm);
            }
        }
        ProfileKind::UInf(m) => {
            for (l, beta, norm) in horizon_index_set(m) {
                let entry = inf_coefficient(c, m, l, beta)?;
                push_tensor(&mut stack, l, beta, entry.value, 1.0 / norm);
            }
        }
        ProfileKind::K(m) => {
            let p = m + 2;
            let a = crate::solver::moments::time_integrals::log1p(t);
            let b = crate::solver::moments::time_integrals::s_over_1p2(t);
            for beta in of_order(m) {
                push_tensor(&mut stack, 0, beta, c.i_moment(p, beta)?, a / beta.factorial());
            }
            for beta in of_order(m - 2) {
                push_tensor(&mut stack, 1, beta, c.i_moment(p, beta)?, -b / beta.factorial());
            }
        }
        ProfileKind::V(m) => {
            let term_grid = GridSpec::new(4, 1.0)?;
            let _ = term_grid;
            let tmp = build_v_m_stack(c, m, t)?;
            return Ok(points
                .iter()
                .map(|&x| {
                    let mut buf = [0.0f64; 2];
                    tmp.eval_point(t, x, &mut buf[..].as_mut());
                    buf
                })
                .collect());
        }
        ProfileKind::IP(p) => {
            return points
                .iter()
                .map(|&x| eval_i_p_point(c, p, t, x))
                .collect();
        }
        ProfileKind::Omega(_) | ProfileKind::J(_) => {
            return Err(Error::Config(format!(
                "{} is not evaluated pointwise here",
                kind.label()
            )))
        }
    }
    Ok(points
        .iter()
        .map(|&x| {
            let mut buf = [0.0f64; 2];
            stack.eval_point(t, x, &mut buf[..].as_mut());
            buf
        })
        .collect())
}

fn build_v_m_stack(c: &ExpansionCoefficients, m: u32, t: f64) -> Result<KernelStack> {
    let p = m + 2;
    let orders = match m {
        3 => vec![(0u32, 1u32), (0, 2)],
        _ => vec![(0, 1), (0, 2), (1, 0), (0, 3), (1, 1)],
    };
    let mut stack = KernelStack::new(2);
    for (l, border) in orders {
        for beta in of_order(border) {
            let mm = c.i_moment(p, beta)?;
            let e = l as f64 + (beta.order() as f64 - p as f64) / 2.0;
            if e >= -1.0 {
                return Err(Error::NonIntegrableTail(e));
            }
            let tail_integral = t.powf(e + 1.0) / (e + 1.0).abs();
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            push_tensor(&mut stack, l, beta, mm, -sign * tail_integral / beta.factorial());
        }
    }
    Ok(stack)
}

/// Scalar evaluation of `Omega_m` at one point.
pub fn eval_omega_m_point(
    c: &ExpansionCoefficients,
    m: u32,
    t: f64,
    x: [f64; 2],
) -> Result<f64> {
    ProfileKind::Omega(m).validate()?;
    check_time(t)?;
    let heat = KernelSum::heat();
    let mut acc = 0.0;
    for alpha in of_order(m) {
        acc += heat.deriv(alpha).eval(t, x) * c.initial_moment(alpha)? / alpha.factorial();
    }
    for beta in of_order(m - 1) {
        let s = c.s_inf_entry(0, beta)?.value;
        for (k, sk) in s.iter().enumerate() {
            let e_k = if k == 0 {
                MultiIndex::new(beta.a1 + 1, beta.a2)
            } else {
                MultiIndex::new(beta.a1, beta.a2 + 1)
            };
            acc -= heat.deriv(e_k).eval(t, x) * sk / beta.factorial();
        }
    }
    Ok(acc)
}

/// Pointwise `I_p(t, x)`.
pub fn eval_i_p_point(c: &ExpansionCoefficients, p: u32, t: f64, x: [f64; 2]) -> Result<[f64; 2]> {
    let u_sum_at = |m: u32| -> Result<[f64; 2]> {
        let u = eval_term_at_points(c, ProfileKind::U(m), t, &[x])?[0];
        let ui = eval_term_at_points(c, ProfileKind::UInf(m), t, &[x])?[0];
        Ok([u[0] + ui[0], u[1] + ui[1]])
    };
    match p {
        5 => {
            let w = eval_omega_m_point(c, 2, t, x)?;
            let u = u_sum_at(1)?;
            Ok([w * u[0], w * u[1]])
        }
        6 => {
            let w3 = eval_omega_m_point(c, 3, t, x)?;
            let w2 = eval_omega_m_point(c, 2, t, x)?;
            let u1 = u_sum_at(1)?;
            let u2 = u_sum_at(2)?;
            Ok([w3 * u1[0] + w2 * u2[0], w3 * u1[1] + w2 * u2[1]])
        }
        _ => Err(Error::Dependency(format!("no profile I_{p}"))),
    }
}
