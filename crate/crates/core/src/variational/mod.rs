//! Fractional functionals and the residual fields of their necessary
//! optimality conditions.
//!
//! For an integrand `K(x, y, u, v)` with `u = ₐDₓ^α y` and `v = ₓD_b^β y`
//! the Euler–Lagrange field is
//!
//! ```text
//! ∂K/∂y + ₓD_b^α ∂K/∂u + ₐDₓ^β ∂K/∂v
//! ```
//!
//! The isoperimetric conditions use `K = λ₀ L - λ g`. When the functional
//! integrates over a section `[A, B]` of `[a, b]`, the field splits into a
//! middle equation on `[A, B]` and two tail equations on `[a, A]` and
//! `[B, b]`; see [`extended_residuals`].
//!
//! Residual norms skip the two nodes at each end of every section, where the
//! grid operators carry their endpoint fill instead of a real approximation.

mod problem;

pub use problem::{Constraint, IsoProblem, IsoProblemBuilder};

use crate::error::{Error, Result};
use crate::fracops::{integrate, left_rl, right_rl, trapezoid_weights, FracOperator, Grid, SampledFunction, Side};
use crate::lagrangian::{self, Environment, Expr, Var};

/// Which of the two functionals of a problem to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functional {
    Cost,
    Constraint,
}

/// Residual fields of one necessary condition.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    /// Field on `[A, B]` (the whole interval for the plain equations).
    pub middle: SampledFunction,
    /// Tail field on `[a, A]`; absent when `A = a` or the integrand has no `u`.
    pub left_tail: Option<SampledFunction>,
    /// Tail field on `[B, b]`; absent when `B = b` or the integrand has no `v`.
    pub right_tail: Option<SampledFunction>,
    pub sup_norm_interior: f64,
}

impl ResidualReport {
    fn new(middle: SampledFunction, left_tail: Option<SampledFunction>, right_tail: Option<SampledFunction>) -> Self {
        let sup_norm_interior = [Some(&middle), left_tail.as_ref(), right_tail.as_ref()]
            .into_iter()
            .flatten()
            .map(|f| interior_sup(f.values()))
            .fold(0.0, f64::max);
        ResidualReport { middle, left_tail, right_tail, sup_norm_interior }
    }
}

/// Number of nodes skipped at each end of a section by interior norms.
pub const ENDPOINT_SKIP: usize = 2;

/// Sup norm over all but the first and last [`ENDPOINT_SKIP`] entries.
pub fn interior_sup(values: &[f64]) -> f64 {
    if values.len() <= 2 * ENDPOINT_SKIP {
        return 0.0;
    }
    values[ENDPOINT_SKIP..values.len() - ENDPOINT_SKIP].iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Node samples of `x`, `y` and the two derivatives of `y`.
pub(crate) struct Fields {
    pub grid: Grid,
    pub y: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub alpha: f64,
}

impl Fields {
    pub fn new(p: &IsoProblem, y: &SampledFunction) -> Result<Self> {
        check_grid(p, y.grid())?;
        let grid = *y.grid();
        let n = grid.len();
        let u = match p.alpha() {
            Some(alpha) if p.uses(Var::U) => left_rl(y, alpha)?.into_values(),
            _ => vec![0.0; n],
        };
        let v = match p.beta() {
            Some(beta) if p.uses(Var::V) => right_rl(y, beta)?.into_values(),
            _ => vec![0.0; n],
        };
        Ok(Fields { grid, y: y.values().to_vec(), u, v, alpha: p.alpha().unwrap_or(0.0) })
    }

    pub fn env(&self, i: usize) -> Environment {
        Environment { x: self.grid.node(i), y: self.y[i], u: self.u[i], v: self.v[i], alpha: self.alpha }
    }

    /// `e` at nodes `first..=last`, zero elsewhere.
    pub fn sample_range(&self, e: &Expr, first: usize, last: usize) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.grid.len()];
        if let Some(c) = e.as_const() {
            out[first..=last].iter_mut().for_each(|o| *o = c);
            return Ok(out);
        }
        for (i, o) in out.iter_mut().enumerate().take(last + 1).skip(first) {
            *o = e.eval(&self.env(i))?;
        }
        Ok(out)
    }

    pub fn sample(&self, e: &Expr) -> Result<Vec<f64>> {
        self.sample_range(e, 0, self.grid.n())
    }
}

pub(crate) fn check_grid(p: &IsoProblem, grid: &Grid) -> Result<()> {
    let (a, b) = p.interval();
    let tol = 1e-12 * (b - a);
    if (grid.a() - a).abs() > tol || (grid.b() - b).abs() > tol {
        return Err(Error::GridMismatch(format!(
            "function sampled on [{}, {}] but the problem lives on [{a}, {b}]",
            grid.a(),
            grid.b()
        )));
    }
    Ok(())
}

fn integrand(p: &IsoProblem, which: Functional) -> Result<&Expr> {
    match which {
        Functional::Cost => Ok(p.lagrangian()),
        Functional::Constraint => p.constraint().map(|c| &c.integrand).ok_or(Error::MissingConstraint),
    }
}

/// The structurally formed integrand `λ₀ L - λ g`.
pub fn augmented_integrand(p: &IsoProblem, lambda0: f64, lambda: f64) -> Result<Expr> {
    let cost = lagrangian::mul(Expr::Const(lambda0), p.lagrangian().clone());
    match p.constraint() {
        Some(c) => Ok(lagrangian::sub(cost, lagrangian::mul(Expr::Const(lambda), c.integrand.clone()))),
        None if lambda == 0.0 => Ok(cost),
        None => Err(Error::MissingConstraint),
    }
}

/// Value of the cost or constraint functional at `y`, integrating over `[A, B]`.
pub fn eval_functional(p: &IsoProblem, which: Functional, y: &SampledFunction) -> Result<f64> {
    let e = integrand(p, which)?;
    let fields = Fields::new(p, y)?;
    let (first, last) = p.section_indices(&fields.grid)?;
    let values = fields.sample_range(e, first, last)?;
    let w = trapezoid_weights(&fields.grid, first, last);
    Ok(values.iter().zip(&w).map(|(f, w)| f * w).sum())
}

/// Gradient of the discretised functional with respect to every node value.
///
/// This is the discrete counterpart of the Euler–Lagrange field: the
/// transposes of the grid operators take the place of the opposite-side
/// derivatives, and the quadrature weights multiply each term.
pub fn discrete_gradient(p: &IsoProblem, which: Functional, y: &SampledFunction) -> Result<Vec<f64>> {
    let e = integrand(p, which)?;
    discrete_gradient_of(p, e, y)
}

pub(crate) fn discrete_gradient_of(p: &IsoProblem, e: &Expr, y: &SampledFunction) -> Result<Vec<f64>> {
    let fields = Fields::new(p, y)?;
    let grid = fields.grid;
    let (first, last) = p.section_indices(&grid)?;
    let w = trapezoid_weights(&grid, first, last);
    let weighted = |d: &Expr| -> Result<Vec<f64>> {
        let s = fields.sample_range(d, first, last)?;
        Ok(s.iter().zip(&w).map(|(a, b)| a * b).collect())
    };
    let mut grad = weighted(&e.diff(Var::Y))?;
    let du = e.diff(Var::U);
    if !du.is_zero() {
        let op = FracOperator::new(Side::Left, p.alpha().unwrap_or(1.0), &grid)?;
        let t = op.apply_transpose(&weighted(&du)?);
        grad.iter_mut().zip(t).for_each(|(g, t)| *g += t);
    }
    let dv = e.diff(Var::V);
    if !dv.is_zero() {
        let op = FracOperator::new(Side::Right, p.beta().unwrap_or(1.0), &grid)?;
        let t = op.apply_transpose(&weighted(&dv)?);
        grad.iter_mut().zip(t).for_each(|(g, t)| *g += t);
    }
    Ok(grad)
}

fn require_full_interval(p: &IsoProblem) -> Result<()> {
    if p.has_subsection() {
        let (lo, hi) = p.section();
        return Err(Error::Interval(format!(
            "functional integrates over [{lo}, {hi}], a proper section of the derivative interval; use extended_residuals"
        )));
    }
    Ok(())
}

/// Euler–Lagrange field of `k` on the whole interval.
fn full_residual(p: &IsoProblem, k: &Expr, y: &SampledFunction) -> Result<ResidualReport> {
    let fields = Fields::new(p, y)?;
    let grid = fields.grid;
    let mut field = fields.sample(&k.diff(Var::Y))?;
    let ku = k.diff(Var::U);
    if !ku.is_zero() {
        let s = SampledFunction::new(grid, fields.sample(&ku)?)?;
        let d = right_rl(&s, p.alpha().unwrap_or(1.0))?;
        field.iter_mut().zip(d.values()).for_each(|(f, d)| *f += d);
    }
    let kv = k.diff(Var::V);
    if !kv.is_zero() {
        let s = SampledFunction::new(grid, fields.sample(&kv)?)?;
        let d = left_rl(&s, p.beta().unwrap_or(1.0))?;
        field.iter_mut().zip(d.values()).for_each(|(f, d)| *f += d);
    }
    Ok(ResidualReport::new(SampledFunction::new(grid, field)?, None, None))
}

/// Residual of the fractional Euler–Lagrange equation for the Lagrangian.
pub fn el_residual(p: &IsoProblem, y: &SampledFunction) -> Result<ResidualReport> {
    require_full_interval(p)?;
    full_residual(p, p.lagrangian(), y)
}

/// Residual of the isoperimetric Euler–Lagrange equation for `λ₀ L - λ g`.
pub fn iso_residual(p: &IsoProblem, y: &SampledFunction, lambda0: f64, lambda: f64) -> Result<ResidualReport> {
    if p.constraint().is_none() {
        return Err(Error::MissingConstraint);
    }
    require_full_interval(p)?;
    full_residual(p, &augmented_integrand(p, lambda0, lambda)?, y)
}

/// Default tolerance for [`extremal_check`]: `1e-3 (1 + sup |∂g|)` over the
/// sampled partial derivatives of the constraint integrand.
pub fn default_extremal_tolerance(p: &IsoProblem, y: &SampledFunction) -> Result<f64> {
    let g = &p.constraint().ok_or(Error::MissingConstraint)?.integrand;
    let fields = Fields::new(p, y)?;
    let mut sup: f64 = 0.0;
    for var in [Var::Y, Var::U, Var::V] {
        let d = g.diff(var);
        if !d.is_zero() {
            sup = fields.sample(&d)?.iter().fold(sup, |m, v| m.max(v.abs()));
        }
    }
    Ok(1e-3 * (1.0 + sup))
}

/// Whether `y` annihilates the Euler–Lagrange field of the constraint
/// functional (on `[A, B]` when the problem has a section). Returns the flag
/// and the interior sup norm of the field.
pub fn extremal_check(p: &IsoProblem, y: &SampledFunction, tol: Option<f64>) -> Result<(bool, f64)> {
    let g = &p.constraint().ok_or(Error::MissingConstraint)?.integrand;
    let norm = if p.has_subsection() {
        interior_sup(sectioned_residual(p, g, y)?.middle.values())
    } else {
        full_residual(p, g, y)?.sup_norm_interior
    };
    let tol = match tol {
        Some(t) => t,
        None => default_extremal_tolerance(p, y)?,
    };
    Ok((norm <= tol, norm))
}

/// Middle and tail equations for `λ₀ L - λ g` when the functionals integrate
/// over `[A, B] ⊂ [a, b]`:
///
/// ```text
/// [A, B]:  ∂K/∂y + ₓD_B^α ∂K/∂u + _AD_x^β ∂K/∂v = 0
/// [a, A]:  ₓD_B^α ∂K/∂u - ₓD_A^α ∂K/∂u = 0
/// [B, b]:  _AD_x^β ∂K/∂v - _BD_x^β ∂K/∂v = 0
/// ```
///
/// The operators are re-run on the subgrids `[a, B]`, `[a, A]`, `[A, b]` and
/// `[B, b]`, so `A` and `B` must be grid nodes.
pub fn extended_residuals(p: &IsoProblem, y: &SampledFunction, lambda0: f64, lambda: f64) -> Result<ResidualReport> {
    sectioned_residual(p, &augmented_integrand(p, lambda0, lambda)?, y)
}

fn sectioned_residual(p: &IsoProblem, k: &Expr, y: &SampledFunction) -> Result<ResidualReport> {
    let fields = Fields::new(p, y)?;
    let grid = fields.grid;
    let n = grid.n();
    let (ia, ib) = p.section_indices(&grid)?;
    let alpha = p.alpha().unwrap_or(1.0);
    let beta = p.beta().unwrap_or(1.0);

    let ky = fields.sample(&k.diff(Var::Y))?;
    let mut middle: Vec<f64> = ky[ia..=ib].to_vec();
    let mut left_tail = None;
    let mut right_tail = None;

    let ku = k.diff(Var::U);
    if !ku.is_zero() {
        let s = SampledFunction::new(grid, fields.sample(&ku)?)?;
        let to_b = right_rl(&s.restrict(0, ib)?, alpha)?;
        middle.iter_mut().zip(&to_b.values()[ia..=ib]).for_each(|(m, d)| *m += d);
        if ia > 0 {
            let to_a = right_rl(&s.restrict(0, ia)?, alpha)?;
            let tail = to_b.values()[..=ia].iter().zip(to_a.values()).map(|(x, y)| x - y).collect();
            left_tail = Some(SampledFunction::new(*to_a.grid(), tail)?);
        }
    }

    let kv = k.diff(Var::V);
    if !kv.is_zero() {
        let s = SampledFunction::new(grid, fields.sample(&kv)?)?;
        let from_a = left_rl(&s.restrict(ia, n)?, beta)?;
        middle.iter_mut().zip(&from_a.values()[..=ib - ia]).for_each(|(m, d)| *m += d);
        if ib < n {
            let from_b = left_rl(&s.restrict(ib, n)?, beta)?;
            let tail = from_a.values()[ib - ia..].iter().zip(from_b.values()).map(|(x, y)| x - y).collect();
            right_tail = Some(SampledFunction::new(*from_b.grid(), tail)?);
        }
    }

    let middle = SampledFunction::new(grid.subgrid(ia, ib)?, middle)?;
    Ok(ResidualReport::new(middle, left_tail, right_tail))
}

/// `∫ f ₐDₓ^α g dx - ∫ g ₓD_b^α f dx`, which vanishes in the continuous limit
/// for `0 < α < 1` and, for `α = 1`, when `f` or `g` vanishes at both ends.
pub fn ibp_defect(f: &SampledFunction, g: &SampledFunction, alpha: f64) -> Result<f64> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch("integration by parts needs a shared grid".into()));
    }
    let dg = left_rl(g, alpha)?;
    let df = right_rl(f, alpha)?;
    let lhs: Vec<f64> = f.values().iter().zip(dg.values()).map(|(a, b)| a * b).collect();
    let rhs: Vec<f64> = g.values().iter().zip(df.values()).map(|(a, b)| a * b).collect();
    Ok(integrate(&SampledFunction::new(*f.grid(), lhs)?) - integrate(&SampledFunction::new(*f.grid(), rhs)?))
}

/// Default step for differentiating fractional derivatives in their order.
pub const DEFAULT_DALPHA: f64 = 1e-4;

/// `∫ ∂L/∂u · φ'(α) dx` with `φ(α) = ₐDₓ^α y`, the order-stationarity
/// condition of a functional whose derivative order is free. `φ'(α)` is a
/// central difference in the order with step `dalpha`.
pub fn alpha_stationarity(p: &IsoProblem, y: &SampledFunction, dalpha: f64) -> Result<f64> {
    let alpha = p.alpha().ok_or_else(|| Error::Problem("order stationarity needs alpha".into()))?;
    if !(dalpha > 0.0) || !(alpha - dalpha > 0.0) || alpha + dalpha > 1.0 {
        return Err(Error::domain("alpha_stationarity", format!("alpha ± dalpha = {alpha} ± {dalpha} leaves (0, 1]")));
    }
    let fields = Fields::new(p, y)?;
    let (first, last) = p.section_indices(&fields.grid)?;
    let lu = fields.sample_range(&p.lagrangian().diff(Var::U), first, last)?;
    let hi = left_rl(y, alpha + dalpha)?;
    let lo = left_rl(y, alpha - dalpha)?;
    let w = trapezoid_weights(&fields.grid, first, last);
    Ok((0..fields.grid.len()).map(|i| w[i] * lu[i] * (hi[i] - lo[i]) / (2.0 * dalpha)).sum())
}
