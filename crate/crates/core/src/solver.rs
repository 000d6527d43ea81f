//! Direct solution of the discretised problems.
//!
//! The unknowns are the interior node values of `y`. Derivatives enter
//! through the dense Grünwald–Letnikov matrices and the functionals through
//! trapezoid weights, so `J` and `I` become ordinary functions of `n - 1`
//! variables. Stationary points are found by Newton's method on
//!
//! ```text
//! ∇J(y) - λ ∇I(y) = 0,    I(y) = l
//! ```
//!
//! with an augmented-Lagrangian loop as fallback. Gradients are divided by
//! `h` throughout so that their entries are comparable to the continuous
//! Euler–Lagrange field.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::fracops::{integrate, trapezoid_weights, FracOperator, Grid, SampledFunction, Side};
use crate::lagrangian::{parse, Environment, Expr, Var};
use crate::variational::{
    augmented_integrand, discrete_gradient_of, eval_functional, extended_residuals, interior_sup, Fields, Functional,
    IsoProblem, DEFAULT_DALPHA,
};

#[derive(Debug, Clone, PartialEq)]
pub enum InitialGuess {
    /// Straight line between the boundary values.
    Linear,
    /// Node values on the solve grid; the endpoint values are replaced by the
    /// boundary data.
    Custom(SampledFunction),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    /// Number of grid intervals.
    pub n: usize,
    pub max_iterations: usize,
    pub kkt_tolerance: f64,
    pub abnormal_gradient_tolerance: f64,
    pub initial_guess: InitialGuess,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            n: 256,
            max_iterations: 50,
            kkt_tolerance: 1e-8,
            abnormal_gradient_tolerance: 1e-8,
            initial_guess: InitialGuess::Linear,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if self.n < 16 {
            return Err(Error::Problem(format!("solver needs n >= 16, got {}", self.n)));
        }
        if self.max_iterations == 0 {
            return Err(Error::Problem("max_iterations must be positive".into()));
        }
        for (name, t) in
            [("kkt_tolerance", self.kkt_tolerance), ("abnormal_gradient_tolerance", self.abnormal_gradient_tolerance)]
        {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::Problem(format!("{name} must be positive and finite, got {t}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub y: SampledFunction,
    pub lambda0: f64,
    pub lambda: f64,
    /// `I(y) - l`, zero without a constraint.
    pub constraint_gap: f64,
    /// Interior sup norm of the Euler–Lagrange field of `λ₀ L - λ g` at `y`
    /// (middle and tail equations when the problem has a section).
    pub residual_norm: f64,
    /// Scaled norm of the discrete optimality system the solver drove down.
    pub kkt_norm: f64,
    pub iterations: usize,
    pub abnormal: bool,
}

/// The discretised problem on one grid.
struct Discrete<'a> {
    p: &'a IsoProblem,
    grid: Grid,
    first: usize,
    last: usize,
    w: Vec<f64>,
    left: Option<DMatrix<f64>>,
    right: Option<DMatrix<f64>>,
}

impl<'a> Discrete<'a> {
    fn new(p: &'a IsoProblem, n: usize) -> Result<Self> {
        let grid = p.grid(n)?;
        let (first, last) = p.section_indices(&grid)?;
        let left = match p.alpha() {
            Some(alpha) if p.uses(Var::U) => Some(FracOperator::new(Side::Left, alpha, &grid)?.matrix()),
            _ => None,
        };
        let right = match p.beta() {
            Some(beta) if p.uses(Var::V) => Some(FracOperator::new(Side::Right, beta, &grid)?.matrix()),
            _ => None,
        };
        Ok(Discrete { p, grid, first, last, w: trapezoid_weights(&grid, first, last), left, right })
    }

    fn m(&self) -> usize {
        self.grid.n() - 1
    }

    fn with_boundary(&self, z: &[f64]) -> Result<SampledFunction> {
        let (y_a, y_b) = self.p.boundary();
        let mut v = Vec::with_capacity(self.grid.len());
        v.push(y_a);
        v.extend_from_slice(z);
        v.push(y_b);
        SampledFunction::new(self.grid, v)
    }

    fn initial(&self, guess: &InitialGuess) -> Result<DVector<f64>> {
        let values = match guess {
            InitialGuess::Linear => {
                let (a, b) = self.p.interval();
                let (y_a, y_b) = self.p.boundary();
                self.grid.nodes().map(|x| y_a + (y_b - y_a) * (x - a) / (b - a)).collect()
            }
            InitialGuess::Custom(f) => {
                if f.grid() != &self.grid {
                    return Err(Error::GridMismatch(format!(
                        "initial guess has {} intervals on [{}, {}], the solve grid has {} on [{}, {}]",
                        f.grid().n(),
                        f.grid().a(),
                        f.grid().b(),
                        self.grid.n(),
                        self.grid.a(),
                        self.grid.b()
                    )));
                }
                f.values().to_vec()
            }
        };
        Ok(DVector::from_column_slice(&values[1..self.grid.n()]))
    }

    /// Interior entries of the discrete gradient of `∫ e`, divided by `h`.
    fn gradient(&self, e: &Expr, y: &SampledFunction) -> Result<DVector<f64>> {
        let g = discrete_gradient_of(self.p, e, y)?;
        let h = self.grid.h();
        Ok(DVector::from_iterator(self.m(), g[1..self.grid.n()].iter().map(|v| v / h)))
    }

    fn value(&self, e: &Expr, y: &SampledFunction) -> Result<f64> {
        let fields = Fields::new(self.p, y)?;
        let s = fields.sample_range(e, self.first, self.last)?;
        Ok(s.iter().zip(&self.w).map(|(a, b)| a * b).sum())
    }

    fn selector(&self, var: Var) -> Option<&DMatrix<f64>> {
        match var {
            Var::U => self.left.as_ref(),
            Var::V => self.right.as_ref(),
            _ => None,
        }
    }

    /// `S_aᵀ diag(c) S_b` where `S_y` is the identity and `S_u`, `S_v` the
    /// operator matrices.
    fn sandwich(&self, a: Var, c: &[f64], b: Var) -> DMatrix<f64> {
        let scaled = match self.selector(b) {
            None => DMatrix::from_diagonal(&DVector::from_column_slice(c)),
            Some(m) => {
                let mut r = m.clone();
                for (i, ci) in c.iter().enumerate() {
                    r.row_mut(i).scale_mut(*ci);
                }
                r
            }
        };
        match self.selector(a) {
            None => scaled,
            Some(m) => m.tr_mul(&scaled),
        }
    }

    /// Interior block of the Hessian of `∫ e`, divided by `h`.
    fn hessian(&self, e: &Expr, y: &SampledFunction) -> Result<DMatrix<f64>> {
        let fields = Fields::new(self.p, y)?;
        let n1 = self.grid.len();
        let h = self.grid.h();
        let vars = [Var::Y, Var::U, Var::V];
        let mut full = DMatrix::zeros(n1, n1);
        for (ia, &a) in vars.iter().enumerate() {
            let da = e.diff(a);
            if da.is_zero() {
                continue;
            }
            for &b in &vars[ia..] {
                let dab = da.diff(b);
                if dab.is_zero() {
                    continue;
                }
                let c: Vec<f64> = fields
                    .sample_range(&dab, self.first, self.last)?
                    .iter()
                    .zip(&self.w)
                    .map(|(d, w)| d * w / h)
                    .collect();
                if c.iter().all(|v| *v == 0.0) {
                    continue;
                }
                let term = self.sandwich(a, &c, b);
                if a != b {
                    full += term.transpose();
                }
                full += term;
            }
        }
        let m = self.m();
        Ok(full.view((1, 1), (m, m)).into_owned())
    }

    fn constraint(&self) -> Result<(&Expr, f64)> {
        let c = self.p.constraint().ok_or(Error::MissingConstraint)?;
        Ok((&c.integrand, c.level))
    }
}

fn sup(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Solves `jac d = -r`, falling back to a damped least-squares step when the
/// matrix is singular.
fn newton_step(jac: &DMatrix<f64>, r: &DVector<f64>) -> DVector<f64> {
    if let Some(d) = jac.clone().lu().solve(&(-r)) {
        if d.iter().all(|v| v.is_finite()) {
            return d;
        }
    }
    let jt = jac.transpose();
    let mut normal = &jt * jac;
    let mu = 1e-10 * normal.diagonal().iter().fold(1.0f64, |m, v| m.max(v.abs()));
    for i in 0..normal.nrows() {
        normal[(i, i)] += mu;
    }
    let rhs = -(&jt * r);
    normal.clone().cholesky().map(|c| c.solve(&rhs)).unwrap_or_else(|| DVector::zeros(r.len()))
}

struct NewtonOutcome {
    x: DVector<f64>,
    iterations: usize,
    norm: f64,
}

/// Newton iteration with backtracking on `‖r‖₂`. `residual` returns the
/// residual and its convergence norm.
fn newton(
    x0: DVector<f64>,
    max_iterations: usize,
    tol: f64,
    mut residual: impl FnMut(&DVector<f64>) -> Result<(DVector<f64>, f64)>,
    mut jacobian: impl FnMut(&DVector<f64>) -> Result<DMatrix<f64>>,
) -> Result<NewtonOutcome> {
    let mut x = x0;
    let (mut r, mut norm) = residual(&x)?;
    for it in 0..max_iterations {
        if norm <= tol {
            return Ok(NewtonOutcome { x, iterations: it, norm });
        }
        let d = newton_step(&jacobian(&x)?, &r);
        let merit = r.norm();
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial = &x + t * &d;
            if let Ok((rt, nt)) = residual(&trial) {
                if rt.norm() <= (1.0 - 1e-4 * t) * merit || nt <= tol {
                    x = trial;
                    r = rt;
                    norm = nt;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            return Err(Error::NonConvergence { iterations: it + 1, kkt_norm: norm });
        }
    }
    if norm <= tol {
        Ok(NewtonOutcome { x, iterations: max_iterations, norm })
    } else {
        Err(Error::NonConvergence { iterations: max_iterations, kkt_norm: norm })
    }
}

/// Newton on `∇J = 0` from `z0`.
fn stationary(d: &Discrete, e: &Expr, z0: DVector<f64>, opts: &SolverOptions) -> Result<NewtonOutcome> {
    newton(
        z0,
        opts.max_iterations,
        opts.kkt_tolerance,
        |z| {
            let y = d.with_boundary(z.as_slice())?;
            let g = d.gradient(e, &y)?;
            let n = sup(&g);
            Ok((g, n))
        },
        |z| d.hessian(e, &d.with_boundary(z.as_slice())?),
    )
}

fn residual_norm(p: &IsoProblem, y: &SampledFunction, lambda0: f64, lambda: f64) -> Result<f64> {
    Ok(extended_residuals(p, y, lambda0, lambda)?.sup_norm_interior)
}

/// Stationary point of the discretised cost for a problem without constraint.
pub fn solve_unconstrained(p: &IsoProblem, opts: &SolverOptions) -> Result<SolveResult> {
    if p.constraint().is_some() {
        return Err(Error::Problem("problem has a constraint; use solve_isoperimetric".into()));
    }
    opts.validate()?;
    let d = Discrete::new(p, opts.n)?;
    let out = stationary(&d, p.lagrangian(), d.initial(&opts.initial_guess)?, opts)?;
    let y = d.with_boundary(out.x.as_slice())?;
    Ok(SolveResult {
        residual_norm: residual_norm(p, &y, 1.0, 0.0)?,
        y,
        lambda0: 1.0,
        lambda: 0.0,
        constraint_gap: 0.0,
        kkt_norm: out.norm,
        iterations: out.iterations,
        abnormal: false,
    })
}

/// Stationary point of `J` subject to `I = l`.
///
/// When the discrete constraint gradient vanishes (to within
/// `abnormal_gradient_tolerance` scaled by the constraint data) the
/// multipliers `(λ₀, λ) = (0, 1)` are returned with the cost stationary
/// point, provided it is feasible.
pub fn solve_isoperimetric(p: &IsoProblem, opts: &SolverOptions) -> Result<SolveResult> {
    opts.validate()?;
    let d = Discrete::new(p, opts.n)?;
    let (g, level) = d.constraint()?;
    let z0 = d.initial(&opts.initial_guess)?;
    let y0 = d.with_boundary(z0.as_slice())?;

    let threshold = opts.abnormal_gradient_tolerance * (1.0 + constraint_scale(&d, &y0)?);
    let grad_i = d.gradient(g, &y0)?;
    if sup(&grad_i) <= threshold {
        return abnormal(&d, z0, threshold, opts);
    }

    let cost = p.lagrangian();
    let grad_j = d.gradient(cost, &y0)?;
    let lambda0 = grad_j.dot(&grad_i) / grad_i.dot(&grad_i);
    let tol = opts.kkt_tolerance;
    let m = d.m();

    let kkt_residual = |x: &DVector<f64>| -> Result<(DVector<f64>, f64)> {
        let lambda = x[m];
        let y = d.with_boundary(&x.as_slice()[..m])?;
        let k = augmented_integrand(p, 1.0, lambda)?;
        let stat = d.gradient(&k, &y)?;
        let gap = d.value(g, &y)? - level;
        let norm = (sup(&stat) / (1.0 + lambda.abs())).max(gap.abs());
        let mut r = DVector::zeros(m + 1);
        r.rows_mut(0, m).copy_from(&stat);
        r[m] = gap;
        Ok((r, norm))
    };
    let kkt_jacobian = |x: &DVector<f64>| -> Result<DMatrix<f64>> {
        let lambda = x[m];
        let y = d.with_boundary(&x.as_slice()[..m])?;
        let k = augmented_integrand(p, 1.0, lambda)?;
        let hk = d.hessian(&k, &y)?;
        let gi = d.gradient(g, &y)?;
        let mut jac = DMatrix::zeros(m + 1, m + 1);
        jac.view_mut((0, 0), (m, m)).copy_from(&hk);
        jac.view_mut((0, m), (m, 1)).copy_from(&(-&gi));
        // Row of ∂I/∂y: the raw gradient, i.e. h times the scaled one.
        jac.view_mut((m, 0), (1, m)).copy_from(&(gi.transpose() * d.grid.h()));
        Ok(jac)
    };

    let mut x0 = DVector::zeros(m + 1);
    x0.rows_mut(0, m).copy_from(&z0);
    x0[m] = lambda0;
    let (z, lambda, iterations, norm) = match newton(x0, opts.max_iterations, tol, kkt_residual, kkt_jacobian) {
        Ok(out) => (out.x.rows(0, m).into_owned(), out.x[m], out.iterations, out.norm),
        Err(Error::NonConvergence { .. }) => augmented_lagrangian(&d, z0, lambda0, opts)?,
        Err(e) => return Err(e),
    };

    let y = d.with_boundary(z.as_slice())?;
    if sup(&d.gradient(g, &y)?) <= threshold {
        return abnormal(&d, z, threshold, opts);
    }
    let gap = d.value(g, &y)? - level;
    Ok(SolveResult {
        residual_norm: residual_norm(p, &y, 1.0, lambda)?,
        y,
        lambda0: 1.0,
        lambda,
        constraint_gap: gap,
        kkt_norm: norm,
        iterations,
        abnormal: false,
    })
}

/// `|l| + sup |g|` over the initial guess.
fn constraint_scale(d: &Discrete, y: &SampledFunction) -> Result<f64> {
    let (g, level) = d.constraint()?;
    let fields = Fields::new(d.p, y)?;
    let s = fields.sample_range(g, d.first, d.last)?;
    Ok(level.abs() + s.iter().fold(0.0f64, |m, v| m.max(v.abs())))
}

fn abnormal(d: &Discrete, z0: DVector<f64>, threshold: f64, opts: &SolverOptions) -> Result<SolveResult> {
    let (g, level) = d.constraint()?;
    let (z, iterations, norm) = match stationary(d, d.p.lagrangian(), z0.clone(), opts) {
        Ok(out) => (out.x, out.iterations, out.norm),
        Err(Error::NonConvergence { iterations, .. }) => (z0, iterations, f64::NAN),
        Err(e) => return Err(e),
    };
    let y = d.with_boundary(z.as_slice())?;
    let gap = d.value(g, &y)? - level;
    if gap.abs() > opts.kkt_tolerance * (1.0 + level.abs()) {
        return Err(Error::Infeasible { gap });
    }
    let kkt_norm = if norm.is_nan() { sup(&d.gradient(g, &y)?) } else { sup(&d.gradient(g, &y)?).min(threshold) };
    Ok(SolveResult {
        residual_norm: residual_norm(d.p, &y, 0.0, 1.0)?,
        y,
        lambda0: 0.0,
        lambda: 1.0,
        constraint_gap: gap,
        kkt_norm,
        iterations,
        abnormal: true,
    })
}

/// Outer loop on `J - λ c + μ c²/2` with `c = I - l`.
fn augmented_lagrangian(
    d: &Discrete,
    mut z: DVector<f64>,
    mut lambda: f64,
    opts: &SolverOptions,
) -> Result<(DVector<f64>, f64, usize, f64)> {
    let (g, level) = d.constraint()?;
    let p = d.p;
    let h = d.grid.h();
    let mut mu = 10.0;
    let mut total = 0;
    let mut last_gap = f64::INFINITY;
    for _ in 0..opts.max_iterations {
        let (lam, penalty) = (lambda, mu);
        let inner = newton(
            z.clone(),
            opts.max_iterations,
            opts.kkt_tolerance,
            |z| {
                let y = d.with_boundary(z.as_slice())?;
                let c = d.value(g, &y)? - level;
                let k = augmented_integrand(p, 1.0, lam - penalty * c)?;
                let r = d.gradient(&k, &y)?;
                let n = sup(&r);
                Ok((r, n))
            },
            |z| {
                let y = d.with_boundary(z.as_slice())?;
                let c = d.value(g, &y)? - level;
                let k = augmented_integrand(p, 1.0, lam - penalty * c)?;
                let gi = d.gradient(g, &y)?;
                Ok(d.hessian(&k, &y)? + (penalty * h) * &gi * gi.transpose())
            },
        );
        let out = match inner {
            Ok(out) => out,
            Err(Error::NonConvergence { iterations, kkt_norm }) => {
                return Err(Error::NonConvergence { iterations: total + iterations, kkt_norm })
            }
            Err(e) => return Err(e),
        };
        total += out.iterations;
        z = out.x;
        let y = d.with_boundary(z.as_slice())?;
        let c = d.value(g, &y)? - level;
        lambda -= mu * c;
        let stat = sup(&d.gradient(&augmented_integrand(p, 1.0, lambda)?, &y)?) / (1.0 + lambda.abs());
        let norm = stat.max(c.abs());
        if norm <= opts.kkt_tolerance {
            return Ok((z, lambda, total, norm));
        }
        if c.abs() > 0.25 * last_gap {
            mu *= 10.0;
        }
        last_gap = c.abs();
        if !mu.is_finite() || mu > 1e14 {
            break;
        }
    }
    Err(Error::Infeasible { gap: last_gap })
}

/// Objective of the order search.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaFamily {
    /// `ψ(α)`: the Ψ functional along its extremal `x^α`, by trapezoid
    /// quadrature on `n` intervals.
    Psi,
    /// `J(y(α))` where `y(α)` solves the problem at order `α`.
    Problem(IsoProblem),
}

impl AlphaFamily {
    pub fn objective(&self, alpha: f64, opts: &SolverOptions) -> Result<f64> {
        match self {
            AlphaFamily::Psi => psi_quadrature(alpha, opts.n),
            AlphaFamily::Problem(p) => {
                let q = p.with_alpha(alpha)?;
                let sol = if q.constraint().is_some() {
                    solve_isoperimetric(&q, opts)?
                } else {
                    solve_unconstrained(&q, opts)?
                };
                eval_functional(&q, Functional::Cost, &sol.y)
            }
        }
    }

    /// Central difference of the objective in `α` with step [`DEFAULT_DALPHA`].
    pub fn derivative(&self, alpha: f64, opts: &SolverOptions) -> Result<f64> {
        let s = DEFAULT_DALPHA;
        Ok((self.objective(alpha + s, opts)? - self.objective(alpha - s, opts)?) / (2.0 * s))
    }
}

/// `∫₀¹ [x^α Γ(α+1)]² dx` by the trapezoid rule on `n` intervals.
pub fn psi_quadrature(alpha: f64, n: usize) -> Result<f64> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::domain("psi", format!("alpha must be non-negative, got {alpha}")));
    }
    let e = parse(crate::builtin::PSI_REDUCED)?;
    let grid = Grid::new(0.0, 1.0, n)?;
    let mut env = Environment { alpha, ..Default::default() };
    let mut values = Vec::with_capacity(grid.len());
    for x in grid.nodes() {
        env.x = x;
        values.push(e.eval(&env)?);
    }
    Ok(integrate(&SampledFunction::new(grid, values)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaOptimum {
    pub alpha: f64,
    pub value: f64,
    /// Objective derivative at `alpha`.
    pub derivative: f64,
}

/// Points at which the bracket is scanned for a sign change of the derivative.
pub const BRACKET_SAMPLES: usize = 64;

/// Stationary point of `α ↦ objective(α)` in `(lo, hi)`: the bracket is
/// scanned for a sign change of the numerical derivative, which is then
/// bisected. The scan starts one differencing step inside the bracket, so
/// `lo = 0` is allowed for families defined at order zero.
pub fn optimize_alpha(family: &AlphaFamily, bracket: (f64, f64), opts: &SolverOptions) -> Result<AlphaOptimum> {
    let (lo, hi) = bracket;
    let s = DEFAULT_DALPHA;
    if !(lo >= 0.0 && lo < hi && hi <= 1.0) {
        return Err(Error::Interval(format!("need 0 <= alpha_lo < alpha_hi <= 1, got ({lo}, {hi})")));
    }
    if hi - lo <= 4.0 * s {
        return Err(Error::Interval(format!("bracket ({lo}, {hi}) is narrower than the differencing stencil")));
    }
    let (start, end) = (lo + s, hi - s);
    let at = |k: usize| start + (end - start) * k as f64 / BRACKET_SAMPLES as f64;
    let mut a = start;
    let mut da = family.derivative(a, opts)?;
    let mut found = None;
    for k in 1..=BRACKET_SAMPLES {
        let b = at(k);
        let db = family.derivative(b, opts)?;
        if da == 0.0 {
            found = Some((a, a, da, da));
            break;
        }
        if da.signum() != db.signum() {
            found = Some((a, b, da, db));
            break;
        }
        a = b;
        da = db;
    }
    let (mut a, mut b, mut da, db) = found.ok_or(Error::NoStationaryPoint { lo, hi })?;
    let mut best = if da.abs() <= db.abs() { (a, da) } else { (b, db) };
    for _ in 0..200 {
        if b - a <= 1e-13 || best.1 == 0.0 {
            break;
        }
        let mid = 0.5 * (a + b);
        let dm = family.derivative(mid, opts)?;
        if dm.abs() < best.1.abs() || b - a < 1e-10 {
            best = (mid, dm);
        }
        if dm.signum() == da.signum() {
            a = mid;
            da = dm;
        } else {
            b = mid;
        }
    }
    let (alpha, derivative) = best;
    Ok(AlphaOptimum { alpha, value: family.objective(alpha, opts)?, derivative })
}

/// Objective values at `count + 1` equally spaced orders in `[lo, hi]`.
pub fn sample_objective(
    family: &AlphaFamily,
    lo: f64,
    hi: f64,
    count: usize,
    opts: &SolverOptions,
) -> Result<Vec<(f64, f64)>> {
    if count == 0 || !(lo <= hi) {
        return Err(Error::Interval(format!("cannot sample [{lo}, {hi}] at {count} steps")));
    }
    (0..=count)
        .map(|k| {
            let alpha = if k == count { hi } else { lo + (hi - lo) * k as f64 / count as f64 };
            Ok((alpha, family.objective(alpha, opts)?))
        })
        .collect()
}

/// Both equations of the free-order system at `(y, α)`: the interior norm of
/// the Euler–Lagrange field and the order-stationarity integral.
pub fn stationarity_system_check(p: &IsoProblem, y: &SampledFunction, alpha: f64) -> Result<(f64, f64)> {
    if !p.lagrangian().depends_on(Var::U) {
        return Err(Error::Problem("the free-order system needs a Lagrangian in u".into()));
    }
    let q = p.with_alpha(alpha)?;
    let r = extended_residuals(&q, y, 1.0, 0.0)?;
    let el_norm = if q.has_subsection() { interior_sup(r.middle.values()) } else { r.sup_norm_interior };
    let alpha_residual = crate::variational::alpha_stationarity(&q, y, DEFAULT_DALPHA)?;
    Ok((el_norm, alpha_residual))
}
