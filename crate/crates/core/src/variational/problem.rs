use crate::error::{Error, Result};
use crate::fracops::Grid;
use crate::lagrangian::{Expr, Var};
use crate::specfun::check_order;

/// Integral constraint `∫ g dx = level`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub integrand: Expr,
    pub level: f64,
}

/// A fractional variational problem, optionally with one isoperimetric
/// constraint.
///
/// Derivatives are taken over `[a, b]`; functionals integrate over the
/// section `[A, B] ⊂ [a, b]` (the whole interval by default).
#[derive(Debug, Clone, PartialEq)]
pub struct IsoProblem {
    lagrangian: Expr,
    constraint: Option<Constraint>,
    alpha: Option<f64>,
    beta: Option<f64>,
    a: f64,
    b: f64,
    section: (f64, f64),
    y_a: f64,
    y_b: f64,
}

#[derive(Debug, Clone)]
pub struct IsoProblemBuilder {
    lagrangian: Expr,
    constraint: Option<Constraint>,
    alpha: Option<f64>,
    beta: Option<f64>,
    interval: (f64, f64),
    section: Option<(f64, f64)>,
    boundary: (f64, f64),
}

impl IsoProblemBuilder {
    pub fn constraint(mut self, integrand: Expr, level: f64) -> Self {
        self.constraint = Some(Constraint { integrand, level });
        self
    }

    pub fn alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn interval(mut self, a: f64, b: f64) -> Self {
        self.interval = (a, b);
        self
    }

    /// Integration section `[A, B]`.
    pub fn section(mut self, lo: f64, hi: f64) -> Self {
        self.section = Some((lo, hi));
        self
    }

    pub fn boundary(mut self, y_a: f64, y_b: f64) -> Self {
        self.boundary = (y_a, y_b);
        self
    }

    pub fn build(self) -> Result<IsoProblem> {
        let (a, b) = self.interval;
        let p = IsoProblem {
            lagrangian: self.lagrangian,
            constraint: self.constraint,
            alpha: self.alpha,
            beta: self.beta,
            a,
            b,
            section: self.section.unwrap_or((a, b)),
            y_a: self.boundary.0,
            y_b: self.boundary.1,
        };
        p.validate()?;
        Ok(p)
    }
}

impl IsoProblem {
    pub fn builder(lagrangian: Expr) -> IsoProblemBuilder {
        IsoProblemBuilder {
            lagrangian,
            constraint: None,
            alpha: None,
            beta: None,
            interval: (0.0, 1.0),
            section: None,
            boundary: (0.0, 0.0),
        }
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.section;
        let finite = [self.a, self.b, lo, hi, self.y_a, self.y_b];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::Problem("interval data and boundary values must be finite".into()));
        }
        if !(self.a < self.b) {
            return Err(Error::Problem(format!("need a < b, got a = {}, b = {}", self.a, self.b)));
        }
        if !(self.a <= lo && lo < hi && hi <= self.b) {
            return Err(Error::Problem(format!(
                "need a <= A < B <= b, got a = {}, A = {lo}, B = {hi}, b = {}",
                self.a, self.b
            )));
        }
        if let Some(c) = &self.constraint {
            if !c.level.is_finite() {
                return Err(Error::Problem("constraint level must be finite".into()));
            }
        }
        if self.uses(Var::Alpha) && self.alpha.is_none() {
            return Err(Error::Problem("an integrand uses alpha but alpha is not set".into()));
        }
        if self.uses(Var::U) {
            let alpha = self.alpha.ok_or_else(|| Error::Problem("an integrand uses u but alpha is not set".into()))?;
            check_order("problem", alpha)?;
            if lo == self.a && self.y_a != 0.0 {
                return Err(Error::Problem(format!(
                    "the left derivative is unbounded at x = a unless y(a) = 0 (got y_a = {})",
                    self.y_a
                )));
            }
        } else if let Some(alpha) = self.alpha {
            check_order("problem", alpha)?;
        }
        if self.uses(Var::V) {
            let beta = self.beta.ok_or_else(|| Error::Problem("an integrand uses v but beta is not set".into()))?;
            check_order("problem", beta)?;
            if hi == self.b && self.y_b != 0.0 {
                return Err(Error::Problem(format!(
                    "the right derivative is unbounded at x = b unless y(b) = 0 (got y_b = {})",
                    self.y_b
                )));
            }
        } else if let Some(beta) = self.beta {
            check_order("problem", beta)?;
        }
        Ok(())
    }

    /// Whether the Lagrangian or the constraint integrand references `var`.
    pub fn uses(&self, var: Var) -> bool {
        self.lagrangian.depends_on(var) || self.constraint.as_ref().is_some_and(|c| c.integrand.depends_on(var))
    }

    pub fn lagrangian(&self) -> &Expr {
        &self.lagrangian
    }

    pub fn constraint(&self) -> Option<&Constraint> {
        self.constraint.as_ref()
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn beta(&self) -> Option<f64> {
        self.beta
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// The integration section `[A, B]`.
    pub fn section(&self) -> (f64, f64) {
        self.section
    }

    pub fn has_subsection(&self) -> bool {
        self.section != (self.a, self.b)
    }

    pub fn boundary(&self) -> (f64, f64) {
        (self.y_a, self.y_b)
    }

    /// The same problem with a different left order.
    pub fn with_alpha(&self, alpha: f64) -> Result<IsoProblem> {
        let p = IsoProblem { alpha: Some(alpha), ..self.clone() };
        p.validate()?;
        Ok(p)
    }

    pub fn with_beta(&self, beta: f64) -> Result<IsoProblem> {
        let p = IsoProblem { beta: Some(beta), ..self.clone() };
        p.validate()?;
        Ok(p)
    }

    pub fn with_boundary(&self, y_a: f64, y_b: f64) -> Result<IsoProblem> {
        let p = IsoProblem { y_a, y_b, ..self.clone() };
        p.validate()?;
        Ok(p)
    }

    pub fn with_section(&self, lo: f64, hi: f64) -> Result<IsoProblem> {
        let p = IsoProblem { section: (lo, hi), ..self.clone() };
        p.validate()?;
        Ok(p)
    }

    pub fn grid(&self, n: usize) -> Result<Grid> {
        Grid::new(self.a, self.b, n)
    }

    /// Node indices of `A` and `B` on `grid`.
    pub fn section_indices(&self, grid: &Grid) -> Result<(usize, usize)> {
        let (lo, hi) = self.section;
        let i_lo = grid
            .node_index(lo)
            .ok_or_else(|| Error::SubgridAlignment(format!("A = {lo} is not a node of the grid (h = {})", grid.h())))?;
        let i_hi = grid
            .node_index(hi)
            .ok_or_else(|| Error::SubgridAlignment(format!("B = {hi} is not a node of the grid (h = {})", grid.h())))?;
        Ok((i_lo, i_hi))
    }
}
