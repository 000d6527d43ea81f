//! The two worked problems shipped with the toolkit.
//!
//! * `eq_ex`: minimise `∫₀¹ x⁴ + (₀Dₓ^α y)² dx` subject to
//!   `∫₀¹ x² ₀Dₓ^α y dx = 1/5`, `y(0) = 0`, `y(1) = 2/Γ(α+3)`. The minimiser is
//!   `y*(x) = 2x^(α+2)/Γ(α+3)` (so that `₀Dₓ^α y* = x²`) with multiplier
//!   `λ = 2`; at `α = 1` it is `x³/3`.
//! * `psi`: the functional
//!   `Ψ(y) = ∫₀¹ [x^α/Γ(α+1) (₀Dₓ^α y)² - 2 x^α ₀Dₓ^α y]² dx`, `y(0) = 0`,
//!   `y(1) = 1`, which is stationary at `ȳ = x^α`. Along `ȳ` its value is
//!   `ψ(α) = ∫₀¹ [x^α Γ(α+1)]² dx = Γ(α+1)²/(2α+1)`.

use crate::error::Result;
use crate::fracops::{Grid, SampledFunction};
use crate::lagrangian::parse;
use crate::specfun::gamma;
use crate::variational::IsoProblem;

pub const EQ_EX_LAGRANGIAN: &str = "x^4 + u^2";
pub const EQ_EX_CONSTRAINT: &str = "x^2*u";
pub const EQ_EX_LEVEL: f64 = 0.2;

pub const PSI_LAGRANGIAN: &str = "((x^alpha/gamma(alpha+1))*u^2 - 2*x^alpha*u)^2";
/// Integrand of `ψ(α)`: the Ψ integrand with `y = x^α` substituted.
pub const PSI_REDUCED: &str = "(x^alpha*gamma(alpha+1))^2";

/// Right boundary value `y(1) = 2/Γ(α+3)` of the isoperimetric example.
pub fn eq_ex_right_value(alpha: f64) -> Result<f64> {
    Ok(2.0 / gamma(alpha + 3.0)?)
}

pub fn eq_ex(alpha: f64) -> Result<IsoProblem> {
    IsoProblem::builder(parse(EQ_EX_LAGRANGIAN)?)
        .constraint(parse(EQ_EX_CONSTRAINT)?, EQ_EX_LEVEL)
        .alpha(alpha)
        .interval(0.0, 1.0)
        .boundary(0.0, eq_ex_right_value(alpha)?)
        .build()
}

/// `y*(x) = 2x^(α+2)/Γ(α+3)`.
pub fn eq_ex_solution(alpha: f64, x: f64) -> Result<f64> {
    Ok(2.0 * x.powf(alpha + 2.0) / gamma(alpha + 3.0)?)
}

pub fn eq_ex_solution_sampled(alpha: f64, grid: Grid) -> Result<SampledFunction> {
    let c = 2.0 / gamma(alpha + 3.0)?;
    SampledFunction::from_fn(grid, |x| c * x.powf(alpha + 2.0))
}

pub fn psi(alpha: f64) -> Result<IsoProblem> {
    IsoProblem::builder(parse(PSI_LAGRANGIAN)?).alpha(alpha).interval(0.0, 1.0).boundary(0.0, 1.0).build()
}

/// `ȳ = x^α` sampled on `grid`.
pub fn psi_extremal(alpha: f64, grid: Grid) -> Result<SampledFunction> {
    SampledFunction::from_fn(grid, |x| x.powf(alpha))
}

/// `ψ(α) = Γ(α+1)²/(2α+1)`.
pub fn psi_closed_form(alpha: f64) -> Result<f64> {
    let g = gamma(alpha + 1.0)?;
    Ok(g * g / (2.0 * alpha + 1.0))
}
