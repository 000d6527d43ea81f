//! When the constraint functional has vanishing first variation every
//! admissible curve is critical for it and the multiplier on the cost must
//! be zero. Here `I(y) = ∫ x dx` does not depend on `y` at all.

use fracvar::solver::{solve_isoperimetric, SolverOptions};
use fracvar::{parse, IsoProblem};

fn main() -> fracvar::Result<()> {
    let problem =
        IsoProblem::builder(parse("u^2 + y^2")?).alpha(0.5).constraint(parse("x")?, 0.5).boundary(0.0, 1.0).build()?;
    let sol = solve_isoperimetric(&problem, &SolverOptions { n: 128, ..Default::default() })?;
    println!(
        "abnormal={} lambda0={} lambda={} constraint_gap={:.2e} residual={:.2e}",
        sol.abnormal, sol.lambda0, sol.lambda, sol.constraint_gap, sol.residual_norm
    );

    // An unattainable level on a curve-independent constraint.
    let infeasible = IsoProblem::builder(parse("u^2")?).alpha(0.5).constraint(parse("x")?, 0.7).build()?;
    match solve_isoperimetric(&infeasible, &SolverOptions { n: 128, ..Default::default() }) {
        Ok(_) => println!("unexpectedly solved"),
        Err(e) => println!("level 0.7: {e}"),
    }
    Ok(())
}
