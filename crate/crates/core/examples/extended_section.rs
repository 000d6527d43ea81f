//! A problem whose cost and constraint integrate over a proper section
//! `[A, B]` of `[a, b]`. The extremal satisfies one equation on the section
//! and separate equations on the tails.

use fracvar::cli::cmd_check;
use fracvar::solver::{solve_isoperimetric, SolverOptions};
use fracvar::variational::{extended_residuals, interior_sup};
use fracvar::{builtin, parse, IsoProblem};

fn main() -> fracvar::Result<()> {
    let alpha = 0.5;
    let problem = IsoProblem::builder(parse("x^4 + u^2")?)
        .alpha(alpha)
        .constraint(parse("x^2*u")?, 0.1)
        .section(0.25, 0.75)
        .boundary(0.0, builtin::eq_ex_right_value(alpha)?)
        .build()?;
    let sol = solve_isoperimetric(&problem, &SolverOptions { n: 256, ..Default::default() })?;
    println!("lambda={:.6} constraint_gap={:.2e} kkt={:.2e}", sol.lambda, sol.constraint_gap, sol.kkt_norm);

    let r = extended_residuals(&problem, &sol.y, sol.lambda0, sol.lambda)?;
    println!("middle equation interior sup = {:.3e}", interior_sup(r.middle.values()));
    match &r.left_tail {
        Some(t) => println!("left tail interior sup = {:.3e}", interior_sup(t.values())),
        None => println!("left tail absent"),
    }
    // Only the left derivative appears, so no right-tail equation exists.
    println!("right tail present: {}", r.right_tail.is_some());

    print!("{}", cmd_check(&problem, &sol.y, Some(sol.lambda0), Some(sol.lambda))?);
    Ok(())
}
