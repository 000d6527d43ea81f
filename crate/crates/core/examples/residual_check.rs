//! Evaluates the residual diagnostics at the exact extremal and at a
//! perturbation of it, with and without a known multiplier.

use fracvar::builtin;
use fracvar::cli::cmd_check;
use fracvar::SampledFunction;

fn main() -> fracvar::Result<()> {
    let alpha = 0.5;
    let problem = builtin::eq_ex(alpha)?;
    let exact = builtin::eq_ex_solution_sampled(alpha, problem.grid(512)?)?;

    println!("-- exact extremal, lambda = 2");
    print!("{}", cmd_check(&problem, &exact, Some(1.0), Some(2.0))?);

    println!("-- exact extremal, lambda fitted");
    print!("{}", cmd_check(&problem, &exact, None, None)?);

    // A bump vanishing at both ends keeps the boundary values.
    let bump = SampledFunction::from_fn(*exact.grid(), |x| 0.05 * (std::f64::consts::PI * x).sin())?;
    let perturbed = exact.combine(1.0, &bump, 1.0)?;
    println!("-- perturbed, lambda fitted");
    print!("{}", cmd_check(&problem, &perturbed, None, None)?);
    Ok(())
}
