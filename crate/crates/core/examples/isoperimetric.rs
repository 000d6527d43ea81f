//! Solves the half-order isoperimetric test problem and compares with its
//! closed-form extremal `y(x) = 2 x^(α+2) / Γ(α+3)`.

use fracvar::builtin;
use fracvar::solver::{solve_isoperimetric, SolverOptions};

fn main() -> fracvar::Result<()> {
    let alpha = 0.5;
    let problem = builtin::eq_ex(alpha)?;
    println!("{:>6} {:>12} {:>14} {:>12} {:>6}", "n", "lambda", "max |y-y*|", "kkt", "iters");
    for n in [128, 256, 512, 1024] {
        let sol = solve_isoperimetric(&problem, &SolverOptions { n, ..Default::default() })?;
        let g = sol.y.grid();
        let err =
            (0..=n).map(|i| (sol.y[i] - builtin::eq_ex_solution(alpha, g.node(i)).unwrap()).abs()).fold(0.0, f64::max);
        println!("{n:>6} {:>12.6} {:>14.3e} {:>12.2e} {:>6}", sol.lambda, err, sol.kkt_norm, sol.iterations);
    }
    Ok(())
}
