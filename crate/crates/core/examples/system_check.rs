//! Joint check of the Euler–Lagrange equation and order stationarity for
//! the power-law family at its optimal order.

use fracvar::builtin;
use fracvar::solver::{optimize_alpha, stationarity_system_check, AlphaFamily, SolverOptions};
use fracvar::SampledFunction;

fn main() -> fracvar::Result<()> {
    let best = optimize_alpha(&AlphaFamily::Psi, (0.0, 1.0), &SolverOptions { n: 4096, ..Default::default() })?;
    let alpha = best.alpha;
    println!("alpha*={alpha:.6}");

    let problem = builtin::psi(alpha)?;
    for n in [256, 1024, 4096] {
        let y = builtin::psi_extremal(alpha, problem.grid(n)?)?;
        let (el, da) = stationarity_system_check(&problem, &y, alpha)?;
        let bump = SampledFunction::from_fn(*y.grid(), |x| 0.1 * x * (1.0 - x))?;
        let (el_off, _) = stationarity_system_check(&problem, &y.combine(1.0, &bump, 1.0)?, alpha)?;
        println!("n={n:>5} el={el:.3e} dJ/dalpha={da:.3e} perturbed el={el_off:.3e}");
    }
    Ok(())
}
