//! Finds the derivative order minimising the reduced cost of the power-law
//! family and compares with the closed form.

use fracvar::builtin;
use fracvar::solver::{optimize_alpha, sample_objective, AlphaFamily, SolverOptions};

fn main() -> fracvar::Result<()> {
    let opts = SolverOptions { n: 4096, ..Default::default() };
    let family = AlphaFamily::Psi;
    for (alpha, value) in sample_objective(&family, 0.0, 1.0, 10, &opts)? {
        println!("alpha={alpha:.1} psi={value:.8}");
    }
    let best = optimize_alpha(&family, (0.0, 1.0), &opts)?;
    println!(
        "alpha*={:.6} psi(alpha*)={:.8} closed form={:.8} dpsi={:.2e}",
        best.alpha,
        best.value,
        builtin::psi_closed_form(best.alpha)?,
        best.derivative
    );
    Ok(())
}
