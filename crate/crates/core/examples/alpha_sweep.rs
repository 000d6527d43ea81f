//! Sweeps the derivative order towards 1 and prints a CSV of the extremals,
//! which approach the classical solution `x^3 / 3`.
//!
//! ```text
//! cargo run --example alpha_sweep > sweep.csv
//! ```

use fracvar::builtin;
use fracvar::cli::write_csv;
use fracvar::solver::{solve_isoperimetric, SolverOptions};

fn main() -> fracvar::Result<()> {
    let orders = [0.2, 0.5, 0.7, 0.9, 1.0];
    let opts = SolverOptions { n: 256, ..Default::default() };
    let mut columns = Vec::new();
    let mut x = Vec::new();
    for &alpha in &orders {
        let sol = solve_isoperimetric(&builtin::eq_ex(alpha)?, &opts)?;
        x = sol.y.grid().nodes().collect();
        let dist = x.iter().zip(sol.y.values()).map(|(x, y)| (y - x.powi(3) / 3.0).abs()).fold(0.0, f64::max);
        eprintln!("alpha={alpha:.1} lambda={:.6} max|y - x^3/3|={dist:.3e}", sol.lambda);
        columns.push(sol.y.into_values());
    }
    let classical: Vec<f64> = x.iter().map(|x| x.powi(3) / 3.0).collect();
    let names: Vec<String> = orders.iter().map(|a| format!("y_{a}")).collect();
    let mut header = vec!["x"];
    header.extend(names.iter().map(String::as_str));
    header.push("x3_over_3");
    let mut cols: Vec<&[f64]> = vec![&x];
    cols.extend(columns.iter().map(Vec::as_slice));
    cols.push(&classical);
    print!("{}", write_csv(&header, &cols));
    Ok(())
}
