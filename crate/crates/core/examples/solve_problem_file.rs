//! Loads one of the shipped problem files, solves it and prints the summary
//! line and the first rows of the solution table.
//!
//! ```text
//! cargo run --example solve_problem_file -- crates/core/examples/eq_ex_section.problem
//! ```

use fracvar::cli::{cmd_solve, load_problem, Overrides};

fn main() -> fracvar::Result<()> {
    let default = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/eq_ex_alpha_0.5.problem");
    let path = std::env::args().nth(1).unwrap_or_else(|| default.to_string());
    let spec = load_problem(&path, Overrides::default())?;
    let (csv, summary) = cmd_solve(&spec)?;
    println!("{summary}");
    for line in csv.lines().take(6) {
        println!("{line}");
    }
    println!("... {} rows", csv.lines().count() - 1);
    Ok(())
}
