//! Left and right Grünwald–Letnikov derivatives of powers against the
//! closed-form power rule.
//!
//! ```text
//! cargo run --example fractional_derivative
//! ```

use fracvar::fracops::{left_rl, power_rule_left, power_rule_right, right_rl};
use fracvar::{Grid, SampledFunction};

fn main() -> fracvar::Result<()> {
    let alpha = 0.5;
    println!("{:>6} {:>6} {:>14} {:>14}", "n", "side", "max rel err", "at x");
    for n in [64, 256, 1024] {
        let grid = Grid::new(0.0, 1.0, n)?;
        let left = left_rl(&SampledFunction::from_fn(grid, |x| x * x)?, alpha)?;
        let right = right_rl(&SampledFunction::from_fn(grid, |x| (1.0 - x) * (1.0 - x))?, alpha)?;
        // Skip the first and last eighth where the rule is slowest.
        let (mut wl, mut wr) = ((0.0, 0.0), (0.0, 0.0));
        for i in n / 8..=7 * n / 8 {
            let x = grid.node(i);
            let el = (left[i] - power_rule_left(2.0, alpha, 0.0, x)?).abs() / power_rule_left(2.0, alpha, 0.0, x)?;
            let er = (right[i] - power_rule_right(2.0, alpha, 1.0, x)?).abs() / power_rule_right(2.0, alpha, 1.0, x)?;
            if el > wl.0 {
                wl = (el, x);
            }
            if er > wr.0 {
                wr = (er, x);
            }
        }
        println!("{n:>6} {:>6} {:>14.3e} {:>14.4}", "left", wl.0, wl.1);
        println!("{n:>6} {:>6} {:>14.3e} {:>14.4}", "right", wr.0, wr.1);
    }
    Ok(())
}
