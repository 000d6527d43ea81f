//! Problem files, CSV tables and the `fracvar` subcommands.
//!
//! A problem file is flat TOML:
//!
//! ```toml
//! lagrangian = "x^4 + u^2"
//! constraint = "x^2*u"
//! level = 0.2
//! alpha = 0.5
//! y_b = "2/gamma(alpha+3)"
//! n = 1024
//! ```
//!
//! Keys: `lagrangian` (required), `constraint`, `level`, `alpha`, `beta`,
//! `a`, `b`, `A`, `B`, `y_a`, `y_b`, `n`, `max_iterations`, `kkt_tolerance`,
//! `abnormal_gradient_tolerance` and `initial_guess` (an expression in `x`).
//! Real-valued keys take a number or a constant expression, which may use
//! `alpha`. `builtin:eq_ex` and `builtin:psi` name the two shipped problems.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::builtin;
use crate::error::{Error, Result};
use crate::fracops::{left_rl, rl_derivative, Grid, SampledFunction, Side};
use crate::lagrangian::{parse, Environment, Expr, Var};
use crate::solver::{
    optimize_alpha, sample_objective, solve_isoperimetric, solve_unconstrained, AlphaFamily, InitialGuess, SolveResult,
    SolverOptions,
};
use crate::variational::{
    alpha_stationarity, discrete_gradient, eval_functional, extended_residuals, extremal_check, interior_sup,
    Functional, IsoProblem, DEFAULT_DALPHA,
};

/// A problem together with the options to solve it.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub problem: IsoProblem,
    pub options: SolverOptions,
    /// Set for the built-in ψ problem, whose order search needs no solve.
    pub builtin_psi: bool,
}

/// Command-line values that take precedence over the problem file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub n: Option<usize>,
}

const KEYS: [&str; 16] = [
    "lagrangian",
    "constraint",
    "level",
    "alpha",
    "beta",
    "a",
    "b",
    "A",
    "B",
    "y_a",
    "y_b",
    "n",
    "max_iterations",
    "kkt_tolerance",
    "abnormal_gradient_tolerance",
    "initial_guess",
];

/// Default grid for the built-in problems.
pub const BUILTIN_N: usize = 1024;
/// Default order for the built-in problems.
pub const BUILTIN_ALPHA: f64 = 0.5;

/// Loads `builtin:eq_ex`, `builtin:psi` or a problem file.
pub fn load_problem(source: &str, ov: Overrides) -> Result<ProblemSpec> {
    match source {
        "builtin:eq_ex" => {
            let alpha = ov.alpha.unwrap_or(BUILTIN_ALPHA);
            let options = SolverOptions { n: ov.n.unwrap_or(BUILTIN_N), ..Default::default() };
            Ok(ProblemSpec { problem: builtin::eq_ex(alpha)?, options, builtin_psi: false })
        }
        "builtin:psi" => {
            let alpha = ov.alpha.unwrap_or(BUILTIN_ALPHA);
            let problem = builtin::psi(alpha)?;
            let n = ov.n.unwrap_or(BUILTIN_N);
            // ȳ is a saddle of Ψ, so Newton has to start next to it.
            let guess = builtin::psi_extremal(alpha, problem.grid(n)?)?;
            let options = SolverOptions { n, initial_guess: InitialGuess::Custom(guess), ..Default::default() };
            Ok(ProblemSpec { problem, options, builtin_psi: true })
        }
        s if s.starts_with("builtin:") => Err(Error::Problem(format!("unknown built-in problem `{s}`"))),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            parse_problem_file(&text, ov)
        }
    }
}

/// Parses the text of a problem file.
pub fn parse_problem_file(text: &str, ov: Overrides) -> Result<ProblemSpec> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::key("(document)", e.message()))?;
    for key in table.keys() {
        if !KEYS.contains(&key.as_str()) {
            return Err(Error::key(key, "unknown key"));
        }
    }
    let string = |key: &str| -> Result<Option<&str>> {
        match table.get(key) {
            None => Ok(None),
            Some(toml::Value::String(s)) => Ok(Some(s)),
            Some(_) => Err(Error::key(key, "expected a quoted expression")),
        }
    };
    let expr = |key: &str| -> Result<Option<Expr>> {
        string(key)?.map(|s| parse(s).map_err(|e| Error::key(key, e))).transpose()
    };
    let count = |key: &str| -> Result<Option<usize>> {
        match table.get(key) {
            None => Ok(None),
            Some(toml::Value::Integer(i)) if *i > 0 => Ok(Some(*i as usize)),
            Some(_) => Err(Error::key(key, "expected a positive integer")),
        }
    };
    let real = |key: &str, alpha: Option<f64>| -> Result<Option<f64>> {
        let v = match table.get(key) {
            None => return Ok(None),
            Some(toml::Value::Float(f)) => *f,
            Some(toml::Value::Integer(i)) => *i as f64,
            Some(toml::Value::String(s)) => {
                let e = parse(s).map_err(|e| Error::key(key, e))?;
                if [Var::X, Var::Y, Var::U, Var::V].iter().any(|&v| e.depends_on(v)) {
                    return Err(Error::key(key, "expression must be constant (it may use alpha)"));
                }
                if e.depends_on(Var::Alpha) && alpha.is_none() {
                    return Err(Error::key(key, "expression uses alpha but alpha is not set"));
                }
                let env = Environment { alpha: alpha.unwrap_or(0.0), ..Default::default() };
                e.eval(&env).map_err(|e| Error::key(key, e))?
            }
            Some(_) => return Err(Error::key(key, "expected a number or a quoted constant expression")),
        };
        if v.is_finite() {
            Ok(Some(v))
        } else {
            Err(Error::key(key, "value is not finite"))
        }
    };

    let lagrangian = expr("lagrangian")?.ok_or_else(|| Error::key("lagrangian", "required key is missing"))?;
    let alpha = match ov.alpha {
        Some(a) => Some(a),
        None => real("alpha", None)?,
    };
    let beta = match ov.beta {
        Some(b) => Some(b),
        None => real("beta", alpha)?,
    };
    let a = real("a", alpha)?.unwrap_or(0.0);
    let b = real("b", alpha)?.unwrap_or(1.0);
    let lo = real("A", alpha)?.unwrap_or(a);
    let hi = real("B", alpha)?.unwrap_or(b);
    let y_a = real("y_a", alpha)?.unwrap_or(0.0);
    let y_b = real("y_b", alpha)?.unwrap_or(0.0);

    let mut builder = IsoProblem::builder(lagrangian).interval(a, b).section(lo, hi).boundary(y_a, y_b);
    match (expr("constraint")?, real("level", alpha)?) {
        (Some(g), Some(l)) => builder = builder.constraint(g, l),
        (Some(_), None) => return Err(Error::key("level", "required when a constraint is given")),
        (None, Some(_)) => return Err(Error::key("level", "given without a constraint")),
        (None, None) => {}
    }
    if let Some(alpha) = alpha {
        builder = builder.alpha(alpha);
    }
    if let Some(beta) = beta {
        builder = builder.beta(beta);
    }
    let problem = builder.build()?;

    let defaults = SolverOptions::default();
    let n = match ov.n {
        Some(n) => n,
        None => count("n")?.unwrap_or(defaults.n),
    };
    let initial_guess = match expr("initial_guess")? {
        None => InitialGuess::Linear,
        Some(e) => {
            let grid = problem.grid(n)?;
            let mut env = Environment { alpha: alpha.unwrap_or(0.0), ..Default::default() };
            let mut values = Vec::with_capacity(grid.len());
            for x in grid.nodes() {
                env.x = x;
                values.push(e.eval(&env).map_err(|err| Error::key("initial_guess", err))?);
            }
            InitialGuess::Custom(SampledFunction::new(grid, values).map_err(|err| Error::key("initial_guess", err))?)
        }
    };
    let options = SolverOptions {
        n,
        max_iterations: count("max_iterations")?.unwrap_or(defaults.max_iterations),
        kkt_tolerance: real("kkt_tolerance", alpha)?.unwrap_or(defaults.kkt_tolerance),
        abnormal_gradient_tolerance: real("abnormal_gradient_tolerance", alpha)?
            .unwrap_or(defaults.abnormal_gradient_tolerance),
        initial_guess,
    };
    if options.n < 16 {
        return Err(Error::key("n", format!("need at least 16 intervals, got {}", options.n)));
    }
    for (key, t) in
        [("kkt_tolerance", options.kkt_tolerance), ("abnormal_gradient_tolerance", options.abnormal_gradient_tolerance)]
    {
        if !(t > 0.0) {
            return Err(Error::key(key, "must be positive"));
        }
    }
    Ok(ProblemSpec { problem, options, builtin_psi: false })
}

/// CSV text with a header row, 17 significant digits and LF line endings.
pub fn write_csv(header: &[&str], columns: &[&[f64]]) -> String {
    let rows = columns.first().map_or(0, |c| c.len());
    let mut out = header.join(",");
    out.push('\n');
    for i in 0..rows {
        let row: Vec<String> = columns.iter().map(|c| format!("{:.16e}", c[i])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Header and columns of a CSV table.
pub fn read_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<String> =
        lines.next().ok_or_else(|| Error::Io("empty CSV".into()))?.split(',').map(|s| s.trim().to_string()).collect();
    let mut cols = vec![Vec::new(); header.len()];
    for (row, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != header.len() {
            return Err(Error::Io(format!("CSV row {} has {} cells, expected {}", row + 1, cells.len(), header.len())));
        }
        for (c, cell) in cols.iter_mut().zip(cells) {
            c.push(cell.trim().parse::<f64>().map_err(|e| Error::Io(format!("CSV row {}: {e}", row + 1)))?);
        }
    }
    Ok((header, cols))
}

/// Samples `f(x)` on the grid and applies the left or right derivative.
/// Columns `x, f, D`.
pub fn cmd_deriv(function: &str, alpha: f64, side: Side, a: f64, b: f64, n: usize) -> Result<String> {
    let e = parse(function)?;
    if [Var::Y, Var::U, Var::V].iter().any(|&v| e.depends_on(v)) {
        return Err(Error::Problem("the function may only depend on x".into()));
    }
    let grid = Grid::new(a, b, n)?;
    let mut env = Environment { alpha, ..Default::default() };
    let mut values = Vec::with_capacity(grid.len());
    for x in grid.nodes() {
        env.x = x;
        values.push(e.eval(&env)?);
    }
    let f = SampledFunction::new(grid, values)?;
    let d = rl_derivative(&f, alpha, side)?;
    let x: Vec<f64> = grid.nodes().collect();
    Ok(write_csv(&["x", "f", "D"], &[&x, f.values(), d.values()]))
}

/// Solves the problem: isoperimetric when it has a constraint, otherwise
/// unconstrained.
pub fn solve(spec: &ProblemSpec) -> Result<SolveResult> {
    if spec.problem.constraint().is_some() {
        solve_isoperimetric(&spec.problem, &spec.options)
    } else {
        solve_unconstrained(&spec.problem, &spec.options)
    }
}

pub fn summary_line(r: &SolveResult) -> String {
    format!(
        "lambda0={} lambda={:.16e} constraint_gap={:.3e} residual_norm={:.6e} kkt_norm={:.3e} iterations={} abnormal={}",
        r.lambda0, r.lambda, r.constraint_gap, r.residual_norm, r.kkt_norm, r.iterations, r.abnormal
    )
}

/// CSV `x, y, u` (plus `v` when the problem has a right order) of a solution.
pub fn solution_csv(p: &IsoProblem, y: &SampledFunction) -> Result<String> {
    let x: Vec<f64> = y.grid().nodes().collect();
    let mut header = vec!["x", "y"];
    let mut derived = Vec::new();
    if let Some(alpha) = p.alpha() {
        header.push("u");
        derived.push(left_rl(y, alpha)?.into_values());
    }
    if let Some(beta) = p.beta() {
        header.push("v");
        derived.push(rl_derivative(y, beta, Side::Right)?.into_values());
    }
    let mut cols: Vec<&[f64]> = vec![&x, y.values()];
    cols.extend(derived.iter().map(|c| c.as_slice()));
    Ok(write_csv(&header, &cols))
}

/// Runs the solver; returns the CSV and the summary line.
pub fn cmd_solve(spec: &ProblemSpec) -> Result<(String, String)> {
    let r = solve(spec)?;
    Ok((solution_csv(&spec.problem, &r.y)?, summary_line(&r)))
}

/// Reads the `x` and `y` columns of a solution table onto the problem grid.
pub fn load_solution(p: &IsoProblem, csv: &str) -> Result<SampledFunction> {
    let (header, cols) = read_csv(csv)?;
    let col = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .map(|i| &cols[i])
            .ok_or_else(|| Error::Io(format!("CSV lacks a `{name}` column")))
    };
    let (x, y) = (col("x")?, col("y")?);
    if x.len() < 3 {
        return Err(Error::GridMismatch(format!("solution has {} nodes", x.len())));
    }
    let grid = p.grid(x.len() - 1)?;
    let tol = 1e-9 * (grid.b() - grid.a());
    if let Some(i) = (0..x.len()).find(|&i| (x[i] - grid.node(i)).abs() > tol) {
        return Err(Error::GridMismatch(format!(
            "CSV node {i} is x = {}, the problem grid has {} there",
            x[i],
            grid.node(i)
        )));
    }
    SampledFunction::new(grid, y.clone())
}

/// Diagnostics of a sampled function against a problem.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub n: usize,
    pub cost: f64,
    /// `I(y)` and `I(y) - l`.
    pub constraint: Option<(f64, f64)>,
    /// Whether `y` is an extremal of `I`, the field norm and the tolerance.
    pub extremal: Option<(bool, f64, f64)>,
    pub lambda0: f64,
    pub lambda: f64,
    pub lambda_estimated: bool,
    /// Interior norm of the field of `λ₀ L - λ g` over all sections.
    pub residual_norm: f64,
    /// `sup |∇J - λ ∇I| / (h (1 + |λ|))` at interior nodes.
    pub kkt_norm: f64,
    /// Interior norms of the middle, left-tail and right-tail equations when
    /// the problem integrates over a proper section.
    pub sections: Option<(f64, Option<f64>, Option<f64>)>,
    pub alpha_stationarity: Option<f64>,
}

/// Evaluates every residual at `y`. Without `lambda` the multiplier is the
/// least-squares fit of the discrete stationarity condition.
pub fn cmd_check(
    p: &IsoProblem,
    y: &SampledFunction,
    lambda0: Option<f64>,
    lambda: Option<f64>,
) -> Result<CheckReport> {
    let grid = *y.grid();
    let h = grid.h();
    let m = grid.n();
    let gj = discrete_gradient(p, Functional::Cost, y)?;
    let gi = match p.constraint() {
        Some(_) => Some(discrete_gradient(p, Functional::Constraint, y)?),
        None => None,
    };
    let lambda0 = lambda0.unwrap_or(1.0);
    let (lambda, lambda_estimated) = match (lambda, &gi) {
        (Some(l), _) => (l, false),
        (None, None) => (0.0, false),
        (None, Some(gi)) => {
            let num: f64 = (1..m).map(|j| gj[j] * gi[j]).sum();
            let den: f64 = (1..m).map(|j| gi[j] * gi[j]).sum();
            (if den > 0.0 { lambda0 * num / den } else { 0.0 }, true)
        }
    };
    let kkt_norm =
        (1..m).map(|j| (lambda0 * gj[j] - lambda * gi.as_ref().map_or(0.0, |g| g[j])).abs() / h).fold(0.0, f64::max)
            / (lambda0.abs() + lambda.abs()).max(1.0);

    let report = extended_residuals(p, y, lambda0, lambda)?;
    let sections = p.has_subsection().then(|| {
        (
            interior_sup(report.middle.values()),
            report.left_tail.as_ref().map(|t| interior_sup(t.values())),
            report.right_tail.as_ref().map(|t| interior_sup(t.values())),
        )
    });
    let (constraint, extremal) = match p.constraint() {
        Some(c) => {
            let i = eval_functional(p, Functional::Constraint, y)?;
            let tol = crate::variational::default_extremal_tolerance(p, y)?;
            let (flag, norm) = extremal_check(p, y, Some(tol))?;
            (Some((i, i - c.level)), Some((flag, norm, tol)))
        }
        None => (None, None),
    };
    let alpha_stationarity = match p.alpha() {
        Some(a) if p.lagrangian().depends_on(Var::U) && a + DEFAULT_DALPHA <= 1.0 && a > DEFAULT_DALPHA => {
            Some(alpha_stationarity(p, y, DEFAULT_DALPHA)?)
        }
        _ => None,
    };
    Ok(CheckReport {
        n: grid.n(),
        cost: eval_functional(p, Functional::Cost, y)?,
        constraint,
        extremal,
        lambda0,
        lambda,
        lambda_estimated,
        residual_norm: report.sup_norm_interior,
        kkt_norm,
        sections,
        alpha_stationarity,
    })
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "grid intervals: {}", self.n)?;
        writeln!(f, "cost J(y): {:.12e}", self.cost)?;
        if let Some((i, gap)) = self.constraint {
            writeln!(f, "constraint I(y): {i:.12e} (gap {gap:.3e})")?;
        }
        if let Some((flag, norm, tol)) = self.extremal {
            writeln!(f, "not an extremal of I: {} (field norm {norm:.6e}, tolerance {tol:.3e})", !flag)?;
        }
        let how = if self.lambda_estimated { "least squares" } else { "given" };
        writeln!(f, "multipliers: lambda0={} lambda={:.12e} ({how})", self.lambda0, self.lambda)?;
        writeln!(f, "iso-residual interior norm: {:.6e}", self.residual_norm)?;
        writeln!(f, "discrete kkt norm: {:.6e}", self.kkt_norm)?;
        if let Some((mid, left, right)) = self.sections {
            writeln!(f, "middle section norm: {mid:.6e}")?;
            match left {
                Some(v) => writeln!(f, "left tail norm: {v:.6e}")?,
                None => writeln!(f, "left tail: absent")?,
            }
            match right {
                Some(v) => writeln!(f, "right tail norm: {v:.6e}")?,
                None => writeln!(f, "right tail: absent")?,
            }
        }
        match self.alpha_stationarity {
            Some(v) => writeln!(f, "alpha stationarity: {v:.6e}"),
            None => writeln!(f, "alpha stationarity: n/a"),
        }
    }
}

/// Number of objective samples written by `alpha-opt`.
pub const DEFAULT_SAMPLES: usize = 100;

/// Samples the order objective over the bracket, then locates `α*`.
/// Returns the CSV `alpha, objective` and the report line.
pub fn cmd_alpha_opt(spec: &ProblemSpec, lo: f64, hi: f64, samples: usize) -> Result<(String, String)> {
    let family = if spec.builtin_psi { AlphaFamily::Psi } else { AlphaFamily::Problem(spec.problem.clone()) };
    let opts = SolverOptions { initial_guess: InitialGuess::Linear, ..spec.options.clone() };
    let best = optimize_alpha(&family, (lo, hi), &opts)?;
    let pts = sample_objective(&family, lo, hi, samples, &opts)?;
    let a: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let v: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let report = format!("alpha_star={:.16e} value={:.16e} derivative={:.3e}", best.alpha, best.value, best.derivative);
    Ok((write_csv(&["alpha", "objective"], &[&a, &v]), report))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fracvar", version, about = "Fractional variational problems on a uniform grid")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Left or right fractional derivative of an expression in x.
    Deriv {
        /// Expression in x, e.g. "x^2".
        function: String,
        /// Order in (0, 1].
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        #[arg(long, default_value_t = 0.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        /// Grid intervals.
        #[arg(long, default_value_t = 1024)]
        n: usize,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve a problem file or built-in problem; writes x, y, u.
    Solve {
        /// Path to a .problem file, or builtin:eq_ex / builtin:psi.
        problem: String,
        /// Overrides the left order.
        #[arg(long)]
        alpha: Option<f64>,
        /// Overrides the right order.
        #[arg(long)]
        beta: Option<f64>,
        /// Overrides the grid intervals.
        #[arg(long)]
        n: Option<usize>,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Residual diagnostics of a solution table.
    Check {
        /// Path to a .problem file, or builtin:eq_ex / builtin:psi.
        problem: String,
        /// CSV written by `solve`, on the problem's grid.
        solution: PathBuf,
        /// Constraint multiplier; fitted by least squares when absent.
        #[arg(long)]
        lambda: Option<f64>,
        /// Cost multiplier.
        #[arg(long)]
        lambda0: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
    },
    /// Locate a stationary order of the problem's objective.
    AlphaOpt {
        /// Path to a .problem file, or builtin:eq_ex / builtin:psi.
        problem: String,
        #[arg(long, default_value_t = 0.0)]
        bracket_lo: f64,
        #[arg(long, default_value_t = 1.0)]
        bracket_hi: f64,
        /// Grid intervals.
        #[arg(long)]
        n: Option<usize>,
        /// Sampling intervals for the objective table.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// CSV destination for the objective table.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// What a command prints: a table (to `--output` or standard output) and a
/// report.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub csv: Option<String>,
    pub report: String,
    pub path: Option<PathBuf>,
}

fn write_to(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Runs a parsed command. The table is written to `--output` when given.
pub fn run(cmd: Command) -> Result<Output> {
    let (csv, report, path) = match cmd {
        Command::Deriv { function, alpha, side, a, b, n, output } => {
            let csv = cmd_deriv(&function, alpha, side.into(), a, b, n)?;
            (Some(csv), format!("wrote {} nodes", n + 1), output)
        }
        Command::Solve { problem, alpha, beta, n, output } => {
            let spec = load_problem(&problem, Overrides { alpha, beta, n })?;
            let (csv, summary) = cmd_solve(&spec)?;
            (Some(csv), summary, output)
        }
        Command::Check { problem, solution, lambda, lambda0, alpha, beta } => {
            let spec = load_problem(&problem, Overrides { alpha, beta, n: None })?;
            let text =
                std::fs::read_to_string(&solution).map_err(|e| Error::Io(format!("{}: {e}", solution.display())))?;
            let y = load_solution(&spec.problem, &text)?;
            let report = cmd_check(&spec.problem, &y, lambda0, lambda)?;
            (None, report.to_string().trim_end().to_string(), None)
        }
        Command::AlphaOpt { problem, bracket_lo, bracket_hi, n, samples, output } => {
            let spec = load_problem(&problem, Overrides { n, ..Default::default() })?;
            let (csv, report) = cmd_alpha_opt(&spec, bracket_lo, bracket_hi, samples)?;
            (Some(csv), report, output)
        }
    };
    if let (Some(csv), Some(path)) = (&csv, &path) {
        write_to(path, csv)?;
    }
    Ok(Output { csv, report, path })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_exact() {
        let x = [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23];
        let text = write_csv(&["x"], &[&x]);
        assert!(!text.contains('\r'));
        let (h, cols) = read_csv(&text).unwrap();
        assert_eq!(h, vec!["x"]);
        for (a, b) in x.iter().zip(&cols[0]) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn problem_file_keys() {
        let text = "lagrangian = \"x^4 + u^2\"\nconstraint = \"x^2*u\"\nlevel = 0.2\nalpha = 0.5\ny_b = \"2/gamma(alpha+3)\"\nn = 64\n";
        let spec = parse_problem_file(text, Overrides::default()).unwrap();
        assert_eq!(spec.options.n, 64);
        assert_eq!(spec.problem.boundary().1, builtin::eq_ex_right_value(0.5).unwrap());
        let spec = parse_problem_file(text, Overrides { alpha: Some(1.0), ..Default::default() }).unwrap();
        assert!((spec.problem.boundary().1 - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn problem_file_errors_name_keys() {
        let bad = |text: &str, want: &str| match parse_problem_file(text, Overrides::default()) {
            Err(Error::ProblemFile { key, .. }) => assert_eq!(key, want, "{text}"),
            other => panic!("{text}: {other:?}"),
        };
        bad("lagrangian = \"u^2\"\nalpha = 0.5\nlevl = 1\n", "levl");
        bad("alpha = 0.5\n", "lagrangian");
        bad("lagrangian = \"u^2 +\"\nalpha = 0.5\n", "lagrangian");
        bad("lagrangian = \"u^2\"\nalpha = 0.5\nconstraint = \"u\"\n", "level");
        bad("lagrangian = \"u^2\"\nalpha = 0.5\ny_b = \"x\"\n", "y_b");
        bad("lagrangian = \"u^2\"\nalpha = 0.5\nn = -3\n", "n");
        bad("lagrangian = \"u^2\"\nalpha = 0.5\nn = 4\n", "n");
        bad("lagrangian = = 1", "(document)");
        assert!(matches!(
            parse_problem_file("lagrangian = \"u^2\"\nalpha = 1.5\n", Overrides::default()),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn deriv_columns() {
        let csv = cmd_deriv("x", 1.0, Side::Left, 0.0, 1.0, 16).unwrap();
        let (h, cols) = read_csv(&csv).unwrap();
        assert_eq!(h, ["x", "f", "D"]);
        assert!(cols[2].iter().all(|d| (d - 1.0).abs() < 1e-12));
        assert!(cmd_deriv("y", 0.5, Side::Left, 0.0, 1.0, 16).is_err());
    }

    #[test]
    fn solution_grid_checked() {
        let p = builtin::eq_ex(0.5).unwrap();
        let csv = write_csv(&["x", "y"], &[&[0.0, 0.4, 1.0], &[0.0, 0.1, 0.2]]);
        assert!(matches!(load_solution(&p, &csv), Err(Error::GridMismatch(_))));
        let csv = write_csv(&["x", "y"], &[&[0.0, 0.5, 1.0], &[0.0, 0.1, 0.2]]);
        assert_eq!(load_solution(&p, &csv).unwrap().len(), 3);
    }

    #[test]
    fn check_zero_function() {
        let p = IsoProblem::builder(parse("u^2").unwrap()).alpha(0.5).build().unwrap();
        let y = SampledFunction::zeros(p.grid(32).unwrap());
        let r = cmd_check(&p, &y, None, None).unwrap();
        assert_eq!((r.cost, r.residual_norm, r.kkt_norm), (0.0, 0.0, 0.0));
        assert_eq!(r.alpha_stationarity, Some(0.0));
        assert!(r.to_string().contains("iso-residual interior norm: 0"));
    }

    #[test]
    fn check_estimates_multiplier() {
        let p = builtin::eq_ex(0.5).unwrap();
        let y = builtin::eq_ex_solution_sampled(0.5, p.grid(512).unwrap()).unwrap();
        let r = cmd_check(&p, &y, None, None).unwrap();
        assert!(r.lambda_estimated);
        assert!((r.lambda - 2.0).abs() < 0.05, "{}", r.lambda);
        assert!(!r.extremal.unwrap().0);
        assert!(r.to_string().contains("not an extremal of I: true"));
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(load_problem("builtin:nope", Overrides::default()), Err(Error::Problem(_))));
    }
}
