use std::path::{Path, PathBuf};
use std::process::Command;

use fracvar::builtin;
use fracvar::cli::{cmd_check, load_problem, load_solution, read_csv, Overrides};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fracvar"))
}

fn shipped(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn field(line: &str, key: &str) -> f64 {
    let tok = line.split_whitespace().find_map(|t| t.strip_prefix(&format!("{key}="))).unwrap();
    tok.parse().unwrap()
}

fn report_value(report: &str, prefix: &str) -> f64 {
    let line = report.lines().find(|l| l.starts_with(prefix)).unwrap_or_else(|| panic!("no `{prefix}` in\n{report}"));
    line[prefix.len()..].split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn solve_then_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("y.csv");
    let (code, summary, _) = run(&["solve", "builtin:eq_ex", "--n", "256", "--output", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    let lambda = field(&summary, "lambda");
    let residual = field(&summary, "residual_norm");
    assert!((lambda - 2.0).abs() < 0.05);

    let lam = format!("{lambda:e}");
    let (code, report, _) = run(&["check", "builtin:eq_ex", csv.to_str().unwrap(), "--lambda", &lam]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("not an extremal of I: true"));
    let checked = report_value(&report, "iso-residual interior norm: ");
    assert!(checked <= residual * (1.0 + 1e-6), "{checked} vs {residual}");
    assert!(report_value(&report, "discrete kkt norm: ") <= 1e-8);

    // Without --lambda the multiplier is re-estimated from the table.
    let (code, report, _) = run(&["check", "builtin:eq_ex", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(report.contains("least squares"));
    assert!(report_value(&report, "discrete kkt norm: ") <= 1e-8);
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let (code, _, _) =
            run(&["solve", "builtin:eq_ex", "--alpha", "0.7", "--n", "64", "--output", p.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert!(text.starts_with("x,y,u\n"));
    assert!(!text.contains('\r'));
}

#[test]
fn deriv_power_rule_columns() {
    let (code, out, _) = run(&["deriv", "x^2", "--alpha", "0.5", "--side", "left", "--n", "1024"]);
    assert_eq!(code, 0);
    let (h, cols) = read_csv(&out).unwrap();
    assert_eq!(h, ["x", "f", "D"]);
    let g = fracvar::specfun::gamma(2.5).unwrap();
    let i = 512;
    let want = 2.0 * cols[0][i].powf(1.5) / g;
    assert!((cols[2][i] - want).abs() < 1e-2 * want);

    let (_, out, _) = run(&["deriv", "x^0.5", "--alpha", "0.5"]);
    let (_, cols) = read_csv(&out).unwrap();
    let g = fracvar::specfun::gamma(1.5).unwrap();
    assert!((cols[2][1000] - g).abs() < 1e-3);
}

#[test]
fn exit_statuses() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    assert_eq!(run(&["solve"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    let (code, _, err) = run(&["deriv", "x +* 2", "--alpha", "0.5"]);
    assert_eq!(code, 1);
    assert!(err.contains("position"));
    assert_eq!(run(&["deriv", "x", "--alpha", "1.5"]).0, 1);
    let (code, _, err) = run(&["alpha-opt", "builtin:psi", "--bracket-lo", "0.05", "--bracket-hi", "0.2"]);
    assert_eq!(code, 2);
    assert!(err.contains("no stationary point"), "{err}");
}

#[test]
fn alpha_opt_psi() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("psi.csv");
    let (code, report, _) = run(&["alpha-opt", "builtin:psi", "--n", "4096", "--output", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!((field(&report, "alpha_star") - 0.901).abs() < 5e-3);
    let (h, cols) = read_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(h, ["alpha", "objective"]);
    assert_eq!(cols[0].first(), Some(&0.0));
    assert_eq!(cols[0].last(), Some(&1.0));
    let (imin, _) = cols[1].iter().enumerate().fold((0, f64::INFINITY), |m, (i, v)| if *v < m.1 { (i, *v) } else { m });
    assert!((cols[0][imin] - 0.9).abs() < 0.02);
}

#[test]
fn shipped_half_order_problem() {
    let path = shipped("eq_ex_alpha_0.5.problem");
    let (code, csv, summary) = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(csv.starts_with("x,y,u\n"));
    assert!((field(&summary, "lambda") - 2.0).abs() < 0.05);
}

#[test]
fn shipped_classical_problem() {
    let path = shipped("eq_ex_alpha_1.problem");
    let (code, out, _) = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (_, cols) = read_csv(&out).unwrap();
    for (x, y) in cols[0].iter().zip(&cols[1]) {
        assert!((y - x.powi(3) / 3.0).abs() < 2e-3);
    }
}

#[test]
fn shipped_section_problem_reports_three_sections() {
    let path = shipped("eq_ex_section.problem");
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("y.csv");
    let (code, _, err) = run(&["solve", path.to_str().unwrap(), "--output", csv.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let (code, report, _) = run(&["check", path.to_str().unwrap(), csv.to_str().unwrap(), "--lambda", "2"]);
    assert_eq!(code, 0);
    assert!(report.contains("middle section norm"));
    assert!(report.contains("left tail norm"));
    assert!(report.contains("right tail: absent"));
}

#[test]
fn check_rejects_foreign_grid() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("y.csv");
    std::fs::write(&csv, "x,y\n0,0\n0.3,0.1\n1,0.2\n").unwrap();
    let (code, _, err) = run(&["check", "builtin:eq_ex", csv.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("grid mismatch"));
}

#[test]
fn check_of_analytic_solution() {
    let spec = load_problem("builtin:eq_ex", Overrides::default()).unwrap();
    let y = builtin::eq_ex_solution_sampled(0.5, spec.problem.grid(1024).unwrap()).unwrap();
    let csv = fracvar::cli::solution_csv(&spec.problem, &y).unwrap();
    let y2 = load_solution(&spec.problem, &csv).unwrap();
    assert_eq!(y, y2);
    let r = cmd_check(&spec.problem, &y2, Some(1.0), Some(2.0)).unwrap();
    assert!(!r.extremal.unwrap().0);
    assert!(r.residual_norm < 0.05);
    let off = cmd_check(&spec.problem, &y2, Some(1.0), Some(3.0)).unwrap();
    assert!(off.residual_norm > 10.0 * r.residual_norm);
}
