use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fracvar::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            match (&out.csv, &out.path) {
                (Some(csv), None) => {
                    let _ = stdout.write_all(csv.as_bytes());
                    eprintln!("{}", out.report);
                }
                _ => {
                    let _ = writeln!(stdout, "{}", out.report);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
