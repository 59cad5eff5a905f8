use std::process::ExitCode;

use zeta_cli::CliError;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    match zeta_cli::run(&argv) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if !outcome.flaws.is_empty() {
                eprintln!("{} quality flaw(s):", outcome.flaws.len());
                for f in &outcome.flaws {
                    eprintln!("  {f}");
                }
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(CliError::Args(e)) => e.exit(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
