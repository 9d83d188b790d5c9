use std::process::ExitCode;

use clap::Parser;
use extcheck_cli::{execute, Options};

fn main() -> ExitCode {
    let opts = Options::parse();
    let exec = match execute(&opts) {
        Ok(exec) => exec,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match &opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &exec.output) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", exec.output),
    }
    ExitCode::from(exec.exit_code)
}
