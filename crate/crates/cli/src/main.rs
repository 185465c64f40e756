use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use fredholm_cli::{run, Args, THREADS_ENV};

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let threads = std::env::var(THREADS_ENV).ok();
    match run(&args, threads.as_deref()) {
        Ok((output, written)) => {
            for line in &output.report {
                println!("{line}");
            }
            for path in &written {
                println!("wrote {}", path.display());
            }
            if output.failed {
                eprintln!("error: self-test reported failures");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
