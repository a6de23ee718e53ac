use std::process::ExitCode;

use clap::Parser;
use tsclust_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("tsclust: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
