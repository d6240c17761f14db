use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    match tgs_cli::Cli::try_parse() {
        Ok(cli) => tgs_cli::run(cli),
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; exit 2 is reserved for resource caps
            ExitCode::from(if e.use_stderr() { tgs_cli::exit::INPUT } else { tgs_cli::exit::OK })
        }
    }
}
