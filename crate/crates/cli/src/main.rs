use std::process::ExitCode;

use clap::Parser;
use oscnet_cli::config::Cli;
use oscnet_cli::{run, run::write_output, EXIT_CHECK_FAILED, EXIT_INVALID};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INVALID as u8) } else { ExitCode::SUCCESS };
        }
    };
    let result = cli.into_run_config().and_then(|config| {
        let outcome = run(&config)?;
        write_output(config.options.out.as_deref(), &outcome.output)?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) if outcome.check_failed => {
            eprintln!("oscnet: numerical check failed");
            ExitCode::from(EXIT_CHECK_FAILED as u8)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("oscnet: {e}");
            ExitCode::from(EXIT_INVALID as u8)
        }
    }
}
