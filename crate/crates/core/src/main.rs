use std::io;
use std::process::ExitCode;

use clap::Parser;

use chebnet::cli::{run, RunConfig, EXIT_OK, EXIT_USAGE};

fn main() -> ExitCode {
    let code = match RunConfig::try_parse() {
        Ok(config) => run(&config, &mut io::stdout().lock(), &mut io::stderr().lock()),
        Err(e) => {
            let _ = e.print();
            // Help and version requests are not errors.
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            }
        }
    };
    ExitCode::from(code as u8)
}
