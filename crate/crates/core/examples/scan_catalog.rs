//! The `scan` command as a library call: every check over the bundled catalog,
//! one JSON report per line.

use std::io;

use lienil::catalog::bundled_text;
use lienil::cli::{run, Command, RunConfig};

fn main() {
    let config = RunConfig {
        json: true,
        ..RunConfig::new(Command::Scan)
    };
    let code = run(&config, bundled_text(), &mut io::stdout(), &mut io::stderr());
    eprintln!("exit code {code}");
}
