use std::io::Write;

use clap::Parser;

use circle_strata::cli::{run, CommandConfig};

fn main() {
    let outcome = run(&CommandConfig::parse());
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.status);
}
