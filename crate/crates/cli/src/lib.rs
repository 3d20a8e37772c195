//! Command-line front end: instance and trace formats plus the subcommands.

pub mod args;
pub mod commands;
pub mod error;
pub mod instance;
pub mod io;
pub mod schedule;
pub mod trace;

use std::io::Write;

pub use args::{Cli, Command};
pub use error::{exit, CliError};
pub use instance::InstanceDoc;

/// Runs one subcommand and returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Solve(a) => commands::cmd_solve(a, out),
        Command::Check(a) => commands::cmd_check(a, out),
        Command::Oracle(a) => commands::cmd_oracle(a, out),
        Command::Bounds(a) => commands::cmd_bounds(a, out),
    }
}
