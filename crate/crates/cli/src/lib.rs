//! Library side of the `crossing` command: instance files, subcommands and
//! SVG figures.

pub mod commands;
pub mod instance;
pub mod svg;

use std::time::Instant;

use serde_json::{json, Value};

pub use commands::{run, Cli, Outcome};
pub use instance::InputError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Parses `args` (program name first), runs the command and returns the
/// exit status with the report or the error text.
pub fn execute<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let start = Instant::now();
    match run(&cli) {
        Ok(outcome) => {
            let report = report(&args, &outcome, start.elapsed().as_secs_f64() * 1e3);
            let code = if outcome.passed { EXIT_OK } else { EXIT_FAILED };
            (
                code,
                serde_json::to_string_pretty(&report).expect("JSON values serialize"),
            )
        }
        Err(e) => (EXIT_INPUT, format!("error: {e}")),
    }
}

fn report(args: &[std::ffi::OsString], outcome: &Outcome, elapsed_ms: f64) -> Value {
    let command: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    json!({
        "command": command,
        "result": outcome.result,
        "verdict": if outcome.passed { "pass" } else { "fail" },
        "elapsed_ms": (elapsed_ms * 1e3).round() / 1e3,
    })
}
