use std::io::Write;
use std::process::ExitCode;

use crossing_cli::{execute, EXIT_INPUT};

fn main() -> ExitCode {
    let (code, text) = execute(std::env::args_os());
    // reports go to stdout, diagnostics to stderr; a closed pipe is not an error
    let _ = if code == EXIT_INPUT {
        writeln!(std::io::stderr().lock(), "{}", text.trim_end())
    } else {
        writeln!(std::io::stdout().lock(), "{text}")
    };
    ExitCode::from(code as u8)
}
