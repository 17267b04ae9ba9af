use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = match conjugate_cli::parse_args(std::env::args_os()) {
        Ok(config) => conjugate_cli::run(&config),
        Err(e) => conjugate_cli::Outcome::error(&e),
    };
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
