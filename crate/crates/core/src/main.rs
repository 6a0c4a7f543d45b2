use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = fuzzylim::cli::run_cli(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(outcome.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.code as u8)
}
