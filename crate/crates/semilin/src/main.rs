use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(semilin::cli::run(std::env::args()) as u8)
}
