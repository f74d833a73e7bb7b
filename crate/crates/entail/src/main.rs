use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = entail::cli::run_command(std::env::args());
    print!("{output}");
    ExitCode::from(code as u8)
}
