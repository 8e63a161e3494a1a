use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = sl3z::cli::run(std::env::args_os());
    // a closed pipe is not worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code as u8)
}
