use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let (code, out) = spexlab_core::cli::run(&argv, &mut std::io::stdin().lock());
    if !out.is_empty() {
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        let _ = writeln!(std::io::stdout().lock(), "{out}");
    }
    ExitCode::from(code as u8)
}
