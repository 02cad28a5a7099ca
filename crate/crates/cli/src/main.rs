use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let threads = std::env::var("GKZF_THREADS").ok().and_then(|t| t.parse().ok()).unwrap_or(1);
    let out = gkzf_cli::args::main_with(std::env::args_os(), threads);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code)
}
