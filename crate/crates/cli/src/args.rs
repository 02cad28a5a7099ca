//! Command-line parsing and the process entry point.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::Parser;

use crate::problem::parse_param;
use crate::report::{emit, Format};
use crate::{exit_code, run, CliError, Command, ProblemSpec, RunArgs};

/// Logarithmic series solutions of GKZ systems.
#[derive(Parser, Debug)]
#[command(name = "gkzf", version)]
struct Args {
    /// toric, initial, pairs, triangulation, exponents, solve or verify
    #[arg(value_parser = parse_command)]
    command: Command,
    spec_file: PathBuf,
    #[arg(long)]
    window: Option<i64>,
    #[arg(long = "check-window")]
    check_window: Option<i64>,
    #[arg(long = "dual-cap")]
    dual_cap: Option<u32>,
    /// Parameter value, e.g. c=1/3; repeatable
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, gkzf_core::Rat)>,
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: Format,
    /// JSON output of `solve` to check instead of recomputing (verify only)
    #[arg(long)]
    solutions: Option<PathBuf>,
}

fn parse_command(s: &str) -> Result<Command, String> {
    Command::parse(s).ok_or_else(|| format!("unknown command `{}`", s))
}

fn parse_format(s: &str) -> Result<Format, String> {
    Format::parse(s).ok_or_else(|| format!("unknown format `{}`", s))
}

#[derive(Debug, Default)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `gkzf` on `argv` (program name first) with `threads` workers.
pub fn main_with<I, T>(argv: I, threads: usize) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let text = e.render().to_string();
            // usage errors exit 1, keeping 2 for non-generic weights
            return if e.use_stderr() {
                Output { code: 1, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = Output::default();
    let result = (|| {
        let spec = ProblemSpec::load(&args.spec_file, &args.params)?;
        if let Err(e) = spec.a.check_homogeneous() {
            out.stderr.push_str(&format!("gkzf: warning: {}\n", e));
        }
        let solutions = match &args.solutions {
            Some(p) => Some(std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {}", p.display(), e)))?),
            None => None,
        };
        let run_args = RunArgs {
            window: args.window,
            check_window: args.check_window,
            dual_cap: args.dual_cap,
            solutions,
            threads,
        };
        run(args.command, &spec, &run_args)
    })();
    match result {
        Ok(doc) => out.stdout = emit(&doc, args.format),
        Err(e) => {
            if let CliError::Unverified(doc) = &e {
                out.stdout = emit(doc, args.format);
            }
            out.stderr.push_str(&format!("gkzf: {}\n", e));
            out.code = exit_code(&e) as u8;
        }
    }
    out
}
