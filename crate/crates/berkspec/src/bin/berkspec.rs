use std::io::{Read, Write};
use std::process::ExitCode;

use berkspec::cli::{run_text, Overrides};
use clap::Parser;

/// Exact radii and spectra of p-adic differential operators, one JSON job per run.
#[derive(Parser, Debug)]
#[command(name = "berkspec", version)]
struct Args {
    /// Job file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    input: String,
    /// Pretty-print the output.
    #[arg(long)]
    pretty: bool,
    /// Probe level `L`: the probes are `0, ..., p^L - 1` plus the job's own.
    #[arg(long)]
    probe_level: Option<u32>,
    /// Precision of slope factorizations.
    #[arg(long)]
    precision: Option<u32>,
    /// Cap on the Frobenius descent level.
    #[arg(long)]
    lmax: Option<u32>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = if args.input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&args.input)
    };
    let input = match input {
        Ok(s) => s,
        Err(e) => {
            eprintln!("berkspec: cannot read {}: {e}", args.input);
            return ExitCode::from(2);
        }
    };
    let overrides = Overrides { probe_level: args.probe_level, precision: args.precision, l_max: args.lmax };
    let (out, code) = run_text(&input, &overrides, args.pretty);
    // A closed stdout (for example a pipe into `head`) is not an error of the job.
    let _ = writeln!(std::io::stdout(), "{out}");
    ExitCode::from(code as u8)
}
