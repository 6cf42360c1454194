use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fgrad_cli::{emit_one, parse_session, CliError, Format, RunOptions};

/// Run a session file of filter-grade, local cohomology and attached-prime commands.
#[derive(Parser, Debug)]
#[command(name = "fgrad", version)]
struct Args {
    /// session file (`-` for stdin)
    session: PathBuf,
    /// text, json or tsv (tsv only for cech-table)
    #[arg(long, default_value_t = Format::Text)]
    format: Format,
    /// seed for sampled exponent vectors
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// cap on candidates tried per step of the sequence search
    #[arg(long, default_value_t = 10_000)]
    max_candidates: usize,
    /// extra localization margin for ns-compose-verify
    #[arg(long, default_value_t = 0)]
    window_margin_extra: i64,
    /// write one file per command into this directory instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// print the session in canonical form and exit
    #[arg(long)]
    canonical: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let source = if args.session.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        fs::read_to_string(&args.session)
    };
    let source = match source {
        Ok(s) => s,
        Err(e) => {
            eprintln!("fgrad: cannot read {}: {e}", args.session.display());
            return ExitCode::from(2);
        }
    };
    let opts = RunOptions {
        seed: args.seed,
        max_candidates: args.max_candidates,
        window_margin_extra: args.window_margin_extra,
    };
    match go(&args, &source, &opts) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("fgrad: {e}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether any check failed.
fn go(args: &Args, source: &str, opts: &RunOptions) -> Result<bool, Box<dyn std::error::Error>> {
    if args.canonical {
        let session = parse_session(source).map_err(CliError::Parse)?;
        print!("{session}");
        return Ok(false);
    }
    let Some(dir) = &args.out else {
        let out = fgrad_cli::execute(source, opts, args.format)?;
        print!("{}", out.text);
        return Ok(out.failed);
    };
    let session = parse_session(source).map_err(CliError::Parse)?;
    let reports = fgrad_cli::run(&session, opts).map_err(CliError::Run)?;
    fs::create_dir_all(dir)?;
    for r in &reports {
        let body = emit_one(r, args.format).map_err(CliError::Emit)?;
        let name = format!("{:02}-{}.{}", r.index, r.kind.name(), args.format.extension());
        fs::write(dir.join(name), body)?;
    }
    Ok(fgrad_cli::failed(&reports))
}
