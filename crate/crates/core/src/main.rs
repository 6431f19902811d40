use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use arbvac::sweep::{self, OutputFormat, OutputTarget, SweepConfig, Verdict};
use arbvac::Error;

#[derive(Parser, Debug)]
#[command(name = "arbvac", version, about = "Three-route verification of arbitrary-vacuum Gaussian states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the (gamma, alpha) sweep and write the report.
    Sweep(Opts),
    /// Run the sweep and exit 0 only if every row passes.
    Verify(Opts),
}

#[derive(Args, Debug)]
struct Opts {
    /// Config file of `key = value` lines.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Report destination; `-` for standard output.
    #[arg(long, value_name = "PATH")]
    output: Option<String>,
    #[arg(long, value_name = "csv|json")]
    format: Option<String>,
    #[arg(long, value_name = "N")]
    fock_dim: Option<usize>,
    /// Suppress the summary on the diagnostic stream.
    #[arg(long)]
    quiet: bool,
}

fn load_config(opts: &Opts) -> Result<SweepConfig, Error> {
    let mut cfg = match &opts.config {
        Some(path) => SweepConfig::from_file(path)?,
        None => SweepConfig::default(),
    };
    if let Some(out) = &opts.output {
        cfg.output_path = OutputTarget::parse(out);
    }
    if let Some(fmt) = &opts.format {
        cfg.output_format = fmt.parse::<OutputFormat>()?;
    }
    if let Some(dim) = opts.fock_dim {
        cfg.fock_dim = dim;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn config_error(e: &Error) -> ExitCode {
    eprintln!("arbvac: {e}");
    ExitCode::from(Verdict::ConfigError.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (opts, verifying) = match &cli.command {
        Command::Sweep(o) => (o, false),
        Command::Verify(o) => (o, true),
    };
    let cfg = match load_config(opts) {
        Ok(c) => c,
        Err(e) => return config_error(&e),
    };
    let report = match sweep::run_sweep(&cfg) {
        Ok(r) => r,
        Err(e) => return config_error(&e),
    };

    // verify only writes a report when a destination was asked for
    let emit = !verifying || cfg.output_path != OutputTarget::Stdout;
    if emit {
        if let Err(e) = sweep::write_report(&report, cfg.output_format, &cfg.output_path) {
            return config_error(&e);
        }
    }

    if !verifying {
        if !opts.quiet {
            let failing = report.failing_rows().count();
            eprintln!("arbvac: {} rows, {} failing", report.rows.len(), failing);
        }
        return ExitCode::SUCCESS;
    }

    for line in sweep::failure_summary(&report) {
        eprintln!("{line}");
    }
    let verdict = if report.all_pass() { Verdict::Pass } else { Verdict::Fail };
    if !opts.quiet {
        let failing = report.failing_rows().count();
        eprintln!(
            "arbvac verify: {}/{} rows pass",
            report.rows.len() - failing,
            report.rows.len()
        );
    }
    ExitCode::from(verdict.exit_code() as u8)
}
