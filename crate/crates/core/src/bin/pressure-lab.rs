use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pressure_lab::acceptance::{run_all, AcceptanceReport};
use pressure_lab::experiments::{
    execute, exit_code, merge_params, GeometryVerify, Manifest, MollifyReport, Params,
    PressureSolve, SchauderCheckParams, TraceBlowup, WeierstrassScan,
};
use pressure_lab::{Error, Result};

/// Numerical experiments on Weierstrass channel flows and their pressure.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// Directory for CSV and JSON outputs.
    #[arg(long, global = true, default_value = "results")]
    out: PathBuf,
    /// TOML file with the same keys as the flags; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    WeierstrassScan(WeierstrassScan),
    TraceBlowup(TraceBlowup),
    GeometryVerify(GeometryVerify),
    MollifyReport(MollifyReport),
    PressureSolve(PressureSolve),
    SchauderCheck(SchauderCheckParams),
    AllAcceptance,
}

fn run<P: Params>(cli: &P, config: Option<&str>, out: &PathBuf) -> Result<bool> {
    let params = merge_params(config, cli)?;
    let manifest: Manifest = execute(&params, out)?;
    for c in &manifest.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        println!("{mark} {} = {:e} ({})", c.name, c.value, c.limit);
    }
    println!("wrote {}", out.join("manifest.json").display());
    Ok(manifest.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let config = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => None,
    };
    let config = config.as_deref();
    let out = &cli.out;
    let outcome = match &cli.command {
        Command::WeierstrassScan(p) => run(p, config, out),
        Command::TraceBlowup(p) => run(p, config, out),
        Command::GeometryVerify(p) => run(p, config, out),
        Command::MollifyReport(p) => run(p, config, out),
        Command::PressureSolve(p) => run(p, config, out),
        Command::SchauderCheck(p) => run(p, config, out),
        Command::AllAcceptance => {
            if config.is_some() {
                Err(Error::Config("all-acceptance takes no config file".into()))
            } else {
                let report = AcceptanceReport::new(run_all());
                for c in &report.criteria {
                    println!("{}", c.line());
                }
                report.write(out).map(|path| {
                    println!("wrote {}", path.display());
                    report.passed
                })
            }
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
