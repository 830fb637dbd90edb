use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use dpsbp_core::harness::{self, RawConfig, RunConfig};
use dpsbp_core::sbp::{assemble_pair, make_periodic, verify_pair, OperatorSource, Tolerances};
use dpsbp_core::{Error, Grid1D};

#[global_allocator]
static ALLOC: mimalloc::MiMalloc = mimalloc::MiMalloc;

/// Dual-pairing SBP solvers for Burgers, shallow water and Euler test cases.
#[derive(Parser)]
#[command(name = "dpsbp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble and check an operator pair (`builtin:dp2`, `builtin:central2` or a coefficient file).
    VerifyOperator {
        operator: String,
        /// Grid sizes to check.
        #[arg(long, value_delimiter = ',', default_value = "16,64,256")]
        n: Vec<usize>,
    },
    /// Run one simulation.
    Run(ConfigArgs),
    /// Run a resolution sweep and report convergence rates.
    Convergence(ConfigArgs),
    /// Record end times over schemes, operators and resolutions.
    CrashStudy(ConfigArgs),
    /// Check the semi-discrete conservation and entropy identities.
    Probe(ConfigArgs),
}

#[derive(Args)]
struct ConfigArgs {
    /// Configuration file.
    #[arg(
        value_name = "CONFIG",
        required_unless_present = "config_flag",
        conflicts_with = "config_flag"
    )]
    config: Option<PathBuf>,
    #[arg(long = "config", value_name = "PATH")]
    config_flag: Option<PathBuf>,
    /// Output directory (defaults to the `out` key, then `output/<scenario>`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// `key=value`, applied after the file; repeatable.
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

impl ConfigArgs {
    fn load(&self) -> Result<(RunConfig, PathBuf), Error> {
        let path = self
            .config
            .as_ref()
            .or(self.config_flag.as_ref())
            .expect("clap enforces a config");
        let mut raw = RawConfig::from_file(path)?;
        for kv in &self.overrides {
            raw.set_override(kv)?;
        }
        let cfg = RunConfig::resolve(&raw)?;
        let out = self
            .out
            .clone()
            .or_else(|| cfg.out.clone())
            .unwrap_or_else(|| Path::new("output").join(&cfg.scenario));
        Ok((cfg, out))
    }
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<Error>().is_some_and(|e| {
                matches!(
                    e,
                    Error::Config(_)
                        | Error::UnknownScenario(_)
                        | Error::Parse { .. }
                        | Error::Coefficients(_)
                        | Error::Io { .. }
                )
            });
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

fn execute(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::VerifyOperator { operator, n } => verify(&operator, &n),
        Command::Run(args) => {
            let (cfg, out) = args.load()?;
            let o = harness::run_scenario(&cfg, Some(&out))?;
            print!("{}", o.summary.to_text());
            println!("output: {}", out.display());
            Ok(Outcome::Pass)
        }
        Command::Convergence(args) => {
            let (cfg, out) = args.load()?;
            let table = harness::convergence(&cfg, Some(&out))?;
            println!("{}", table.label);
            println!("{:>6} {:>14} {:>8}", "n", "error", "eoc");
            for row in &table.rows {
                let eoc = row
                    .eoc
                    .map_or_else(|| "-".to_string(), |e| format!("{e:.3}"));
                println!("{:>6} {:>14.6e} {:>8}", row.n, row.error, eoc);
            }
            println!("output: {}", out.join("convergence.csv").display());
            Ok(Outcome::Pass)
        }
        Command::CrashStudy(args) => {
            let (cfg, out) = args.load()?;
            let cells = harness::crash_study(&cfg, Some(&out))?;
            println!(
                "{:<20} {:>6} {:<20} {:>10} {:>8}",
                "operator", "n", "scheme", "end", "crashed"
            );
            for c in &cells {
                println!(
                    "{:<20} {:>6} {:<20} {:>10.4} {:>8}",
                    c.operator,
                    c.n,
                    c.scheme.as_str(),
                    c.end_time,
                    c.crashed
                );
            }
            println!("output: {}", out.join("crash_matrix.csv").display());
            Ok(Outcome::Pass)
        }
        Command::Probe(args) => {
            let (cfg, _) = args.load()?;
            let report = harness::probe(&cfg)?;
            println!("{report}");
            let pass = report.pass(cfg.tolerance);
            println!(
                "{} at tolerance {:e}",
                if pass { "PASS" } else { "FAIL" },
                cfg.tolerance
            );
            Ok(if pass { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn verify(operator: &str, sizes: &[usize]) -> anyhow::Result<Outcome> {
    let source = OperatorSource::parse(operator);
    let coeffs = source.coefficients()?;
    let tol = Tolerances::default();
    let mut all = true;
    for &n in sizes {
        let grid = Grid1D::unit(n).with_context(|| format!("grid with n = {n}"))?;
        match assemble_pair(&coeffs, &grid) {
            Ok(pair) => {
                let report = verify_pair(&pair, &tol);
                println!("== {source}, n = {n}\n{report}");
                all &= report.pass();
                let periodic = make_periodic(&pair)?;
                let report = verify_pair(&periodic, &tol);
                println!("== {source}, n = {n}, periodic\n{report}");
                all &= report.pass();
            }
            Err(Error::Verification { report, .. }) => {
                println!("== {source}, n = {n}\n{report}");
                all = false;
            }
            Err(e) => return Err(e.into()),
        }
    }
    println!("{}", if all { "PASS" } else { "FAIL" });
    Ok(if all { Outcome::Pass } else { Outcome::Fail })
}
