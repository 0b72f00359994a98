use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::info;

use tempocorr::channels::{
    compile_to_gates, decompose_channel, process_fidelity, process_tomography, standard_channel, ChannelKind,
};
use tempocorr::harness::{self, SweepConfig};
use tempocorr::{CompiledChannel, Error};

const EXIT_HIERARCHY: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "tempocorr", version, about = "Temporal quantum correlation sweeps and channel compiler")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one sweep and write its measures and rates as CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every sweep in the config and print the hierarchy report.
    Report {
        #[arg(long)]
        config: PathBuf,
    },
    /// Compile a channel into a gate file.
    Compile {
        #[arg(long)]
        channel: ChannelKind,
        #[arg(long)]
        strength: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Process tomography of a gate file.
    Qpt {
        #[arg(long)]
        gatefile: PathBuf,
        /// Also report the process fidelity against this ideal channel.
        #[arg(long, requires = "strength")]
        compare: Option<ChannelKind>,
        #[arg(long)]
        strength: Option<f64>,
    },
    /// Render a sweep CSV as an SVG line chart.
    Plot {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn exit_code(e: &Error) -> u8 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_CONFIG
    }
}

fn configs(path: &Path) -> Result<Vec<SweepConfig>, Error> {
    let mut cfgs = harness::load_configs(path)?;
    if let Some(seed) = harness::seed_from_env()? {
        info!("seed overridden to {seed} by {}", harness::SEED_ENV);
        cfgs = cfgs.into_iter().map(|c| c.with_seed(seed)).collect();
    }
    Ok(cfgs)
}

fn run(cmd: Command) -> Result<u8, Error> {
    match cmd {
        Command::Sweep { config, out } => {
            let cfgs = configs(&config)?;
            let [cfg] = cfgs.as_slice() else {
                return Err(Error::Config(format!(
                    "sweep takes exactly one configuration, found {}",
                    cfgs.len()
                )));
            };
            let series = harness::run_sweep(cfg)?;
            harness::emit_csv(&series, &out)?;
            info!("wrote {} rows to {}", series.len(), out.display());
            Ok(0)
        }
        Command::Report { config } => {
            let report = harness::hierarchy_report(&configs(&config)?);
            print!("{}", report.to_text());
            Ok(if report.has_numerical_failure() {
                EXIT_NUMERICAL
            } else if report.has_errors() {
                EXIT_CONFIG
            } else if !report.all_ok() {
                EXIT_HIERARCHY
            } else {
                0
            })
        }
        Command::Compile { channel, strength, out } => {
            let compiled = compile_to_gates(&decompose_channel(channel, strength)?);
            std::fs::write(&out, compiled.to_text())?;
            let fidelity = process_fidelity(
                &process_tomography(&standard_channel(channel, strength)?)?,
                &process_tomography(&compiled)?,
            )?;
            println!(
                "{channel} strength {strength}: {} branch(es), process fidelity {fidelity:.12}",
                compiled.branches().len()
            );
            Ok(0)
        }
        Command::Qpt {
            gatefile,
            compare,
            strength,
        } => {
            let text = std::fs::read_to_string(&gatefile)?;
            let compiled = CompiledChannel::parse(&text)?;
            let chi = process_tomography(&compiled)?;
            println!("chi matrix (basis I, X, -iY, Z):");
            let m = chi.entries();
            for i in 0..4 {
                let row: Vec<String> = (0..4)
                    .map(|j| format!("{:+.9}{:+.9}i", m[(i, j)].re, m[(i, j)].im))
                    .collect();
                println!("  {}", row.join("  "));
            }
            if let (Some(kind), Some(s)) = (compare, strength) {
                let ideal = process_tomography(&standard_channel(kind, s)?)?;
                println!("process fidelity vs {kind}({s}): {:.12}", process_fidelity(&ideal, &chi)?);
            }
            Ok(0)
        }
        Command::Plot { csv, out } => {
            let rows = harness::read_csv(std::fs::File::open(&csv)?)?;
            std::fs::write(&out, harness::render_svg(&rows)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
