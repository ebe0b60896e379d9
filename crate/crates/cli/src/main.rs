use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pqc_regress::circuits::CircuitSpec;
use pqc_regress::data::SynthKind;
use pqc_regress_cli::{cmd_describe, cmd_grid, cmd_learning_curve, cmd_synth, cmd_train, CliError, Overrides, RunConfig};

#[derive(Parser)]
#[command(name = "pqcr", version, about = "Train and benchmark parametrized quantum circuits for regression")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// TOML config, or a manifest.json from an earlier run.
    #[arg(long)]
    config: PathBuf,
    /// Worker threads for sweeps (default: PQCR_WORKERS, then all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory (default: PQCR_OUT_DIR, then output.dir).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the split and optimizer seeds.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Train one circuit and write a manifest plus parity files.
    Train(RunArgs),
    /// Train every (encoder, ansatz) pair in the config's lists.
    Grid(RunArgs),
    /// PQC and ridge metrics over a series of training-set sizes.
    LearningCurve(RunArgs),
    /// Print the gate listing of a circuit.
    Describe {
        #[arg(long)]
        n_qubits: usize,
        #[arg(long)]
        encoder: String,
        #[arg(long)]
        ansatz: String,
        #[arg(long, default_value_t = 1)]
        rud: usize,
        #[arg(long, default_value_t = 1)]
        layers: usize,
        #[arg(long, default_value_t = 1)]
        redundancy: usize,
    },
    /// Write a synthetic dataset.
    Synth {
        #[arg(long)]
        kind: SynthKind,
        #[arg(long)]
        n_samples: usize,
        #[arg(long)]
        n_features: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load(args: &RunArgs) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::load(&args.config)?;
    let overrides = Overrides { seed: args.seed, out: args.out.clone(), workers: args.workers }.with_env()?;
    cfg.apply(&overrides);
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Train(args) => {
            let out = cmd_train(&load(&args)?)?;
            let m = &out.manifest.metrics;
            println!(
                "{}: train R2 {:.4}, test R2 {:.4}, test MAE {:.4} -> {}",
                out.manifest.circuit,
                m.r2_train,
                m.r2_test,
                m.mae_test,
                out.dir.display()
            );
        }
        Command::Grid(args) => {
            let out = cmd_grid(&load(&args)?)?;
            let res = &out.report.result;
            println!("{} cells ({} failed) -> {}", res.len(), res.failures(), out.dir.display());
        }
        Command::LearningCurve(args) => {
            let out = cmd_learning_curve(&load(&args)?)?;
            print!("{}", out.report.result.to_csv());
            println!("-> {}", out.dir.display());
        }
        Command::Describe { n_qubits, encoder, ansatz, rud, layers, redundancy } => {
            let encoder = encoder.parse().map_err(|e| CliError::config(format!("encoder: {e}")))?;
            let ansatz = ansatz.parse().map_err(|e| CliError::config(format!("ansatz: {e}")))?;
            let spec = CircuitSpec::new(n_qubits, encoder, ansatz).with_depth(rud, layers).with_redundancy(redundancy);
            print!("{}", cmd_describe(&spec)?);
        }
        Command::Synth { kind, n_samples, n_features, seed, out } => {
            cmd_synth(kind, n_samples, n_features, seed, &out)?;
            println!("wrote {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
