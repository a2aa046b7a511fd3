use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use truncvqe_cli::{run, tables};

#[derive(Parser)]
#[command(name = "truncvqe", version, about = "Staged-truncation VQE experiments")]
struct Cli {
    /// Output directory (files are printed to stdout when omitted, where applicable).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficient histogram and fermionic class profile as CSV.
    Stats {
        fixture: PathBuf,
        /// Ascending histogram bin edges.
        #[arg(long, value_delimiter = ',', default_values_t = truncvqe_cli::DEFAULT_EDGES)]
        edges: Vec<f64>,
    },
    /// Jordan-Wigner qubit Hamiltonian as text.
    Jw { fixture: PathBuf },
    /// Per-class term counts and norms, and the classification stage ladder.
    Classify { fixture: PathBuf },
    /// Exact ground-state energy by diagonalization.
    Exact {
        fixture: PathBuf,
        #[arg(long, default_value_t = truncvqe::simulator::DEFAULT_MAX_QUBITS)]
        max_qubits: usize,
    },
    /// Seeded staged-VQE runs from a config file or a run manifest.
    Run {
        config: PathBuf,
        /// Base seed (overrides the config).
        #[arg(long)]
        seed: Option<u64>,
        /// Number of seeded runs (overrides the config).
        #[arg(long)]
        seeds: Option<usize>,
        /// Parallel runs; 0 uses all cores (overrides the config).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Improvement tables for the bundled molecules against the reference values.
    Tables {
        #[arg(long, default_value = "fixtures")]
        fixtures: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    let out = cli.out.as_deref();
    let text = match cli.command {
        Command::Stats { fixture, edges } => {
            truncvqe_cli::cmd_stats(&truncvqe_cli::resolve_fixture(&fixture), &edges, out)?
        }
        Command::Jw { fixture } => truncvqe_cli::cmd_jw(&truncvqe_cli::resolve_fixture(&fixture), out)?,
        Command::Classify { fixture } => truncvqe_cli::cmd_classify(&truncvqe_cli::resolve_fixture(&fixture))?,
        Command::Exact { fixture, max_qubits } => {
            truncvqe_cli::cmd_exact(&truncvqe_cli::resolve_fixture(&fixture), max_qubits)?
        }
        Command::Run { config, seed, seeds, workers } => {
            let summary = run::cmd_run(&config, |c| {
                if let Some(s) = seed {
                    c.seed = s;
                }
                if let Some(n) = seeds {
                    c.seeds = n;
                }
                if let Some(w) = workers {
                    c.workers = w;
                }
                if let Some(dir) = out {
                    c.output = dir.to_path_buf();
                }
            })?;
            run::describe(&summary)
        }
        Command::Tables { fixtures } => {
            let t = tables::compute_tables(&fixtures);
            print!("{}", tables::render(&t));
            if let Some(dir) = out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("tables.csv"), tables::to_csv(&t))?;
            }
            return Ok(if t.passed() { ExitCode::SUCCESS } else { ExitCode::from(2) });
        }
    };
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}
