use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use entmono::harness::{
    self, cmd_measure, cmd_sweep, exit, run_campaign, run_example, write_file, CampaignConfig, ExampleId, HarnessError,
    HarnessResult, StateFile,
};
use entmono::monogamy::{alpha_grid, BoundId, BoundKind};

#[derive(Parser)]
#[command(
    name = "entmono",
    version,
    about = "Entanglement measures and monogamy bound checks for qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_max: Option<f64>,
    #[arg(long)]
    alpha_step: Option<f64>,
}

impl GridArgs {
    fn is_set(&self) -> bool {
        self.alpha_min.is_some() || self.alpha_max.is_some() || self.alpha_step.is_some()
    }

    fn grid(&self, default: &[f64]) -> HarnessResult<Vec<f64>> {
        if !self.is_set() {
            return Ok(default.to_vec());
        }
        let min = self.alpha_min.or(default.first().copied());
        let max = self.alpha_max.or(default.last().copied());
        let step = self.alpha_step.unwrap_or(0.05);
        match (min, max) {
            (Some(min), Some(max)) => Ok(alpha_grid(min, max, step)?),
            _ => Err(HarnessError::Config("--alpha-min and --alpha-max are required".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce the residual curves of example 1, 2 or 3 as CSV.
    Example {
        id: String,
        #[command(flatten)]
        grid: GridArgs,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo check of the bounds on Haar-random pure states.
    Verify {
        /// JSON campaign config; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        qubits: Vec<usize>,
        /// Bound ids (e.g. ckw, lemma, theorem2, theorem3, theorem5), repeatable or comma-separated.
        #[arg(long, value_delimiter = ',')]
        bound: Vec<String>,
        /// Explicit alpha list; alternative to the --alpha-* grid.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alphas: Vec<f64>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tolerance: Option<f64>,
        /// Result JSON destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print every concurrence and EoF value the bounds use, as JSON.
    Measure {
        state: PathBuf,
        /// Parties as `A|B|C`; defaults to one party per qubit in register order.
        #[arg(long)]
        partition: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Residual curves of a tightened bound against a baseline for a state file.
    Sweep {
        state: PathBuf,
        #[arg(long)]
        bound: String,
        #[arg(long)]
        baseline: String,
        /// Split index m for THEOREM1/THEOREM4.
        #[arg(long)]
        split: Option<usize>,
        #[arg(long)]
        partition: Option<String>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> HarnessResult<()> {
    match out {
        Some(path) => write_file(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_bound(s: &str) -> HarnessResult<BoundId> {
    Ok(s.parse::<BoundId>()?)
}

/// A bound template at the first alpha of `grid` inside its range.
fn template(id: BoundId, grid: &[f64], split: Option<usize>) -> HarnessResult<BoundKind<f64>> {
    let kind = grid
        .iter()
        .find_map(|&a| BoundKind::new(id, a).ok())
        .ok_or_else(|| HarnessError::Config(format!("no alpha in the grid is valid for {id}")))?;
    Ok(match split {
        Some(m) => kind.with_split(m),
        None => kind,
    })
}

fn run(cli: Cli) -> HarnessResult<i32> {
    match cli.command {
        Command::Example { id, grid, out } => {
            let id: ExampleId = id.parse()?;
            let alphas = grid.grid(&harness::default_grid(id))?;
            let run = run_example(id, &alphas)?;
            eprint!("{}", run.report);
            emit(out.as_deref(), &harness::sweep_csv_string(&run.sweep))?;
            Ok(exit::OK)
        }
        Command::Verify {
            config,
            samples,
            qubits,
            bound,
            alphas,
            grid,
            seed,
            tolerance,
            out,
        } => {
            let mut cfg = match config {
                Some(path) => serde_json::from_str(&harness::read_file(&path)?)?,
                None => CampaignConfig::default(),
            };
            if let Some(n) = samples {
                cfg.num_samples = n;
            }
            if !qubits.is_empty() {
                cfg.qubit_counts = qubits;
            }
            if !bound.is_empty() {
                cfg.bound_kinds = bound.iter().map(|b| parse_bound(b)).collect::<HarnessResult<_>>()?;
            }
            if !alphas.is_empty() {
                cfg.alphas = alphas;
            } else if grid.is_set() {
                cfg.alphas = grid.grid(&[])?;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(t) = tolerance {
                cfg.tolerance = t;
            }
            let start = Instant::now();
            let result = run_campaign(&cfg)?;
            for b in &result.bounds {
                eprintln!(
                    "{:>15} alpha={:<8.4} n={} applicable={} passed={} failed={} indeterminate={} not_applicable={}",
                    b.bound.as_str(),
                    b.alpha,
                    b.qubits,
                    b.applicable,
                    b.passed,
                    b.failed,
                    b.indeterminate,
                    b.not_applicable
                );
            }
            eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
            emit(out.as_deref(), &result.to_json())?;
            Ok(if result.total_failures() == 0 {
                exit::OK
            } else {
                exit::VIOLATION
            })
        }
        Command::Measure { state, partition, out } => {
            let loaded = StateFile::load(&state)?.to_state()?;
            let output = cmd_measure(&loaded, partition.as_deref())?;
            let mut text = serde_json::to_string_pretty(&output)?;
            text.push('\n');
            emit(out.as_deref(), &text)?;
            Ok(exit::OK)
        }
        Command::Sweep {
            state,
            bound,
            baseline,
            split,
            partition,
            grid,
            out,
        } => {
            let loaded = StateFile::load(&state)?.to_state()?;
            let alphas = grid.grid(&alpha_grid(2.0, 5.0, 0.05)?)?;
            let tight = template(parse_bound(&bound)?, &alphas, split)?;
            let base = template(parse_bound(&baseline)?, &alphas, None)?;
            let sweep = cmd_sweep(&loaded, partition.as_deref(), &tight, &base, &alphas)?;
            emit(out.as_deref(), &harness::sweep_csv_string(&sweep))?;
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE as u8
            } else {
                exit::OK as u8
            });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::USAGE as u8)
        }
    }
}
