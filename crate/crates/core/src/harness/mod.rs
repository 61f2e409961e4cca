//! Command implementations behind the `entmono` binary: golden example
//! reproduction, Monte Carlo campaigns, measure evaluation and CSV/JSON
//! output. Everything here works in `f64`.

mod campaign;
mod golden;
mod statefile;

use std::io::Write;

pub use campaign::{
    replay, run_campaign, sample_seed, BoundOutcome, CampaignConfig, CampaignResult, FailureRecord, RuntimeStats,
    WorstCase, CAMPAIGN_FORMAT_VERSION,
};
pub use golden::{default_grid, run_example, ExampleId, ExampleRun};
pub use statefile::{LoadedState, StateFile, STATE_FORMAT_VERSION};

use serde::Serialize;

use crate::monogamy::{self, BoundKind, PairwiseProfile, PartitionSpec, ProfileOptions};
use crate::{measures, Sweep};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] crate::Error),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type HarnessResult<T> = std::result::Result<T, HarnessError>;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VIOLATION: i32 = 1;
    pub const USAGE: i32 = 2;
}

/// `alpha,y1,y2` with 17 significant digits per value.
pub fn write_sweep_csv<W: Write>(sweep: &Sweep, mut out: W) -> std::io::Result<()> {
    out.write_all(b"alpha,y1,y2\n")?;
    for p in &sweep.points {
        writeln!(out, "{:.16e},{:.16e},{:.16e}", p.alpha, p.y1, p.y2)?;
    }
    Ok(())
}

pub fn sweep_csv_string(sweep: &Sweep) -> String {
    let mut buf = Vec::new();
    write_sweep_csv(sweep, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii")
}

/// Output of `measure`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "state_kind", rename_all = "snake_case")]
pub enum MeasureOutput {
    Pure {
        format_version: String,
        partition: String,
        profile: PairwiseProfile<f64>,
        /// 1-based `i` of tails `C_{A|B_{i+1}...}` known only within bounds.
        indeterminate_tails: Vec<usize>,
    },
    TwoQubitMixed {
        format_version: String,
        labels: Vec<String>,
        concurrence: f64,
        entanglement_of_formation: f64,
    },
}

pub fn cmd_measure(state: &LoadedState, partition: Option<&str>) -> HarnessResult<MeasureOutput> {
    match state {
        LoadedState::Mixed(rho) if rho.num_qubits() == 2 => {
            let concurrence = measures::concurrence_two_qubit_mixed(rho)?;
            Ok(MeasureOutput::TwoQubitMixed {
                format_version: STATE_FORMAT_VERSION.into(),
                labels: rho.register().labels().to_vec(),
                concurrence,
                entanglement_of_formation: measures::f_of(concurrence * concurrence)?,
            })
        }
        _ => {
            let psi = state.require_pure()?;
            let spec = parse_partition(psi.register(), partition)?;
            let profile = monogamy::profile(&psi, &spec)?;
            let indeterminate_tails = profile
                .c_tail
                .iter()
                .enumerate()
                .filter(|(_, t)| t.exact().is_none())
                .map(|(k, _)| k + 1)
                .collect();
            Ok(MeasureOutput::Pure {
                format_version: STATE_FORMAT_VERSION.into(),
                partition: spec.to_string(),
                profile,
                indeterminate_tails,
            })
        }
    }
}

pub fn parse_partition(register: &crate::linalg::QubitRegister, text: Option<&str>) -> HarnessResult<PartitionSpec> {
    Ok(match text {
        Some(t) => PartitionSpec::parse(register, t)?,
        None => PartitionSpec::sequential(register),
    })
}

/// Residual curves of `tightened` against `baseline` for a state file.
pub fn cmd_sweep(
    state: &LoadedState,
    partition: Option<&str>,
    tightened: &BoundKind<f64>,
    baseline: &BoundKind<f64>,
    alphas: &[f64],
) -> HarnessResult<Sweep> {
    let psi = state.require_pure()?;
    let spec = parse_partition(psi.register(), partition)?;
    let profile = monogamy::profile_with(&psi, &spec, &ProfileOptions::default())?;
    Ok(monogamy::residual_sweep(&profile, tightened, baseline, alphas)?)
}

pub fn read_file(path: &std::path::Path) -> HarnessResult<String> {
    std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_file(path: &std::path::Path, contents: &[u8]) -> HarnessResult<()> {
    std::fs::write(path, contents).map_err(|source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    })
}
