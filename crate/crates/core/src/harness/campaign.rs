use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{HarnessError, HarnessResult};
use crate::monogamy::{self, Applicability, BoundId, BoundKind, PartitionSpec, ProfileOptions};
use crate::states::{haar_random_pure, mix_seed, SeededSampler, SAMPLER_ALGORITHM};
use crate::{Report, MAX_CAMPAIGN_QUBITS};

pub const CAMPAIGN_FORMAT_VERSION: &str = "1";

/// Failures listed individually per bound; the counters stay exact.
const MAX_LISTED_FAILURES: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub num_samples: usize,
    pub qubit_counts: Vec<usize>,
    /// Every bound is checked at each alpha inside its range; `CKW_EQ2` runs
    /// once at alpha = 2.
    pub alphas: Vec<f64>,
    pub bound_kinds: Vec<BoundId>,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            num_samples: 10_000,
            qubit_counts: vec![3],
            alphas: vec![2.0],
            bound_kinds: vec![BoundId::CkwEq2],
            seed: 1,
            tolerance: 1e-10,
        }
    }
}

impl CampaignConfig {
    /// `(qubits, bound)` pairs to run.
    pub fn plan(&self) -> HarnessResult<Vec<(usize, BoundKind<f64>)>> {
        let err = |m: String| Err(HarnessError::Config(m));
        if self.num_samples == 0 {
            return err("num_samples must be at least 1".into());
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return err(format!("tolerance must be positive, got {}", self.tolerance));
        }
        if self.qubit_counts.is_empty() || self.bound_kinds.is_empty() {
            return err("need at least one qubit count and one bound".into());
        }
        if let Some(&n) = self
            .qubit_counts
            .iter()
            .find(|&&n| !(3..=MAX_CAMPAIGN_QUBITS).contains(&n))
        {
            return err(format!("qubit count {n} outside 3..={MAX_CAMPAIGN_QUBITS}"));
        }
        let needs_alpha = self.bound_kinds.iter().any(|&id| id != BoundId::CkwEq2);
        if needs_alpha && self.alphas.is_empty() {
            return err("no alphas given".into());
        }

        let mut kinds = Vec::new();
        let mut used = vec![false; self.alphas.len()];
        for &id in &self.bound_kinds {
            if id == BoundId::CkwEq2 {
                kinds.push(BoundKind::ckw());
                continue;
            }
            let before = kinds.len();
            for (k, &alpha) in self.alphas.iter().enumerate() {
                if let Ok(kind) = BoundKind::new(id, alpha) {
                    kinds.push(kind);
                    used[k] = true;
                }
            }
            if kinds.len() == before {
                return err(format!("none of the alphas {:?} is valid for {id}", self.alphas));
            }
        }
        if needs_alpha {
            if let Some(k) = used.iter().position(|u| !u) {
                return err(format!(
                    "alpha = {} is invalid for every requested bound",
                    self.alphas[k]
                ));
            }
        }

        let mut plan = Vec::new();
        for &n in &self.qubit_counts {
            for kind in &kinds {
                if kind.id.uses_split() && n < 4 {
                    return err(format!("{} needs at least 4 qubits, got {n}", kind.id));
                }
                plan.push((n, *kind));
            }
        }
        Ok(plan)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorstCase {
    pub slack: f64,
    pub sample_index: usize,
    pub sample_seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub sample_index: usize,
    pub sample_seed: u64,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundOutcome {
    pub bound: BoundId,
    pub alpha: f64,
    pub qubits: usize,
    /// `passed + failed`
    pub applicable: usize,
    pub passed: usize,
    pub failed: usize,
    pub indeterminate: usize,
    pub not_applicable: usize,
    /// Smallest slack among applicable samples.
    pub worst_slack: Option<WorstCase>,
    pub failures: Vec<FailureRecord>,
}

impl BoundOutcome {
    fn new(qubits: usize, kind: &BoundKind<f64>) -> Self {
        Self {
            bound: kind.id,
            alpha: kind.alpha,
            qubits,
            applicable: 0,
            passed: 0,
            failed: 0,
            indeterminate: 0,
            not_applicable: 0,
            worst_slack: None,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, index: usize, seed: u64, report: &Report, tolerance: f64) {
        match report.applicability {
            Applicability::NotApplicable => self.not_applicable += 1,
            Applicability::Indeterminate => self.indeterminate += 1,
            Applicability::Applicable => {
                self.applicable += 1;
                if report.verdict(tolerance) == Some(true) {
                    self.passed += 1;
                } else {
                    self.failed += 1;
                    if self.failures.len() < MAX_LISTED_FAILURES {
                        self.failures.push(FailureRecord {
                            sample_index: index,
                            sample_seed: seed,
                            slack: report.slack,
                        });
                    }
                }
                if self.worst_slack.is_none_or(|w| report.slack < w.slack) {
                    self.worst_slack = Some(WorstCase {
                        slack: report.slack,
                        sample_index: index,
                        sample_seed: seed,
                    });
                }
            }
        }
    }
}

/// Deterministic counters only; wall-clock time is reported by the caller.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuntimeStats {
    pub states_evaluated: usize,
    pub bound_evaluations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignResult {
    pub format_version: String,
    pub sampler_algorithm: String,
    pub config: CampaignConfig,
    pub bounds: Vec<BoundOutcome>,
    pub runtime_stats: RuntimeStats,
}

impl CampaignResult {
    pub fn total_failures(&self) -> usize {
        self.bounds.iter().map(|b| b.failed).sum()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }
}

/// Seed of sample `index` in the `qubits`-qubit stream of a campaign.
pub fn sample_seed(campaign_seed: u64, qubits: usize, index: usize) -> u64 {
    mix_seed(mix_seed(campaign_seed, qubits as u64), index as u64)
}

fn sample_options(seed: u64) -> ProfileOptions {
    ProfileOptions {
        seed,
        ..ProfileOptions::default()
    }
}

/// Rebuilds the report of one campaign sample from its recorded seed.
pub fn replay(qubits: usize, sample_seed: u64, kind: &BoundKind<f64>) -> HarnessResult<Report> {
    let psi = haar_random_pure::<f64>(qubits, &SeededSampler::new(sample_seed))?;
    let spec = PartitionSpec::sequential(psi.register());
    let profile = monogamy::profile_with(&psi, &spec, &sample_options(sample_seed))?;
    Ok(monogamy::evaluate(&profile, kind)?)
}

/// Runs every planned bound on `num_samples` Haar-random states per qubit
/// count. Samples are evaluated in parallel and folded in index order, so the
/// result does not depend on scheduling.
pub fn run_campaign(config: &CampaignConfig) -> HarnessResult<CampaignResult> {
    let plan = config.plan()?;
    let mut outcomes: Vec<BoundOutcome> = plan.iter().map(|(n, k)| BoundOutcome::new(*n, k)).collect();
    let mut stats = RuntimeStats {
        states_evaluated: 0,
        bound_evaluations: 0,
    };

    for &n in &config.qubit_counts {
        let slots: Vec<usize> = (0..plan.len()).filter(|&s| plan[s].0 == n).collect();
        let kinds: Vec<BoundKind<f64>> = slots.iter().map(|&s| plan[s].1).collect();
        let per_sample: Vec<HarnessResult<(u64, Vec<Report>)>> = (0..config.num_samples)
            .into_par_iter()
            .map(|index| {
                let seed = sample_seed(config.seed, n, index);
                let psi = haar_random_pure::<f64>(n, &SeededSampler::new(seed))?;
                let spec = PartitionSpec::sequential(psi.register());
                let profile = monogamy::profile_with(&psi, &spec, &sample_options(seed))?;
                let reports = kinds
                    .iter()
                    .map(|k| monogamy::evaluate(&profile, k))
                    .collect::<crate::Result<Vec<_>>>()?;
                Ok((seed, reports))
            })
            .collect();
        for (index, sample) in per_sample.into_iter().enumerate() {
            let (seed, reports) = sample?;
            stats.states_evaluated += 1;
            for (&slot, report) in slots.iter().zip(&reports) {
                outcomes[slot].record(index, seed, report, config.tolerance);
                stats.bound_evaluations += 1;
            }
        }
    }

    Ok(CampaignResult {
        format_version: CAMPAIGN_FORMAT_VERSION.into(),
        sampler_algorithm: SAMPLER_ALGORITHM.into(),
        config: config.clone(),
        bounds: outcomes,
        runtime_stats: stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(samples: usize, kinds: Vec<BoundId>, alphas: Vec<f64>) -> CampaignConfig {
        CampaignConfig {
            num_samples: samples,
            qubit_counts: vec![3],
            alphas,
            bound_kinds: kinds,
            seed: 42,
            tolerance: 1e-10,
        }
    }

    #[test]
    fn zero_samples_is_a_config_error() {
        let c = config(0, vec![BoundId::CkwEq2], vec![]);
        assert!(matches!(run_campaign(&c), Err(HarnessError::Config(_))));
    }

    #[test]
    fn invalid_combinations() {
        let c = config(10, vec![BoundId::Theorem3Upper], vec![2.0]);
        assert!(matches!(c.plan(), Err(HarnessError::Config(_))));
        let c = config(10, vec![BoundId::Theorem2], vec![2.0, 1.0]);
        assert!(matches!(c.plan(), Err(HarnessError::Config(_))));
        let c = config(10, vec![BoundId::Theorem1], vec![2.0]);
        assert!(matches!(c.plan(), Err(HarnessError::Config(_))));
        let mut c = config(10, vec![BoundId::CkwEq2], vec![]);
        c.tolerance = 0.0;
        assert!(c.plan().is_err());
        c.tolerance = 1e-10;
        c.qubit_counts = vec![2];
        assert!(c.plan().is_err());
    }

    #[test]
    fn alphas_are_routed_by_range() {
        let c = config(
            1,
            vec![BoundId::Theorem2, BoundId::Theorem3Upper, BoundId::CkwEq2],
            vec![2.0, 3.0, -1.0],
        );
        let plan = c.plan().unwrap();
        let summary: Vec<(BoundId, f64)> = plan.iter().map(|(_, k)| (k.id, k.alpha)).collect();
        assert_eq!(
            summary,
            vec![
                (BoundId::Theorem2, 2.0),
                (BoundId::Theorem2, 3.0),
                (BoundId::Theorem3Upper, -1.0),
                (BoundId::CkwEq2, 2.0)
            ]
        );
    }

    #[test]
    fn small_campaign_passes_and_replays() {
        let c = config(200, vec![BoundId::CkwEq2, BoundId::LemmaEq4], vec![2.0]);
        let r = run_campaign(&c).unwrap();
        assert_eq!(r.total_failures(), 0);
        for b in &r.bounds {
            assert_eq!(b.applicable, b.passed + b.failed);
            assert_eq!(b.applicable + b.indeterminate + b.not_applicable, 200);
            let w = b.worst_slack.unwrap();
            let kind = BoundKind::new(b.bound, b.alpha).unwrap_or(BoundKind::ckw());
            let replayed = replay(3, w.sample_seed, &kind).unwrap();
            assert_eq!(replayed.slack, w.slack);
        }
        assert_eq!(r.runtime_stats.states_evaluated, 200);
    }

    #[test]
    fn json_is_deterministic() {
        let c = config(50, vec![BoundId::Theorem5, BoundId::Theorem3Upper], vec![2.0, -1.0]);
        let a = run_campaign(&c).unwrap().to_json();
        let b = run_campaign(&c).unwrap().to_json();
        assert_eq!(a, b);
    }
}
