use std::fmt::Write as _;
use std::str::FromStr;

use super::{HarnessError, HarnessResult};
use crate::monogamy::{self, alpha_grid, BoundId, BoundKind, PartitionSpec};
use crate::states::{generalized_schmidt, w_state, SchmidtParams};
use crate::{Profile, Pure, Sweep};

/// The three worked examples: the uniform generalized Schmidt state under
/// the positive-power concurrence bound (1) and the negative-power bound
/// (2), and the W state under the EoF bound (3).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleId {
    One,
    Two,
    Three,
}

impl FromStr for ExampleId {
    type Err = HarnessError;

    fn from_str(s: &str) -> HarnessResult<Self> {
        match s.trim() {
            "1" => Ok(ExampleId::One),
            "2" => Ok(ExampleId::Two),
            "3" => Ok(ExampleId::Three),
            other => Err(HarnessError::Config(format!(
                "unknown example {other:?}; expected 1, 2 or 3"
            ))),
        }
    }
}

impl ExampleId {
    pub fn number(self) -> u8 {
        match self {
            ExampleId::One => 1,
            ExampleId::Two => 2,
            ExampleId::Three => 3,
        }
    }

    pub fn state(self) -> Pure {
        match self {
            ExampleId::One | ExampleId::Two => generalized_schmidt(&SchmidtParams::uniform()).expect("valid"),
            ExampleId::Three => w_state(3).expect("valid"),
        }
    }

    /// (tightened, baseline) at a representative alpha.
    pub fn bounds(self) -> (BoundKind<f64>, BoundKind<f64>) {
        let (tight, base, alpha) = match self {
            ExampleId::One => (BoundId::LemmaEq4, BoundId::AlphaPowerEq3, 2.0),
            ExampleId::Two => (BoundId::Theorem3Upper, BoundId::AlphaPowerEq3, -1.0),
            ExampleId::Three => (BoundId::Theorem5, BoundId::EofBaseline, 2.0),
        };
        (
            BoundKind::new(tight, alpha).expect("valid"),
            BoundKind::new(base, alpha).expect("valid"),
        )
    }

    fn alpha_ok(self, alpha: f64) -> bool {
        let tol = monogamy::ALPHA_TOL;
        alpha.is_finite()
            && match self {
                ExampleId::One => alpha >= 2.0 - tol,
                ExampleId::Two => alpha < 0.0,
                ExampleId::Three => alpha >= std::f64::consts::SQRT_2 - tol,
            }
    }

    fn range_text(self) -> &'static str {
        match self {
            ExampleId::One => "alpha >= 2",
            ExampleId::Two => "alpha < 0",
            ExampleId::Three => "alpha >= sqrt(2)",
        }
    }
}

/// `[2, 5]`, `[-5, -0.05]` and `[sqrt 2, 4]`, all with step 0.05.
pub fn default_grid(id: ExampleId) -> Vec<f64> {
    let (min, max) = match id {
        ExampleId::One => (2.0, 5.0),
        ExampleId::Two => (-5.0, -0.05),
        ExampleId::Three => (std::f64::consts::SQRT_2, 4.0),
    };
    alpha_grid(min, max, 0.05).expect("static grid")
}

#[derive(Clone, Debug)]
pub struct ExampleRun {
    pub id: ExampleId,
    pub profile: Profile,
    pub sweep: Sweep,
    pub report: String,
}

/// State construction, measures and bound evaluation for one example.
pub fn run_example(id: ExampleId, alphas: &[f64]) -> HarnessResult<ExampleRun> {
    if alphas.is_empty() {
        return Err(HarnessError::Config("empty alpha grid".into()));
    }
    if let Some(bad) = alphas.iter().find(|&&a| !id.alpha_ok(a)) {
        return Err(HarnessError::Config(format!(
            "alpha = {bad} is outside example {}'s range ({})",
            id.number(),
            id.range_text()
        )));
    }
    let psi = id.state();
    let profile = monogamy::profile(&psi, &PartitionSpec::sequential(psi.register()))?;
    let (tight, base) = id.bounds();
    let sweep = monogamy::residual_sweep(&profile, &tight, &base, alphas)?;

    let mut report = String::new();
    let _ = writeln!(report, "example {}: {} vs {}", id.number(), tight.id, base.id);
    let _ = writeln!(
        report,
        "C_A|BC = {:.6}  C_AB = {:.6}  C_AC = {:.6}",
        profile.c_focus_rest, profile.c_pair[0], profile.c_pair[1]
    );
    let _ = writeln!(
        report,
        "E_A|BC = {:.6}  E_AB = {:.6}  E_AC = {:.6}",
        profile.e_focus_rest, profile.e_pair[0], profile.e_pair[1]
    );
    let gaps = sweep.tightening();
    let min_gap = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let _ = writeln!(
        report,
        "{} grid points in [{}, {}]; tightened bound at least as tight everywhere: {} (min gap {:.3e})",
        alphas.len(),
        alphas[0],
        alphas[alphas.len() - 1],
        min_gap >= -1e-12,
        min_gap
    );
    Ok(ExampleRun {
        id,
        profile,
        sweep,
        report,
    })
}
