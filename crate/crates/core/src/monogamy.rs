//! Monogamy inequalities for concurrence and entanglement of formation.
//!
//! Every inequality compares the focus party `A` against the ordered remaining
//! parties `B_1, ..., B_{N-1}`:
//!
//! | id               | form                                                        | alpha        |
//! |------------------|-------------------------------------------------------------|--------------|
//! | `CKW_EQ2`        | `C^2_{A|B..} >= sum C^2_{AB_i}`                              | 2            |
//! | `ALPHA_POWER_EQ3`| `C^a_{A|B..} >= sum C^a_{AB_i}` (reversed for `a < 0`)        | `>= 2`, `< 0`|
//! | `LEMMA_EQ4`      | `C^a_{A|B_1 R} >= C^a_{AB_1} + (a/2) C^a_{A|R}`               | `>= 2`       |
//! | `THEOREM1`       | weights `(a/2)^k` split at `m`                               | `>= 2`       |
//! | `THEOREM2`       | weights `(a/2)^{i-1}`                                        | `>= 2`       |
//! | `THEOREM3_UPPER` | `C^a_{A|B..} < (1/k) sum C^a_{AB_i}` over nonzero pairs       | `< 0`        |
//! | `EOF_BASELINE`   | `E^a_{A|B..} >= sum E^a_{AB_i}`                              | `>= sqrt 2`  |
//! | `THEOREM4`       | weights `t^k`, `t = a/sqrt 2`, split at `m`                   | `>= sqrt 2`  |
//! | `THEOREM5`       | weights `t^{i-1}`                                            | `>= sqrt 2`  |
//!
//! `R = B_2 ... B_{N-1}`. The tightened forms only hold under ordering
//! conditions between `C_{AB_i}` and the tail concurrence
//! `C_{A|B_{i+1} ... B_{N-1}}`; reports carry the verdict of those checks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linalg::{self, QubitRegister};
use crate::measures::{self, Bipartition, RoofMeasure};
use crate::states::{PureState, SeededSampler};
use crate::{Error, Result, Scalar};

/// Tolerance on ordering comparisons; ties satisfy both `>=` and `<=`.
pub const CONDITION_TOL: f64 = 1e-12;
/// Tolerance on alpha range checks, so `alpha = sqrt(2)` computed in floating
/// point is accepted.
pub const ALPHA_TOL: f64 = 1e-12;
/// Pairwise concurrences at or below this are treated as zero by the
/// negative-power bounds.
pub const ZERO_PAIR: f64 = 1e-12;
/// Retained terms must exceed this for the strict upper bound to be checked
/// strictly.
pub const STRICT_PAIR_FLOOR: f64 = 1e-6;
/// Margin required by a strict upper bound.
pub const STRICT_MARGIN: f64 = 1e-14;
/// Largest `A ∪ tail` register on which tail concurrences are bounded by
/// decomposition sampling; larger tails only get the trivial upper bound.
pub const MAX_SAMPLED_TAIL_QUBITS: usize = 6;

/// Focus party `A` and the ordered remaining parties. A party is a group of
/// register labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSpec {
    focus: Vec<String>,
    rest: Vec<Vec<String>>,
}

impl PartitionSpec {
    pub fn new(register: &QubitRegister, focus: Vec<String>, rest: Vec<Vec<String>>) -> Result<Self> {
        let mut seen: Vec<&str> = Vec::new();
        for party in std::iter::once(&focus).chain(&rest) {
            if party.is_empty() {
                return Err(Error::InvalidPartition("empty party".into()));
            }
            for label in party {
                if register.position(label).is_none() {
                    return Err(Error::InvalidPartition(format!("unknown label {label:?}")));
                }
                if seen.contains(&label.as_str()) {
                    return Err(Error::InvalidPartition(format!("label {label:?} used twice")));
                }
                seen.push(label);
            }
        }
        if seen.len() != register.num_qubits() {
            return Err(Error::InvalidPartition(format!(
                "parties cover {} of {} qubits",
                seen.len(),
                register.num_qubits()
            )));
        }
        if rest.is_empty() {
            return Err(Error::InvalidPartition("no parties besides the focus".into()));
        }
        Ok(Self { focus, rest })
    }

    /// One party per qubit in register order, the first being the focus.
    pub fn sequential(register: &QubitRegister) -> Self {
        let mut labels = register.labels().iter().cloned();
        let focus = vec![labels.next().expect("non-empty register")];
        Self {
            focus,
            rest: labels.map(|l| vec![l]).collect(),
        }
    }

    /// Parses `A|B|C,D`: parties separated by `|`, labels inside a party by
    /// `,`. The first party is the focus.
    pub fn parse(register: &QubitRegister, text: &str) -> Result<Self> {
        let mut parties = text.split('|').map(|p| {
            p.split(',')
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(String::from)
                .collect::<Vec<_>>()
        });
        let focus = parties.next().unwrap_or_default();
        Self::new(register, focus, parties.collect())
    }

    pub fn focus(&self) -> &[String] {
        &self.focus
    }

    pub fn rest(&self) -> &[Vec<String>] {
        &self.rest
    }

    pub fn num_parties(&self) -> usize {
        self.rest.len() + 1
    }

    fn single_qubit_parties(&self) -> Result<(String, Vec<String>)> {
        let single = |p: &Vec<String>| (p.len() == 1).then(|| p[0].clone());
        let focus = single(&self.focus);
        let rest: Option<Vec<String>> = self.rest.iter().map(single).collect();
        match (focus, rest) {
            (Some(f), Some(r)) => Ok((f, r)),
            _ => Err(Error::Unsupported(
                "pairwise concurrences need one qubit per party".into(),
            )),
        }
    }
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parties: Vec<String> = std::iter::once(&self.focus)
            .chain(&self.rest)
            .map(|p| p.join(","))
            .collect();
        f.write_str(&parties.join("|"))
    }
}

/// Concurrence of `A` against a tail `B_{i+1} ... B_{N-1}`. The reduced state
/// on `A ∪ tail` is generally mixed with more than two qubits, where only
/// bounds are available.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailConcurrence<T> {
    Exact {
        value: T,
    },
    /// `lower` from the mixed-state squared-concurrence inequality on the
    /// tail's pairs, `upper` from decomposition sampling.
    Bounded {
        lower: T,
        upper: T,
    },
}

impl<T: Scalar> TailConcurrence<T> {
    pub fn exact(&self) -> Option<T> {
        match *self {
            TailConcurrence::Exact { value } => Some(value),
            TailConcurrence::Bounded { .. } => None,
        }
    }

    pub fn lower(&self) -> T {
        match *self {
            TailConcurrence::Exact { value } => value,
            TailConcurrence::Bounded { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> T {
        match *self {
            TailConcurrence::Exact { value } => value,
            TailConcurrence::Bounded { upper, .. } => upper,
        }
    }

    /// Whether `c >= tail`, when decidable.
    fn dominated_by(&self, c: T) -> Option<bool> {
        let tol = T::lit(CONDITION_TOL);
        if c >= self.upper() - tol {
            Some(true)
        } else if c < self.lower() - tol {
            Some(false)
        } else {
            None
        }
    }

    /// Whether `c <= tail`, when decidable.
    fn dominates(&self, c: T) -> Option<bool> {
        let tol = T::lit(CONDITION_TOL);
        if c <= self.lower() + tol {
            Some(true)
        } else if c > self.upper() + tol {
            Some(false)
        } else {
            None
        }
    }
}

/// Every concurrence and EoF value the bounds consume.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairwiseProfile<T> {
    /// Party names, focus first.
    pub parties: Vec<String>,
    /// `C_{A|B_1 ... B_{N-1}}`
    pub c_focus_rest: T,
    /// `C_{AB_i}`, `i = 1 .. N-1`
    pub c_pair: Vec<T>,
    /// `C_{A|B_{i+1} ... B_{N-1}}`, `i = 1 .. N-2`
    pub c_tail: Vec<TailConcurrence<T>>,
    /// `E_{A|B_1 ... B_{N-1}}`
    pub e_focus_rest: T,
    /// `E_{AB_i}`
    pub e_pair: Vec<T>,
}

/// Ordering check between `C_{AB_i}` and `C_{A|B_{i+1} ... B_{N-1}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionRecord<T> {
    /// 1-based `i`.
    pub index: usize,
    pub c_pair: T,
    pub c_tail: TailConcurrence<T>,
    /// `C_{AB_i} >= tail`; `None` when the tail bounds straddle `C_{AB_i}`.
    pub pair_ge_tail: Option<bool>,
    /// `C_{AB_i} <= tail`
    pub pair_le_tail: Option<bool>,
}

impl<T: Scalar> PairwiseProfile<T> {
    /// Builds a profile from precomputed values; `c_tail` gets one entry per
    /// `i = 1 .. N-2` and the last one must match `c_pair[N-2]`.
    pub fn from_values(
        c_focus_rest: T,
        c_pair: Vec<T>,
        c_tail: Vec<TailConcurrence<T>>,
        e_focus_rest: T,
        e_pair: Vec<T>,
    ) -> Result<Self> {
        let pairs = c_pair.len();
        if pairs < 2 || c_tail.len() != pairs - 1 || e_pair.len() != pairs {
            return Err(Error::InvalidParams(format!(
                "profile lengths c_pair={pairs}, c_tail={}, e_pair={}",
                c_tail.len(),
                e_pair.len()
            )));
        }
        let values = c_pair
            .iter()
            .chain(&e_pair)
            .chain([&c_focus_rest, &e_focus_rest])
            .copied()
            .chain(c_tail.iter().flat_map(|t| [t.lower(), t.upper()]));
        for v in values {
            if !(v >= T::zero()) || !v.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "profile entry {v} is not a nonnegative number"
                )));
            }
        }
        Ok(Self {
            parties: (0..=pairs).map(|i| char::from(b'A' + i as u8).to_string()).collect(),
            c_focus_rest,
            c_pair,
            c_tail,
            e_focus_rest,
            e_pair,
        })
    }

    /// All-zero profile with `n` parties.
    pub fn zeros(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("need at least 3 parties, got {n}")));
        }
        let z = T::zero();
        Self::from_values(
            z,
            vec![z; n - 1],
            vec![TailConcurrence::Exact { value: z }; n - 2],
            z,
            vec![z; n - 1],
        )
    }

    pub fn num_parties(&self) -> usize {
        self.c_pair.len() + 1
    }

    pub fn is_exact(&self) -> bool {
        self.c_tail.iter().all(|t| t.exact().is_some())
    }

    pub fn conditions(&self) -> Vec<ConditionRecord<T>> {
        self.c_tail
            .iter()
            .enumerate()
            .map(|(k, tail)| ConditionRecord {
                index: k + 1,
                c_pair: self.c_pair[k],
                c_tail: *tail,
                pair_ge_tail: tail.dominated_by(self.c_pair[k]),
                pair_le_tail: tail.dominates(self.c_pair[k]),
            })
            .collect()
    }
}

/// Sampling effort behind bounded tail concurrences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileOptions {
    pub tail_trials: usize,
    pub seed: u64,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        Self {
            tail_trials: 48,
            seed: 0x00c0_ffee,
        }
    }
}

pub fn profile<T: Scalar>(state: &PureState<T>, partition: &PartitionSpec) -> Result<PairwiseProfile<T>> {
    profile_with(state, partition, &ProfileOptions::default())
}

/// Pairwise terms by the two-qubit closed form, `A|rest` by the pure-state
/// formulas, tails exactly when their reduced state is pure or a single
/// qubit, bounded otherwise.
pub fn profile_with<T: Scalar>(
    state: &PureState<T>,
    partition: &PartitionSpec,
    options: &ProfileOptions,
) -> Result<PairwiseProfile<T>> {
    let register = state.register();
    let checked = PartitionSpec::new(register, partition.focus.clone(), partition.rest.clone())?;
    if checked.num_parties() < 3 {
        return Err(Error::Unsupported(format!(
            "profiles need at least 3 parties, got {}",
            checked.num_parties()
        )));
    }
    let (a, rest) = checked.single_qubit_parties()?;

    let cut = Bipartition::new(register, &[a.as_str()])?;
    let c_focus_rest = measures::concurrence_pure(state, &cut)?;
    let e_focus_rest = measures::eof_pure(state, &cut)?;

    let mut c_pair = Vec::with_capacity(rest.len());
    let mut e_pair = Vec::with_capacity(rest.len());
    for b in &rest {
        let (rows, _) = linalg::pure_factor(state.amplitudes(), register, &[a.as_str(), b.as_str()])?;
        let c = measures::concurrence_from_factor(&rows);
        c_pair.push(c);
        e_pair.push(measures::f_of(c * c)?);
    }

    let pairs = rest.len();
    let sampler = SeededSampler::new(options.seed);
    let mut c_tail = Vec::with_capacity(pairs - 1);
    for i in 1..pairs {
        let tail = &rest[i..];
        if tail.len() == 1 {
            c_tail.push(TailConcurrence::Exact {
                value: c_pair[pairs - 1],
            });
            continue;
        }
        let keep: Vec<&str> = std::iter::once(a.as_str())
            .chain(tail.iter().map(String::as_str))
            .collect();
        let rho = state.reduced(&keep)?;
        if (rho.purity() - T::one()).abs() <= T::structural_tol() {
            let purity = state.reduced(&[a.as_str()])?.purity();
            let value = (T::lit(2.0) * (T::one() - purity)).max(T::zero()).sqrt();
            c_tail.push(TailConcurrence::Exact { value });
            continue;
        }
        let upper = if keep.len() <= MAX_SAMPLED_TAIL_QUBITS && options.tail_trials > 0 {
            let mut rng = sampler.derive(i as u64).rng();
            let sampled = measures::convex_roof_sample(
                &rho,
                &[a.as_str()],
                RoofMeasure::Concurrence,
                options.tail_trials,
                &mut rng,
            )?;
            sampled.min(c_focus_rest)
        } else {
            c_focus_rest
        };
        let lower = c_pair[i..].iter().map(|&c| c * c).sum::<T>().sqrt().min(upper);
        c_tail.push(TailConcurrence::Bounded { lower, upper });
    }

    Ok(PairwiseProfile {
        parties: std::iter::once(&checked.focus)
            .chain(&checked.rest)
            .map(|p| p.join(","))
            .collect(),
        c_focus_rest,
        c_pair,
        c_tail,
        e_focus_rest,
        e_pair,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundId {
    CkwEq2,
    AlphaPowerEq3,
    LemmaEq4,
    Theorem1,
    Theorem2,
    Theorem3Upper,
    EofBaseline,
    Theorem4,
    Theorem5,
}

impl BoundId {
    pub const ALL: [BoundId; 9] = [
        BoundId::CkwEq2,
        BoundId::AlphaPowerEq3,
        BoundId::LemmaEq4,
        BoundId::Theorem1,
        BoundId::Theorem2,
        BoundId::Theorem3Upper,
        BoundId::EofBaseline,
        BoundId::Theorem4,
        BoundId::Theorem5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::CkwEq2 => "CKW_EQ2",
            BoundId::AlphaPowerEq3 => "ALPHA_POWER_EQ3",
            BoundId::LemmaEq4 => "LEMMA_EQ4",
            BoundId::Theorem1 => "THEOREM1",
            BoundId::Theorem2 => "THEOREM2",
            BoundId::Theorem3Upper => "THEOREM3_UPPER",
            BoundId::EofBaseline => "EOF_BASELINE",
            BoundId::Theorem4 => "THEOREM4",
            BoundId::Theorem5 => "THEOREM5",
        }
    }

    pub fn is_eof(self) -> bool {
        matches!(self, BoundId::EofBaseline | BoundId::Theorem4 | BoundId::Theorem5)
    }

    pub fn uses_split(self) -> bool {
        matches!(self, BoundId::Theorem1 | BoundId::Theorem4)
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    /// Accepts the canonical ids and short forms such as `ckw`, `lemma`,
    /// `theorem3`, `eof-baseline`.
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        let id = match norm.as_str() {
            "ckw" | "ckw_eq2" => BoundId::CkwEq2,
            "alpha_power" | "alpha_power_eq3" | "baseline" => BoundId::AlphaPowerEq3,
            "lemma" | "lemma_eq4" => BoundId::LemmaEq4,
            "theorem1" | "t1" => BoundId::Theorem1,
            "theorem2" | "t2" => BoundId::Theorem2,
            "theorem3" | "theorem3_upper" | "t3" => BoundId::Theorem3Upper,
            "eof_baseline" => BoundId::EofBaseline,
            "theorem4" | "t4" => BoundId::Theorem4,
            "theorem5" | "t5" => BoundId::Theorem5,
            _ => return Err(Error::InvalidBound(format!("unknown bound {s:?}"))),
        };
        Ok(id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `lhs >= rhs`
    Lower,
    /// `lhs <= rhs`
    Upper,
}

/// A bound together with its exponent and, for the split forms, the split
/// index `m` (`None` selects the largest admissible one).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundKind<T> {
    pub id: BoundId,
    pub alpha: T,
    pub m: Option<usize>,
}

impl<T: Scalar> BoundKind<T> {
    pub fn new(id: BoundId, alpha: T) -> Result<Self> {
        let kind = Self { id, alpha, m: None };
        kind.validate_alpha()?;
        Ok(kind)
    }

    pub fn ckw() -> Self {
        Self {
            id: BoundId::CkwEq2,
            alpha: T::lit(2.0),
            m: None,
        }
    }

    pub fn with_split(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    /// Same bound at another exponent (`CKW_EQ2` keeps `alpha = 2`).
    pub fn at_alpha(&self, alpha: T) -> Result<Self> {
        let alpha = if self.id == BoundId::CkwEq2 { T::lit(2.0) } else { alpha };
        let kind = Self { alpha, ..*self };
        kind.validate_alpha()?;
        Ok(kind)
    }

    pub fn direction(&self) -> Direction {
        match self.id {
            BoundId::Theorem3Upper => Direction::Upper,
            BoundId::AlphaPowerEq3 if self.alpha < T::zero() => Direction::Upper,
            _ => Direction::Lower,
        }
    }

    pub fn validate_alpha(&self) -> Result<()> {
        let a = self.alpha;
        let tol = T::lit(ALPHA_TOL);
        let two = T::lit(2.0);
        let ok = a.is_finite()
            && match self.id {
                BoundId::CkwEq2 => (a - two).abs() <= tol,
                BoundId::AlphaPowerEq3 => a >= two - tol || a < T::zero(),
                BoundId::LemmaEq4 | BoundId::Theorem1 | BoundId::Theorem2 => a >= two - tol,
                BoundId::Theorem3Upper => a < T::zero(),
                BoundId::EofBaseline | BoundId::Theorem4 | BoundId::Theorem5 => a >= T::SQRT_2() - tol,
            };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidBound(format!(
                "alpha = {a} is outside the range of {}",
                self.id
            )))
        }
    }

    /// Per-pair weights of the right-hand side for a profile with `pairs`
    /// pairwise terms and split `m` (ignored by the unsplit forms).
    /// `LEMMA_EQ4` has its own two-term form and `THEOREM3_UPPER` its own
    /// normalization; both get unit weights here.
    pub fn coefficients(&self, pairs: usize, m: usize) -> Vec<T> {
        let ratio = match self.id {
            BoundId::Theorem1 | BoundId::Theorem2 => self.alpha / T::lit(2.0),
            BoundId::Theorem4 | BoundId::Theorem5 => self.alpha / T::SQRT_2(),
            _ => return vec![T::one(); pairs],
        };
        if self.id.uses_split() {
            (1..=pairs)
                .map(|i| {
                    let k = if i <= m {
                        i - 1
                    } else if i < pairs {
                        m + 1
                    } else {
                        m
                    };
                    ratio.powi(k as i32)
                })
                .collect()
        } else {
            (0..pairs).map(|k| ratio.powi(k as i32)).collect()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Applicability {
    Applicable,
    NotApplicable,
    /// The ordering conditions depend on a tail concurrence known only
    /// within bounds.
    Indeterminate,
}

impl Applicability {
    fn combine(checks: impl IntoIterator<Item = Option<bool>>) -> Self {
        let mut result = Applicability::Applicable;
        for c in checks {
            match c {
                Some(false) => return Applicability::NotApplicable,
                None => result = Applicability::Indeterminate,
                Some(true) => {}
            }
        }
        result
    }
}

/// One evaluated inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport<T> {
    pub kind: BoundKind<T>,
    pub direction: Direction,
    pub lhs: T,
    pub rhs: T,
    /// `lhs - rhs` for lower bounds, `rhs - lhs` for upper bounds.
    pub slack: T,
    pub applicability: Applicability,
    /// Strict upper bound that must hold with margin [`STRICT_MARGIN`].
    pub strict: bool,
    pub condition_detail: Vec<ConditionRecord<T>>,
    /// 1-based indices of pairwise terms left out of the sum.
    pub dropped_terms: Vec<usize>,
    pub note: Option<String>,
}

impl<T: Scalar> BoundReport<T> {
    pub fn applicable(&self) -> bool {
        self.applicability == Applicability::Applicable
    }

    /// Pass/fail for applicable reports. Non-strict forms allow a violation
    /// of `tol * max(1, |lhs|, |rhs|)`.
    pub fn verdict(&self, tol: T) -> Option<bool> {
        if !self.applicable() {
            return None;
        }
        if self.strict {
            return Some(self.slack >= T::lit(STRICT_MARGIN));
        }
        let scale = T::one().max(self.lhs.abs()).max(self.rhs.abs());
        Some(self.slack >= -tol * scale)
    }

    fn build(
        kind: BoundKind<T>,
        lhs: T,
        rhs: T,
        applicability: Applicability,
        condition_detail: Vec<ConditionRecord<T>>,
    ) -> Self {
        let direction = kind.direction();
        let slack = match direction {
            Direction::Lower => lhs - rhs,
            Direction::Upper => rhs - lhs,
        };
        Self {
            kind,
            direction,
            lhs,
            rhs,
            slack,
            applicability,
            strict: false,
            condition_detail,
            dropped_terms: Vec::new(),
            note: None,
        }
    }
}

/// Applicability of the split form at `m`: `>=` for `i <= m`, `<=` for
/// `m < j <= N-2`.
fn split_applicability<T: Scalar>(conditions: &[ConditionRecord<T>], m: usize) -> Applicability {
    Applicability::combine(
        conditions
            .iter()
            .map(|c| if c.index <= m { c.pair_ge_tail } else { c.pair_le_tail }),
    )
}

/// `m` in `1..=N-3`: the requested one, else the largest applicable one,
/// else the largest indeterminate one, else `N-3`.
fn resolve_split<T: Scalar>(
    kind: &BoundKind<T>,
    pairs: usize,
    conditions: &[ConditionRecord<T>],
) -> Result<(usize, Applicability)> {
    let parties = pairs + 1;
    if parties < 4 {
        return Err(Error::InvalidBound(format!(
            "{} needs N >= 4 parties, got {parties}",
            kind.id
        )));
    }
    let max_m = parties - 3;
    if let Some(m) = kind.m {
        if !(1..=max_m).contains(&m) {
            return Err(Error::InvalidBound(format!("split m = {m} outside 1..={max_m}")));
        }
        return Ok((m, split_applicability(conditions, m)));
    }
    let all: Vec<(usize, Applicability)> = (1..=max_m)
        .rev()
        .map(|m| (m, split_applicability(conditions, m)))
        .collect();
    let pick = all
        .iter()
        .find(|(_, a)| *a == Applicability::Applicable)
        .or_else(|| all.iter().find(|(_, a)| *a == Applicability::Indeterminate))
        .copied()
        .unwrap_or((max_m, Applicability::NotApplicable));
    Ok(pick)
}

fn weighted_sum<T: Scalar>(values: &[T], weights: &[T], alpha: T) -> T {
    values.iter().zip(weights).map(|(&v, &w)| w * v.powf(alpha)).sum()
}

/// Concurrence lower bounds: `CKW_EQ2`, `ALPHA_POWER_EQ3` with `alpha >= 2`,
/// `LEMMA_EQ4`, `THEOREM1`, `THEOREM2`.
pub fn eval_lower_bound<T: Scalar>(profile: &PairwiseProfile<T>, kind: &BoundKind<T>) -> Result<BoundReport<T>> {
    let kind = kind.at_alpha(kind.alpha)?;
    if kind.id.is_eof() || kind.direction() == Direction::Upper {
        return Err(Error::InvalidBound(format!(
            "{} at alpha = {} is not a concurrence lower bound",
            kind.id, kind.alpha
        )));
    }
    let alpha = kind.alpha;
    let pairs = profile.c_pair.len();
    let lhs = profile.c_focus_rest.powf(alpha);
    let conditions = profile.conditions();

    match kind.id {
        BoundId::CkwEq2 | BoundId::AlphaPowerEq3 => {
            let rhs = weighted_sum(&profile.c_pair, &kind.coefficients(pairs, 0), alpha);
            Ok(BoundReport::build(
                kind,
                lhs,
                rhs,
                Applicability::Applicable,
                conditions,
            ))
        }
        BoundId::LemmaEq4 => {
            // B = B_1, C = B_2 ... B_{N-1}
            let first = &conditions[0];
            let tail = first.c_tail;
            let c_ab = profile.c_pair[0].powf(alpha);
            let half = alpha / T::lit(2.0);
            let applicability = match (first.pair_ge_tail, tail.exact()) {
                (Some(false), _) => Applicability::NotApplicable,
                (Some(true), Some(_)) => Applicability::Applicable,
                _ => Applicability::Indeterminate,
            };
            let rhs = c_ab + half * tail.lower().powf(alpha);
            let mut report = BoundReport::build(kind, lhs, rhs, applicability, vec![first.clone()]);
            if tail.exact().is_none() {
                report.note = Some("C_{A|B_2...} is only bounded; rhs uses its lower bound".into());
            }
            Ok(report)
        }
        BoundId::Theorem2 => {
            let applicability = Applicability::combine(conditions.iter().map(|c| c.pair_ge_tail));
            let rhs = weighted_sum(&profile.c_pair, &kind.coefficients(pairs, 0), alpha);
            Ok(BoundReport::build(kind, lhs, rhs, applicability, conditions))
        }
        BoundId::Theorem1 => {
            let (m, applicability) = resolve_split(&kind, pairs, &conditions)?;
            let kind = kind.with_split(m);
            let rhs = weighted_sum(&profile.c_pair, &kind.coefficients(pairs, m), alpha);
            Ok(BoundReport::build(kind, lhs, rhs, applicability, conditions))
        }
        _ => unreachable!("filtered above"),
    }
}

/// Negative-power upper bounds: the tightened `THEOREM3_UPPER` and, for
/// `ALPHA_POWER_EQ3` with `alpha < 0`, the unnormalized sum. Pairwise terms at
/// or below [`ZERO_PAIR`] are dropped.
fn eval_negative_power<T: Scalar>(profile: &PairwiseProfile<T>, kind: BoundKind<T>) -> Result<BoundReport<T>> {
    let alpha = kind.alpha;
    let zero = T::lit(ZERO_PAIR);
    let conditions = profile.conditions();
    let (kept, dropped): (Vec<usize>, Vec<usize>) = (0..profile.c_pair.len()).partition(|&i| profile.c_pair[i] > zero);

    if profile.c_focus_rest <= zero || kept.is_empty() {
        let mut report = BoundReport::build(kind, T::zero(), T::zero(), Applicability::NotApplicable, conditions);
        report.dropped_terms = dropped.iter().map(|i| i + 1).collect();
        report.note = Some(if profile.c_focus_rest <= zero {
            "C_{A|B...} = 0: negative power undefined".into()
        } else {
            "all pairwise concurrences vanish".into()
        });
        return Ok(report);
    }

    let lhs = profile.c_focus_rest.powf(alpha);
    let sum: T = kept.iter().map(|&i| profile.c_pair[i].powf(alpha)).sum();
    let rhs = match kind.id {
        BoundId::Theorem3Upper => sum / T::lit(kept.len() as f64),
        _ => sum,
    };
    let mut report = BoundReport::build(kind, lhs, rhs, Applicability::Applicable, conditions);
    report.dropped_terms = dropped.iter().map(|i| i + 1).collect();
    report.strict = kind.id == BoundId::Theorem3Upper
        && dropped.is_empty()
        && kept.len() >= 2
        && kept.iter().all(|&i| profile.c_pair[i] > T::lit(STRICT_PAIR_FLOOR));
    if !dropped.is_empty() {
        report.note = Some(format!("dropped vanishing pairwise terms {:?}", report.dropped_terms));
    }
    Ok(report)
}

/// `C^a_{A|B...} < (1/k) sum_i C^a_{AB_i}` for `a < 0`, summing the `k`
/// nonvanishing pairwise terms. Strict when no term was dropped, at least
/// two remain, and all exceed [`STRICT_PAIR_FLOOR`]; otherwise checked as
/// `<=`.
pub fn eval_theorem3_upper<T: Scalar>(profile: &PairwiseProfile<T>, alpha: T) -> Result<BoundReport<T>> {
    eval_negative_power(profile, BoundKind::new(BoundId::Theorem3Upper, alpha)?)
}

/// EoF lower bounds `EOF_BASELINE`, `THEOREM4`, `THEOREM5`. The ordering
/// conditions are on concurrences, not on EoF.
pub fn eval_eof_bound<T: Scalar>(profile: &PairwiseProfile<T>, kind: &BoundKind<T>) -> Result<BoundReport<T>> {
    if !kind.id.is_eof() {
        return Err(Error::InvalidBound(format!("{} is not an EoF bound", kind.id)));
    }
    let kind = kind.at_alpha(kind.alpha)?;
    let alpha = kind.alpha;
    let pairs = profile.e_pair.len();
    let lhs = profile.e_focus_rest.powf(alpha);
    let conditions = profile.conditions();
    let (kind, m, applicability) = match kind.id {
        BoundId::EofBaseline => (kind, 0, Applicability::Applicable),
        BoundId::Theorem5 => (
            kind,
            0,
            Applicability::combine(conditions.iter().map(|c| c.pair_ge_tail)),
        ),
        _ => {
            let (m, a) = resolve_split(&kind, pairs, &conditions)?;
            (kind.with_split(m), m, a)
        }
    };
    let rhs = weighted_sum(&profile.e_pair, &kind.coefficients(pairs, m), alpha);
    Ok(BoundReport::build(kind, lhs, rhs, applicability, conditions))
}

/// Routes any bound kind to its evaluator.
pub fn evaluate<T: Scalar>(profile: &PairwiseProfile<T>, kind: &BoundKind<T>) -> Result<BoundReport<T>> {
    let kind = kind.at_alpha(kind.alpha)?;
    match (kind.id, kind.direction()) {
        (id, _) if id.is_eof() => eval_eof_bound(profile, &kind),
        (_, Direction::Upper) => eval_negative_power(profile, kind),
        _ => eval_lower_bound(profile, &kind),
    }
}

/// `lhs - rhs` of a bound.
pub fn residual<T: Scalar>(profile: &PairwiseProfile<T>, kind: &BoundKind<T>) -> Result<T> {
    evaluate(profile, kind).map(|r| r.lhs - r.rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint<T> {
    pub alpha: T,
    /// Residual of the tightened bound.
    pub y1: T,
    /// Residual of the baseline.
    pub y2: T,
    pub applicability: Applicability,
}

/// Residual curves `y1` (tightened) and `y2` (baseline) over an alpha grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaSweep<T> {
    pub tightened: BoundId,
    pub baseline: BoundId,
    pub direction: Direction,
    pub points: Vec<SweepPoint<T>>,
}

impl<T: Scalar> AlphaSweep<T> {
    /// How much tighter the tightened bound is at each point: `y2 - y1` for
    /// lower bounds, `y1 - y2` for upper bounds. Nonnegative wherever the
    /// tightened bound is at least as tight as the baseline.
    pub fn tightening(&self) -> Vec<T> {
        self.points
            .iter()
            .map(|p| match self.direction {
                Direction::Lower => p.y2 - p.y1,
                Direction::Upper => p.y1 - p.y2,
            })
            .collect()
    }
}

pub fn residual_sweep<T: Scalar>(
    profile: &PairwiseProfile<T>,
    tightened: &BoundKind<T>,
    baseline: &BoundKind<T>,
    alphas: &[T],
) -> Result<AlphaSweep<T>> {
    if alphas.is_empty() {
        return Err(Error::InvalidParams("empty alpha grid".into()));
    }
    let mut points = Vec::with_capacity(alphas.len());
    let mut direction = None;
    for &alpha in alphas {
        let tight = evaluate(profile, &tightened.at_alpha(alpha)?)?;
        let base = evaluate(profile, &baseline.at_alpha(alpha)?)?;
        if tight.direction != base.direction || direction.is_some_and(|d| d != tight.direction) {
            return Err(Error::InvalidBound(format!(
                "{} and {} do not bound in the same direction at alpha = {alpha}",
                tightened.id, baseline.id
            )));
        }
        direction = Some(tight.direction);
        points.push(SweepPoint {
            alpha,
            y1: tight.lhs - tight.rhs,
            y2: base.lhs - base.rhs,
            applicability: tight.applicability,
        });
    }
    Ok(AlphaSweep {
        tightened: tightened.id,
        baseline: baseline.id,
        direction: direction.expect("non-empty grid"),
        points,
    })
}

/// `min, min + step, ...` up to `max` (inclusive within a relative `1e-9`
/// of a step). Points are computed by multiplication, not accumulation.
pub fn alpha_grid<T: Scalar>(min: T, max: T, step: T) -> Result<Vec<T>> {
    if !(step > T::zero()) || !min.is_finite() || !max.is_finite() || max < min {
        return Err(Error::InvalidParams(format!(
            "bad alpha grid [{min}, {max}] step {step}"
        )));
    }
    let count = ((max - min) / step + T::lit(1e-9)).floor().to_usize().unwrap_or(0) + 1;
    if count > 1_000_000 {
        return Err(Error::InvalidParams(format!(
            "alpha grid of {count} points is too large"
        )));
    }
    Ok((0..count).map(|k| min + step * T::lit(k as f64)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{generalized_schmidt, w_state, SchmidtParams};

    fn uniform_schmidt() -> PairwiseProfile<f64> {
        let psi = generalized_schmidt(&SchmidtParams::uniform()).unwrap();
        profile(&psi, &PartitionSpec::sequential(psi.register())).unwrap()
    }

    fn exact(v: f64) -> TailConcurrence<f64> {
        TailConcurrence::Exact { value: v }
    }

    #[test]
    fn uniform_schmidt_profile() {
        let p = uniform_schmidt();
        assert!((p.c_focus_rest - 2.0 * 3f64.sqrt() / 5.0).abs() < 1e-12);
        for c in &p.c_pair {
            assert!((c - 0.4).abs() < 1e-12);
        }
        assert_eq!(p.c_tail.len(), 1);
        assert!((p.c_tail[0].exact().unwrap() - 0.4).abs() < 1e-12);
        assert_eq!(p.parties, ["A", "B", "C"]);
    }

    #[test]
    fn w_profile_eof() {
        let w = w_state::<f64>(3).unwrap();
        let p = profile(&w, &PartitionSpec::sequential(w.register())).unwrap();
        for e in &p.e_pair {
            assert!((e - 0.55).abs() < 0.005);
        }
        assert!((p.e_focus_rest - 0.92).abs() < 0.005);
    }

    #[test]
    fn product_profile_is_zero() {
        let psi = PureState::<f64>::basis(3, 0).unwrap();
        let p = profile(&psi, &PartitionSpec::sequential(psi.register())).unwrap();
        assert_eq!(p.c_focus_rest, 0.0);
        assert!(p.c_pair.iter().chain(&p.e_pair).all(|&v| v == 0.0));
    }

    #[test]
    fn profile_errors() {
        let psi = PureState::<f64>::basis(2, 0).unwrap();
        assert!(matches!(
            profile(&psi, &PartitionSpec::sequential(psi.register())),
            Err(Error::Unsupported(_))
        ));
        let psi = PureState::<f64>::basis(4, 0).unwrap();
        let grouped = PartitionSpec::parse(psi.register(), "A|B|C,D").unwrap();
        assert!(matches!(profile(&psi, &grouped), Err(Error::Unsupported(_))));
        assert!(PartitionSpec::parse(psi.register(), "A|B|C").is_err());
        assert!(PartitionSpec::parse(psi.register(), "A|B|C|C").is_err());
        assert!(PartitionSpec::parse(psi.register(), "A|B|C|X").is_err());
        assert_eq!(grouped.to_string(), "A|B|C,D");
    }

    #[test]
    fn two_term_bound_on_schmidt_state() {
        let p = uniform_schmidt();
        let r = eval_lower_bound(&p, &BoundKind::new(BoundId::LemmaEq4, 2.0).unwrap()).unwrap();
        assert!((r.lhs - 12.0 / 25.0).abs() < 1e-12);
        assert!((r.rhs - 8.0 / 25.0).abs() < 1e-12);
        assert!((r.slack - 4.0 / 25.0).abs() < 1e-12);
        assert!(r.applicable());
        assert_eq!(r.verdict(1e-10), Some(true));
    }

    #[test]
    fn power_sum_bound_on_schmidt_state() {
        let p = uniform_schmidt();
        let r = eval_lower_bound(&p, &BoundKind::new(BoundId::AlphaPowerEq3, 2.0).unwrap()).unwrap();
        assert!((r.rhs - 2.0 * 0.16).abs() < 1e-12);
        assert!((r.slack - 4.0 / 25.0).abs() < 1e-12);
    }

    #[test]
    fn zero_profile_all_kinds() {
        let p = PairwiseProfile::<f64>::zeros(3).unwrap();
        for id in [
            BoundId::CkwEq2,
            BoundId::AlphaPowerEq3,
            BoundId::LemmaEq4,
            BoundId::Theorem2,
        ] {
            let r = eval_lower_bound(&p, &BoundKind::new(id, 2.0).unwrap_or(BoundKind::ckw())).unwrap();
            assert_eq!((r.lhs, r.rhs, r.slack), (0.0, 0.0, 0.0), "{id}");
        }
        for id in [BoundId::EofBaseline, BoundId::Theorem5] {
            let r = eval_eof_bound(&p, &BoundKind::new(id, 2.0).unwrap()).unwrap();
            assert_eq!((r.lhs, r.rhs, r.slack), (0.0, 0.0, 0.0), "{id}");
        }
    }

    #[test]
    fn alpha_range_errors() {
        assert!(BoundKind::new(BoundId::Theorem2, 1.5).is_err());
        assert!(BoundKind::new(BoundId::Theorem3Upper, 0.5).is_err());
        assert!(BoundKind::new(BoundId::Theorem5, 1.4).is_err());
        assert!(BoundKind::new(BoundId::Theorem5, std::f64::consts::SQRT_2).is_ok());
        assert!(BoundKind::new(BoundId::AlphaPowerEq3, 1.0).is_err());
        assert!(BoundKind::new(BoundId::AlphaPowerEq3, -1.0).is_ok());
        let p = uniform_schmidt();
        let t1 = BoundKind::new(BoundId::Theorem1, 2.0).unwrap();
        assert!(matches!(eval_lower_bound(&p, &t1), Err(Error::InvalidBound(_))));
        let eof = BoundKind::new(BoundId::Theorem5, 2.0).unwrap();
        assert!(eval_lower_bound(&p, &eof).is_err());
        let bad = BoundKind {
            id: BoundId::Theorem2,
            alpha: 1.0,
            m: None,
        };
        assert!(eval_lower_bound(&p, &bad).is_err());
        assert!(eval_eof_bound(
            &p,
            &BoundKind {
                id: BoundId::Theorem5,
                alpha: 1.0,
                m: None
            }
        )
        .is_err());
    }

    #[test]
    fn negative_power_upper_bound_on_schmidt_state() {
        let p = uniform_schmidt();
        let r = eval_theorem3_upper(&p, -1.0).unwrap();
        assert!((r.lhs - 5.0 / (2.0 * 3f64.sqrt())).abs() < 1e-12);
        assert!((r.rhs - 2.5).abs() < 1e-12);
        assert!((r.slack - (2.5 - 5.0 / (2.0 * 3f64.sqrt()))).abs() < 1e-12);
        assert!(r.strict);
        assert_eq!(r.verdict(1e-10), Some(true));
    }

    #[test]
    fn upper_bound_drops_vanishing_pair() {
        // Bell pair on (A, B) with C unentangled
        let p = PairwiseProfile::from_values(1.0, vec![1.0, 0.0], vec![exact(0.0)], 1.0, vec![1.0, 0.0]).unwrap();
        let r = eval_theorem3_upper(&p, -1.0).unwrap();
        assert_eq!(r.dropped_terms, vec![2]);
        assert!((r.rhs - 1.0).abs() < 1e-15);
        assert!(!r.strict);
        assert_eq!(r.verdict(1e-10), Some(true));

        let zero = PairwiseProfile::<f64>::zeros(3).unwrap();
        let r = eval_theorem3_upper(&zero, -1.0).unwrap();
        assert_eq!(r.applicability, Applicability::NotApplicable);
        assert!(r.note.is_some());
    }

    #[test]
    fn sequential_coefficients_are_powers() {
        for alpha in [2.0f64, 2.5, 3.0, 4.7] {
            let k = BoundKind::new(BoundId::Theorem2, alpha).unwrap();
            let c = k.coefficients(6, 0);
            for (i, w) in c.iter().enumerate() {
                assert_eq!(*w, (alpha / 2.0).powi(i as i32));
            }
        }
    }

    #[test]
    fn split_coefficient_layout() {
        let k = BoundKind::new(BoundId::Theorem1, 3.0).unwrap();
        let r: f64 = 1.5;
        // N = 6 parties, 5 pairs, m = 2: 1, r, r^3, r^3, r^2
        assert_eq!(k.coefficients(5, 2), vec![1.0, r, r.powi(3), r.powi(3), r.powi(2)]);
        let k = BoundKind::new(BoundId::Theorem4, 2.0).unwrap();
        let t = 2.0 / std::f64::consts::SQRT_2;
        assert_eq!(k.coefficients(3, 1), vec![1.0, t.powi(2), t]);
    }

    #[test]
    fn split_selection() {
        // 5 parties, pairs 0.5, 0.4, 0.1, 0.3; tails exact.
        // i=1: 0.5 >= 0.45 ; i=2: 0.4 vs 0.35 ; i=3: 0.1 <= 0.3
        let p = PairwiseProfile::from_values(
            0.8,
            vec![0.5, 0.4, 0.1, 0.3],
            vec![exact(0.45), exact(0.35), exact(0.3)],
            0.5,
            vec![0.1; 4],
        )
        .unwrap();
        let r = eval_lower_bound(&p, &BoundKind::new(BoundId::Theorem1, 2.0).unwrap()).unwrap();
        assert_eq!(r.kind.m, Some(2));
        assert!(r.applicable());
        let forced = BoundKind::new(BoundId::Theorem1, 2.0).unwrap().with_split(1);
        let r = eval_lower_bound(&p, &forced).unwrap();
        assert_eq!(r.applicability, Applicability::NotApplicable);
        let bad = BoundKind::new(BoundId::Theorem1, 2.0).unwrap().with_split(3);
        assert!(eval_lower_bound(&p, &bad).is_err());
    }

    #[test]
    fn bounded_tail_makes_conditions_indeterminate() {
        let p = PairwiseProfile::from_values(
            0.8,
            vec![0.3, 0.2, 0.1],
            vec![TailConcurrence::Bounded { lower: 0.2, upper: 0.5 }, exact(0.1)],
            0.5,
            vec![0.1; 3],
        )
        .unwrap();
        let c = p.conditions();
        assert_eq!(c[0].pair_ge_tail, None);
        assert_eq!(c[0].pair_le_tail, None);
        assert_eq!(c[1].pair_ge_tail, Some(true));
        let r = eval_lower_bound(&p, &BoundKind::new(BoundId::Theorem2, 2.0).unwrap()).unwrap();
        assert_eq!(r.applicability, Applicability::Indeterminate);
        assert_eq!(r.verdict(1e-10), None);
        let r = eval_lower_bound(&p, &BoundKind::new(BoundId::LemmaEq4, 2.0).unwrap()).unwrap();
        assert_eq!(r.applicability, Applicability::Indeterminate);
    }

    #[test]
    fn eof_w_state_at_sqrt2() {
        let w = w_state::<f64>(3).unwrap();
        let p = profile(&w, &PartitionSpec::sequential(w.register())).unwrap();
        let a = std::f64::consts::SQRT_2;
        let t5 = eval_eof_bound(&p, &BoundKind::new(BoundId::Theorem5, a).unwrap()).unwrap();
        let base = eval_eof_bound(&p, &BoundKind::new(BoundId::EofBaseline, a).unwrap()).unwrap();
        assert!((t5.rhs - 2.0 * p.e_pair[0].powf(a)).abs() < 1e-12);
        assert!((t5.rhs - base.rhs).abs() < 1e-12);
        assert!(t5.applicable());

        let b2 = eval_eof_bound(&p, &BoundKind::new(BoundId::EofBaseline, 2.0).unwrap()).unwrap();
        assert!((b2.rhs - 2.0 * p.e_pair[0].powi(2)).abs() < 1e-12);
        assert!((b2.lhs - p.e_focus_rest.powi(2)).abs() < 1e-12);
        assert!(b2.slack > 0.0);
    }

    #[test]
    fn sweeps() {
        let p = uniform_schmidt();
        let grid = alpha_grid(2.0, 5.0, 0.5).unwrap();
        let s = residual_sweep(
            &p,
            &BoundKind::new(BoundId::LemmaEq4, 2.0).unwrap(),
            &BoundKind::new(BoundId::AlphaPowerEq3, 2.0).unwrap(),
            &grid,
        )
        .unwrap();
        let (top, pair) = (2.0 * 3f64.sqrt() / 5.0, 0.4f64);
        for pt in &s.points {
            let a = pt.alpha;
            assert!((pt.y1 - (top.powf(a) - (1.0 + a / 2.0) * pair.powf(a))).abs() < 1e-12);
            assert!((pt.y2 - (top.powf(a) - 2.0 * pair.powf(a))).abs() < 1e-12);
        }
        assert!(s.tightening().iter().all(|&g| g >= -1e-15));

        let neg = alpha_grid(-5.0, -0.05, 0.05).unwrap();
        assert_eq!(neg.len(), 100);
        let s = residual_sweep(
            &p,
            &BoundKind::new(BoundId::Theorem3Upper, -1.0).unwrap(),
            &BoundKind::new(BoundId::AlphaPowerEq3, -1.0).unwrap(),
            &neg,
        )
        .unwrap();
        for pt in &s.points {
            let a = pt.alpha;
            assert!((pt.y1 - (top.powf(a) - pair.powf(a))).abs() < 1e-10 * top.powf(a).max(1.0));
            assert!((pt.y2 - (top.powf(a) - 2.0 * pair.powf(a))).abs() < 1e-10 * top.powf(a).max(1.0));
        }
        assert!(residual_sweep(&p, &BoundKind::ckw(), &BoundKind::ckw(), &[]).is_err());
        let mixed = residual_sweep(
            &p,
            &BoundKind::new(BoundId::Theorem3Upper, -1.0).unwrap(),
            &BoundKind::new(BoundId::AlphaPowerEq3, 2.0).unwrap(),
            &[2.0],
        );
        assert!(mixed.is_err());
    }

    #[test]
    fn zero_profile_sweep() {
        let p = PairwiseProfile::<f64>::zeros(3).unwrap();
        let s = residual_sweep(
            &p,
            &BoundKind::new(BoundId::Theorem2, 2.0).unwrap(),
            &BoundKind::new(BoundId::AlphaPowerEq3, 2.0).unwrap(),
            &alpha_grid(2.0, 3.0, 0.25).unwrap(),
        )
        .unwrap();
        assert!(s.points.iter().all(|pt| pt.y1 == 0.0 && pt.y2 == 0.0));
    }

    #[test]
    fn bound_id_parsing() {
        for id in BoundId::ALL {
            assert_eq!(id.as_str().parse::<BoundId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
        }
        assert_eq!("eof-baseline".parse::<BoundId>().unwrap(), BoundId::EofBaseline);
        assert!("nope".parse::<BoundId>().is_err());
    }

    #[test]
    fn grid_construction() {
        let g = alpha_grid(2.0f64, 5.0, 0.05).unwrap();
        assert_eq!(g.len(), 61);
        assert_eq!(g[0], 2.0);
        assert!((g[60] - 5.0).abs() < 1e-12);
        let g = alpha_grid(std::f64::consts::SQRT_2, 4.0, 0.05).unwrap();
        assert!(*g.last().unwrap() <= 4.0);
        assert!(alpha_grid(1.0, 0.0, 0.1).is_err());
        assert!(alpha_grid(0.0, 1.0, 0.0).is_err());
    }
}
