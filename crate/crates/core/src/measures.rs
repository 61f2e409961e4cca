//! Concurrence and entanglement of formation.
//!
//! Pure states use the reduced-state formulas. Two-qubit mixed states use the
//! spin-flip closed form, which is the exact convex roof in that case. For
//! everything else [`convex_roof_sample`] gives an upper bound by searching
//! over pure-state decompositions.

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{self, ComplexMatrix, QubitRegister};
use crate::states::{haar_unitary, DensityMatrix, PureState, SeededSampler};
use crate::{Error, Result, Scalar};

/// Split of a register into two nonempty, disjoint sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    side_a: Vec<String>,
    side_b: Vec<String>,
}

impl Bipartition {
    /// `side_a` as given; `side_b` is the complement in register order.
    pub fn new<S: AsRef<str>>(register: &QubitRegister, side_a: &[S]) -> Result<Self> {
        let positions = register
            .keep_positions(side_a)
            .map_err(|e| Error::InvalidCut(e.to_string()))?;
        let side_a: Vec<String> = positions.iter().map(|&p| register.labels()[p].clone()).collect();
        let side_b = register
            .labels()
            .iter()
            .filter(|l| !side_a.contains(l))
            .cloned()
            .collect();
        Ok(Self { side_a, side_b })
    }

    pub fn side_a(&self) -> &[String] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[String] {
        &self.side_b
    }

    fn check<T: Scalar>(&self, psi: &PureState<T>) -> Result<()> {
        let reg = psi.register();
        let covered = self.side_a.len() + self.side_b.len() == reg.num_qubits()
            && self
                .side_a
                .iter()
                .chain(&self.side_b)
                .all(|l| reg.position(l).is_some());
        if covered {
            Ok(())
        } else {
            Err(Error::InvalidCut(format!(
                "{:?}|{:?} does not split register {:?}",
                self.side_a,
                self.side_b,
                reg.labels()
            )))
        }
    }

    /// The side holding fewer qubits (side A on ties).
    fn smaller_side(&self) -> &[String] {
        if self.side_b.len() < self.side_a.len() {
            &self.side_b
        } else {
            &self.side_a
        }
    }
}

/// `sqrt(2 (1 - Tr rho_A^2))` across `cut`.
pub fn concurrence_pure<T: Scalar>(psi: &PureState<T>, cut: &Bipartition) -> Result<T> {
    cut.check(psi)?;
    let rho_a = psi.reduced(cut.smaller_side())?;
    Ok(concurrence_from_purity(rho_a.purity()))
}

fn concurrence_from_purity<T: Scalar>(purity: T) -> T {
    (T::lit(2.0) * (T::one() - purity)).max(T::zero()).sqrt()
}

fn require_two_qubits<T: Scalar>(rho: &DensityMatrix<T>) -> Result<()> {
    if rho.num_qubits() == 2 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "closed-form mixed-state measures need 2 qubits, got {}",
            rho.num_qubits()
        )))
    }
}

/// `sigma_y ⊗ sigma_y` in the computational basis.
fn spin_flip<T: Scalar>() -> ComplexMatrix<T> {
    let (one, zero) = (Complex::new(T::one(), T::zero()), Complex::zero());
    let m = -one;
    ComplexMatrix::from_entries(
        4,
        vec![
            zero, zero, zero, m, //
            zero, zero, one, zero, //
            zero, one, zero, zero, //
            m, zero, zero, zero,
        ],
    )
    .expect("4x4")
}

/// Spectral weights at or below this multiple of machine epsilon are
/// round-off and are dropped before factoring a density matrix.
const NEGLIGIBLE_WEIGHT_ULPS: f64 = 64.0;

/// `max(0, mu1 - mu2 - mu3 - mu4)` where the `mu` are the descending square
/// roots of the eigenvalues of `rho (Y⊗Y) rho* (Y⊗Y)`.
///
/// The `mu` are computed as the singular values of `Ψ^T (Y⊗Y) Ψ` for a factor
/// `rho = Ψ Ψ^H` taken from the spectral decomposition, which avoids taking
/// square roots of round-off sized eigenvalues.
pub fn concurrence_two_qubit_mixed<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    require_two_qubits(rho)?;
    let eig = linalg::hermitian_eigen(rho.matrix())?;
    let cutoff = T::epsilon() * T::lit(NEGLIGIBLE_WEIGHT_ULPS);
    let kept: Vec<usize> = (0..4).filter(|&k| eig.values[k] > cutoff).collect();
    let rows: Vec<Vec<Complex<T>>> = (0..4)
        .map(|i| {
            kept.iter()
                .map(|&k| eig.vectors[(i, k)].scale(eig.values[k].sqrt()))
                .collect()
        })
        .collect();
    Ok(concurrence_from_factor(&rows))
}

/// Two-qubit concurrence of `Ψ Ψ^H`, where `rows` are the four rows of `Ψ`.
pub(crate) fn concurrence_from_factor<T: Scalar>(rows: &[Vec<Complex<T>>]) -> T {
    debug_assert_eq!(rows.len(), 4);
    if rows[0].is_empty() {
        return T::zero();
    }
    // Ψ^H = U Σ V^H, so the singular values of Ψ^T (Y⊗Y) Ψ are those of
    // Σ V^T (Y⊗Y) V Σ.
    let mut cols: Vec<Vec<Complex<T>>> = rows.iter().map(|r| r.iter().map(|z| z.conj()).collect()).collect();
    let v = linalg::orthogonalize_columns(&mut cols);
    let sigma: Vec<T> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt())
        .collect();
    let yy = spin_flip::<T>();
    let yv = yy.matmul(&v);
    let core: Vec<Vec<Complex<T>>> = (0..4)
        .map(|s| {
            (0..4)
                .map(|r| {
                    let vt_yy_v = (0..4).fold(Complex::zero(), |acc, i| acc + v[(i, r)] * yv[(i, s)]);
                    vt_yy_v.scale(sigma[r] * sigma[s])
                })
                .collect()
        })
        .collect();
    let mu = linalg::singular_values(&core);
    (mu[0] - mu[1] - mu[2] - mu[3]).max(T::zero())
}

/// `-p log2 p - (1-p) log2 (1-p)`, zero at both ends.
pub fn binary_entropy<T: Scalar>(p: T) -> Result<T> {
    let tol = T::structural_tol();
    if !(p >= -tol && p <= T::one() + tol) {
        return Err(Error::OutOfDomain {
            what: "binary entropy argument",
            value: p.as_f64(),
        });
    }
    let p = linalg::clamp_probability(p);
    Ok(xlog2x(p) + xlog2x(T::one() - p))
}

/// `-x log2 x` with the continuous extension at 0.
#[inline]
fn xlog2x<T: Scalar>(x: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else {
        -x * x.log2()
    }
}

/// `H((1 + sqrt(1 - x)) / 2)`: entanglement of formation as a function of
/// squared concurrence.
pub fn f_of<T: Scalar>(x: T) -> Result<T> {
    let tol = T::structural_tol();
    if !(x >= -tol && x <= T::one() + tol) {
        return Err(Error::OutOfDomain {
            what: "squared concurrence",
            value: x.as_f64(),
        });
    }
    let x = linalg::clamp_probability(x);
    binary_entropy((T::one() + (T::one() - x).sqrt()) / T::lit(2.0))
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    Ok(rho.spectrum()?.into_iter().map(xlog2x).sum())
}

/// Entropy of entanglement `S(rho_A)` across `cut`.
pub fn eof_pure<T: Scalar>(psi: &PureState<T>, cut: &Bipartition) -> Result<T> {
    cut.check(psi)?;
    von_neumann_entropy(&psi.reduced(cut.smaller_side())?)
}

pub fn eof_two_qubit_mixed<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    let c = concurrence_two_qubit_mixed(rho)?;
    f_of(c * c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoofMeasure {
    Concurrence,
    EntanglementOfFormation,
}

impl RoofMeasure {
    fn pure<T: Scalar>(self, psi: &PureState<T>, cut: &Bipartition) -> Result<T> {
        match self {
            RoofMeasure::Concurrence => concurrence_pure(psi, cut),
            RoofMeasure::EntanglementOfFormation => eof_pure(psi, cut),
        }
    }
}

/// Rank below which a spectral component is dropped from decompositions.
const RANK_CUTOFF: f64 = 1e-13;

/// Smallest decomposition-averaged pure-state measure over `trials` sampled
/// decompositions of `rho`: the spectral one, then mixtures of it through
/// Haar unitaries with `rank`, `rank + 1` and `rank + 2` outputs in turn.
/// Every candidate is a valid decomposition, so the result bounds the convex
/// roof from above.
pub fn convex_roof_sample<T: Scalar, S: AsRef<str>, R: Rng + ?Sized>(
    rho: &DensityMatrix<T>,
    side_a: &[S],
    measure: RoofMeasure,
    trials: usize,
    rng: &mut R,
) -> Result<T> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    let cut = Bipartition::new(rho.register(), side_a)?;
    let eig = linalg::hermitian_eigen(rho.matrix())?;
    let dim = rho.matrix().dim();
    let weighted: Vec<Vec<Complex<T>>> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > T::lit(RANK_CUTOFF))
        .map(|(k, &l)| eig.vector(k).into_iter().map(|z| z.scale(l.sqrt())).collect())
        .collect();
    let rank = weighted.len();

    let average = |mixing: &ComplexMatrix<T>| -> Result<T> {
        let mut total = T::zero();
        for j in 0..mixing.dim() {
            let mut w = vec![Complex::zero(); dim];
            for (i, v) in weighted.iter().enumerate() {
                let u = mixing[(j, i)];
                for (wk, vk) in w.iter_mut().zip(v) {
                    *wk = *wk + u * vk;
                }
            }
            let p: T = w.iter().map(|z| z.norm_sqr()).sum();
            if p <= T::lit(RANK_CUTOFF) * T::lit(1e-3) {
                continue;
            }
            let psi = PureState::normalized(w, rho.register().clone())?;
            total = total + p * measure.pure(&psi, &cut)?;
        }
        Ok(total)
    };

    let mut best = average(&ComplexMatrix::identity(rank))?;
    for trial in 1..trials {
        let k = rank + (trial - 1) % 3;
        let u = haar_unitary::<T, R>(k, rng);
        best = best.min(average(&u)?);
    }
    Ok(best)
}

/// Seeded convex-roof upper bound for a two-qubit state.
pub fn convex_roof_upper_bound<T: Scalar>(
    rho: &DensityMatrix<T>,
    measure: RoofMeasure,
    trials: usize,
    seed: u64,
) -> Result<T> {
    require_two_qubits(rho)?;
    let first = rho.register().labels()[0].clone();
    convex_roof_sample(rho, &[first], measure, trials, &mut SeededSampler::new(seed).rng())
}
