//! Pure and mixed qubit states, the named states used throughout the crate,
//! and seeded samplers for fuzzing.

use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::linalg::{self, ComplexMatrix, QubitRegister, MAX_QUBITS};
use crate::{Error, Result, Scalar};

/// Normalized amplitude vector over a labeled register.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState<T> {
    amplitudes: Vec<Complex<T>>,
    register: QubitRegister,
}

impl<T: Scalar> PureState<T> {
    pub fn new(amplitudes: Vec<Complex<T>>, register: QubitRegister) -> Result<Self> {
        if amplitudes.len() != register.dim() {
            return Err(Error::DimensionMismatch {
                expected: register.dim(),
                found: amplitudes.len(),
            });
        }
        let norm = norm(&amplitudes);
        if !((norm - T::one()).abs() <= T::structural_tol()) {
            return Err(Error::NotNormalized { norm: norm.as_f64() });
        }
        Ok(Self { amplitudes, register })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex<T>>, register: QubitRegister) -> Result<Self> {
        let norm = norm(&amplitudes);
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::NotNormalized { norm: norm.as_f64() });
        }
        for a in &mut amplitudes {
            *a = a.unscale(norm);
        }
        Self::new(amplitudes, register)
    }

    /// Same state on the default `A, B, C, ...` register.
    pub fn from_amplitudes(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let n = qubits_for_dim(amplitudes.len())?;
        Self::new(amplitudes, QubitRegister::with_default_labels(n)?)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let register = QubitRegister::with_default_labels(num_qubits)?;
        if index >= register.dim() {
            return Err(Error::InvalidParams(format!("basis index {index} out of range")));
        }
        let mut amplitudes = vec![Complex::zero(); register.dim()];
        amplitudes[index] = Complex::new(T::one(), T::zero());
        Self::new(amplitudes, register)
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn register(&self) -> &QubitRegister {
        &self.register
    }

    pub fn num_qubits(&self) -> usize {
        self.register.num_qubits()
    }

    pub fn norm(&self) -> T {
        norm(&self.amplitudes)
    }

    pub fn with_register(self, register: QubitRegister) -> Result<Self> {
        Self::new(self.amplitudes, register)
    }

    /// Tensor product `self ⊗ other`, with labels concatenated.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let labels = self.register.labels().iter().chain(other.register.labels()).cloned();
        let register = QubitRegister::new(labels)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|&a| other.amplitudes.iter().map(move |&b| a * b))
            .collect();
        Self::new(amplitudes, register)
    }

    pub fn density_matrix(&self) -> DensityMatrix<T> {
        DensityMatrix {
            matrix: ComplexMatrix::outer(&self.amplitudes),
            register: self.register.clone(),
        }
    }

    /// Reduced state on `keep` (labels); the rest is traced out.
    pub fn reduced<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityMatrix<T>> {
        let (matrix, register) = linalg::partial_trace_pure(&self.amplitudes, &self.register, keep)?;
        Ok(DensityMatrix { matrix, register })
    }
}

fn norm<T: Scalar>(amplitudes: &[Complex<T>]) -> T {
    amplitudes.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::InvalidParams(format!("dimension {dim} is not a power of two")));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Hermitian, positive semidefinite, unit-trace matrix over a labeled register.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: ComplexMatrix<T>,
    register: QubitRegister,
}

impl<T: Scalar> DensityMatrix<T> {
    pub fn new(matrix: ComplexMatrix<T>, register: QubitRegister) -> Result<Self> {
        if matrix.dim() != register.dim() {
            return Err(Error::DimensionMismatch {
                expected: register.dim(),
                found: matrix.dim(),
            });
        }
        let tol = T::structural_tol();
        let trace = matrix.trace();
        if !((trace.re - T::one()).abs() <= tol && trace.im.abs() <= tol) {
            return Err(Error::InvalidDensityMatrix(format!("trace is {trace}")));
        }
        let eigenvalues = linalg::hermitian_eigenvalues(&matrix)?;
        let smallest = *eigenvalues.last().expect("non-empty");
        if !(smallest >= -tol) {
            return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {smallest}")));
        }
        Ok(Self { matrix, register })
    }

    pub fn from_matrix(matrix: ComplexMatrix<T>) -> Result<Self> {
        let n = qubits_for_dim(matrix.dim())?;
        Self::new(matrix, QubitRegister::with_default_labels(n)?)
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(num_qubits: usize) -> Result<Self> {
        let register = QubitRegister::with_default_labels(num_qubits)?;
        let d = register.dim();
        let matrix = ComplexMatrix::identity(d).scale(Complex::new(T::one() / T::lit(d as f64), T::zero()));
        Ok(Self { matrix, register })
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn register(&self) -> &QubitRegister {
        &self.register
    }

    pub fn num_qubits(&self) -> usize {
        self.register.num_qubits()
    }

    /// Descending eigenvalues clamped into `[0, 1]`.
    pub fn spectrum(&self) -> Result<Vec<T>> {
        Ok(linalg::hermitian_eigenvalues(&self.matrix)?
            .into_iter()
            .map(linalg::clamp_probability)
            .collect())
    }

    pub fn purity(&self) -> T {
        // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
        self.matrix.entries().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn partial_trace<S: AsRef<str>>(&self, keep: &[S]) -> Result<Self> {
        let (matrix, register) = linalg::partial_trace(&self.matrix, &self.register, keep)?;
        Ok(Self { matrix, register })
    }

    /// The pure state this matrix projects onto, if it has rank one.
    pub fn as_pure(&self) -> Result<Option<PureState<T>>> {
        if (self.purity() - T::one()).abs() > T::structural_tol() {
            return Ok(None);
        }
        let eig = linalg::hermitian_eigen(&self.matrix)?;
        let v = eig.vector(0);
        // fix the global phase so the largest amplitude is real and positive
        let lead = v.iter().copied().fold(
            Complex::zero(),
            |best: Complex<T>, z| if z.norm() > best.norm() { z } else { best },
        );
        let phase = lead.conj().unscale(lead.norm());
        let v = v.into_iter().map(|z| z * phase).collect();
        PureState::normalized(v, self.register.clone()).map(Some)
    }
}

/// `lambda` and `phi` of
/// `l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchmidtParams<T> {
    pub lambda: [T; 5],
    pub phi: T,
}

impl<T: Scalar> SchmidtParams<T> {
    pub fn new(lambda: [T; 5], phi: T) -> Result<Self> {
        if lambda.iter().any(|&l| !(l >= T::zero())) {
            return Err(Error::InvalidParams("Schmidt coefficients must be nonnegative".into()));
        }
        let total: T = lambda.iter().map(|&l| l * l).sum();
        if !((total - T::one()).abs() <= T::structural_tol()) {
            return Err(Error::NotNormalized {
                norm: total.sqrt().as_f64(),
            });
        }
        Ok(Self { lambda, phi })
    }

    /// All five coefficients equal to `1/sqrt(5)`, no phase.
    pub fn uniform() -> Self {
        let l = T::one() / T::lit(5.0).sqrt();
        Self {
            lambda: [l; 5],
            phi: T::zero(),
        }
    }
}

/// Three-qubit state in generalized Schmidt form on registers `A, B, C`.
pub fn generalized_schmidt<T: Scalar>(params: &SchmidtParams<T>) -> Result<PureState<T>> {
    let p = SchmidtParams::new(params.lambda, params.phi)?;
    let [l0, l1, l2, l3, l4] = p.lambda;
    let re = |x: T| Complex::new(x, T::zero());
    let mut amplitudes = vec![Complex::zero(); 8];
    amplitudes[0b000] = re(l0);
    amplitudes[0b100] = Complex::from_polar(l1, p.phi);
    amplitudes[0b101] = re(l2);
    amplitudes[0b110] = re(l3);
    amplitudes[0b111] = re(l4);
    PureState::normalized(amplitudes, QubitRegister::with_default_labels(3)?)
}

/// Uniform superposition of the `n` weight-one basis states.
pub fn w_state<T: Scalar>(n: usize) -> Result<PureState<T>> {
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "W state needs at least 2 qubits, got {n}"
        )));
    }
    let register = QubitRegister::with_default_labels(n)?;
    let a = Complex::new(T::one() / T::lit(n as f64).sqrt(), T::zero());
    let mut amplitudes = vec![Complex::zero(); register.dim()];
    for q in 0..n {
        amplitudes[1 << q] = a;
    }
    PureState::new(amplitudes, register)
}

/// `(|0...0> + |1...1>) / sqrt(2)`
pub fn ghz_state<T: Scalar>(n: usize) -> Result<PureState<T>> {
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "GHZ state needs at least 2 qubits, got {n}"
        )));
    }
    let register = QubitRegister::with_default_labels(n)?;
    let a = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    let mut amplitudes = vec![Complex::zero(); register.dim()];
    amplitudes[0] = a;
    amplitudes[register.dim() - 1] = a;
    PureState::new(amplitudes, register)
}

/// `(|00> + |11>) / sqrt(2)`
pub fn bell_phi_plus<T: Scalar>() -> PureState<T> {
    ghz_state(2).expect("two qubits")
}

pub const SAMPLER_ALGORITHM: &str = "chacha8/rand_distr-0.5-standard-normal";

/// Seed plus the name of the generator it feeds. Equal samplers produce
/// equal streams.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeededSampler {
    pub seed: u64,
    pub algorithm_id: String,
}

impl SeededSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            algorithm_id: SAMPLER_ALGORITHM.to_string(),
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// Independent sampler for item `index` of a stream rooted at this seed.
    pub fn derive(&self, index: u64) -> Self {
        Self {
            seed: mix_seed(self.seed, index),
            algorithm_id: self.algorithm_id.clone(),
        }
    }
}

/// SplitMix64 finalizer over `seed + index * golden`.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn complex_gaussian<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

pub fn haar_random_pure_with<T: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PureState<T>> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(Error::InvalidParams(format!(
            "qubit count {n} outside 2..={MAX_QUBITS}"
        )));
    }
    let register = QubitRegister::with_default_labels(n)?;
    loop {
        let v: Vec<Complex<T>> = (0..register.dim()).map(|_| complex_gaussian(rng)).collect();
        if norm(&v) > T::zero() {
            return PureState::normalized(v, register);
        }
    }
}

/// Normalized complex Gaussian vector: distributed by the unitarily
/// invariant measure, deterministic per seed.
pub fn haar_random_pure<T: Scalar>(n: usize, sampler: &SeededSampler) -> Result<PureState<T>> {
    haar_random_pure_with(n, &mut sampler.rng())
}

/// Reduction of a Haar-random state on `n + ancilla` qubits to the first `n`.
pub fn random_mixed<T: Scalar>(n: usize, ancilla: usize, sampler: &SeededSampler) -> Result<DensityMatrix<T>> {
    if n == 0 || n + ancilla > MAX_QUBITS || n + ancilla < 2 {
        return Err(Error::InvalidParams(format!(
            "n = {n}, ancilla = {ancilla} is outside the supported register size"
        )));
    }
    let psi = haar_random_pure::<T>(n + ancilla, sampler)?;
    if ancilla == 0 {
        return Ok(psi.density_matrix());
    }
    let keep: Vec<String> = psi.register().labels()[..n].to_vec();
    psi.reduced(&keep)
}

/// Haar-random `k x k` unitary: Gram-Schmidt on a complex Ginibre matrix,
/// which leaves a positive diagonal in the implied `R` factor.
pub fn haar_unitary<T: Scalar, R: Rng + ?Sized>(k: usize, rng: &mut R) -> ComplexMatrix<T> {
    loop {
        let mut cols: Vec<Vec<Complex<T>>> = (0..k)
            .map(|_| (0..k).map(|_| complex_gaussian(rng)).collect())
            .collect();
        let mut ok = true;
        for j in 0..k {
            for i in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let proj: Complex<T> = done[i].iter().zip(&rest[0]).map(|(q, g)| q.conj() * g).sum();
                for (g, q) in rest[0].iter_mut().zip(&done[i]) {
                    *g = *g - proj * q;
                }
            }
            let n = norm(&cols[j]);
            if !(n > T::lit(1e-8)) {
                ok = false;
                break;
            }
            for z in &mut cols[j] {
                *z = z.unscale(n);
            }
        }
        if ok {
            return ComplexMatrix::from_fn(k, |i, j| cols[j][i]);
        }
    }
}
