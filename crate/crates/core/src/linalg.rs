//! Dense complex linear algebra sized for qubit registers of at most
//! [`MAX_QUBITS`] qubits.

use std::collections::HashSet;
use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::{Error, Result, Scalar};

/// Largest register handled anywhere in the crate (4096-dimensional).
pub const MAX_QUBITS: usize = 12;

/// Maximum number of cyclic Jacobi sweeps before giving up on convergence.
const MAX_SWEEPS: usize = 64;

/// Square complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_entries(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(d, T::zero());
        }
        m
    }

    /// `|v><v|`
    pub fn outer(v: &[Complex<T>]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex<T>> {
        self.entries
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).map(|i| self[(i, i)]).fold(Complex::zero(), |a, b| a + b)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        Self {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| a + b).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] = out.entries[i * n + j] + a * other.entries[k * n + j];
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        Self::from_fn(n * m, |i, j| self[(i / m, j / m)] * other[(i % m, j % m)])
    }

    pub fn max_abs(&self) -> T {
        self.entries.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// `max |m_ij - conj(m_ji)|`, relative to the largest absolute entry.
    pub fn hermitian_deviation(&self) -> T {
        let scale = self.max_abs();
        if scale.is_zero() {
            return T::zero();
        }
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst / scale
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermitian_deviation() <= tol
    }

    fn symmetrized(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()).scale(half))
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.entries[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.entries[i * self.dim + j]
    }
}

/// Ordered, labeled tensor factors of a qubit register. Position 0 is the
/// most significant bit of a basis index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QubitRegister {
    labels: Vec<String>,
}

impl QubitRegister {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidLabels("register needs at least one qubit".into()));
        }
        if labels.len() > MAX_QUBITS {
            return Err(Error::TooManyQubits(labels.len()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() || l.contains(['|', ',']) || l.chars().any(char::is_whitespace) {
                return Err(Error::InvalidLabels(format!("label {l:?} is not allowed")));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidLabels(format!("duplicate label {l:?}")));
            }
        }
        Ok(Self { labels })
    }

    /// Register labelled `A`, `B`, `C`, ...
    pub fn with_default_labels(num_qubits: usize) -> Result<Self> {
        if num_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(num_qubits));
        }
        Self::new((0..num_qubits).map(|i| char::from(b'A' + i as u8).to_string()))
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Positions of `keep` in register order. Errors on unknown or repeated
    /// labels, and on empty or full keep sets.
    pub fn keep_positions<S: AsRef<str>>(&self, keep: &[S]) -> Result<Vec<usize>> {
        if keep.is_empty() {
            return Err(Error::InvalidKeepSet("keep set is empty".into()));
        }
        let mut positions = Vec::with_capacity(keep.len());
        for label in keep {
            let label = label.as_ref();
            let pos = self
                .position(label)
                .ok_or_else(|| Error::InvalidKeepSet(format!("unknown label {label:?}")))?;
            if positions.contains(&pos) {
                return Err(Error::InvalidKeepSet(format!("label {label:?} repeated")));
            }
            positions.push(pos);
        }
        if positions.len() == self.num_qubits() {
            return Err(Error::InvalidKeepSet("keep set covers the whole register".into()));
        }
        positions.sort_unstable();
        Ok(positions)
    }

    pub fn subregister(&self, positions: &[usize]) -> Self {
        Self {
            labels: positions.iter().map(|&p| self.labels[p].clone()).collect(),
        }
    }
}

/// For every (kept, traced) index pair, the full basis index. Kept and traced
/// sub-indices are both MSB-first in register order.
fn split_indices(num_qubits: usize, kept: &[usize]) -> (usize, usize, Vec<usize>) {
    let traced: Vec<usize> = (0..num_qubits).filter(|q| !kept.contains(q)).collect();
    let (dk, dt) = (1usize << kept.len(), 1usize << traced.len());
    let bit = |q: usize| 1usize << (num_qubits - 1 - q);
    let mut table = vec![0usize; dk * dt];
    for k in 0..dk {
        let mut base = 0;
        for (pos, &q) in kept.iter().enumerate() {
            if k & (1 << (kept.len() - 1 - pos)) != 0 {
                base |= bit(q);
            }
        }
        for t in 0..dt {
            let mut full = base;
            for (pos, &q) in traced.iter().enumerate() {
                if t & (1 << (traced.len() - 1 - pos)) != 0 {
                    full |= bit(q);
                }
            }
            table[k * dt + t] = full;
        }
    }
    (dk, dt, table)
}

/// Traces out every qubit not in `keep`. The reduced register lists the kept
/// qubits in their original order, regardless of the order of `keep`.
pub fn partial_trace<T: Scalar, S: AsRef<str>>(
    rho: &ComplexMatrix<T>,
    register: &QubitRegister,
    keep: &[S],
) -> Result<(ComplexMatrix<T>, QubitRegister)> {
    if rho.dim() != register.dim() {
        return Err(Error::DimensionMismatch {
            expected: register.dim(),
            found: rho.dim(),
        });
    }
    let kept = register.keep_positions(keep)?;
    let (dk, dt, table) = split_indices(register.num_qubits(), &kept);
    let reduced = ComplexMatrix::from_fn(dk, |i, j| {
        (0..dt)
            .map(|t| rho[(table[i * dt + t], table[j * dt + t])])
            .fold(Complex::zero(), |a, b| a + b)
    });
    Ok((reduced, register.subregister(&kept)))
}

/// Reduced density matrix of the pure state `amplitudes` on `keep`, without
/// forming the full projector.
pub fn partial_trace_pure<T: Scalar, S: AsRef<str>>(
    amplitudes: &[Complex<T>],
    register: &QubitRegister,
    keep: &[S],
) -> Result<(ComplexMatrix<T>, QubitRegister)> {
    if amplitudes.len() != register.dim() {
        return Err(Error::DimensionMismatch {
            expected: register.dim(),
            found: amplitudes.len(),
        });
    }
    let kept = register.keep_positions(keep)?;
    let (dk, dt, table) = split_indices(register.num_qubits(), &kept);
    let mut reduced = ComplexMatrix::zeros(dk);
    for i in 0..dk {
        for j in i..dk {
            let v = (0..dt)
                .map(|t| amplitudes[table[i * dt + t]] * amplitudes[table[j * dt + t]].conj())
                .fold(Complex::zero(), |a, b| a + b);
            reduced[(i, j)] = v;
            reduced[(j, i)] = v.conj();
        }
    }
    Ok((reduced, register.subregister(&kept)))
}

/// Rows of `amplitudes` reshaped to `keep ⊗ rest`: row `i` holds the
/// amplitudes whose kept qubits read `i`, so the reduced state is `Ψ Ψ^H`.
pub fn pure_factor<T: Scalar, S: AsRef<str>>(
    amplitudes: &[Complex<T>],
    register: &QubitRegister,
    keep: &[S],
) -> Result<(Vec<Vec<Complex<T>>>, QubitRegister)> {
    if amplitudes.len() != register.dim() {
        return Err(Error::DimensionMismatch {
            expected: register.dim(),
            found: amplitudes.len(),
        });
    }
    let kept = register.keep_positions(keep)?;
    let (dk, dt, table) = split_indices(register.num_qubits(), &kept);
    let rows = (0..dk)
        .map(|i| (0..dt).map(|t| amplitudes[table[i * dt + t]]).collect())
        .collect();
    Ok((rows, register.subregister(&kept)))
}

/// One-sided (Hestenes) Jacobi: rotates the columns of `cols` in place until
/// they are mutually orthogonal and returns the accumulated unitary `V`, so
/// that `A V` has orthogonal columns. The column norms are then the singular
/// values of `A`, each accurate to `eps * |A|` even when tiny.
pub fn orthogonalize_columns<T: Scalar>(cols: &mut [Vec<Complex<T>>]) -> ComplexMatrix<T> {
    let k = cols.len();
    let mut v = ComplexMatrix::<T>::identity(k);
    let tol = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in (p + 1)..k {
                let alpha: T = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: T = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = cols[p]
                    .iter()
                    .zip(&cols[q])
                    .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b);
                let g = gamma.norm();
                if g <= tol * (alpha * beta).sqrt() || g <= T::min_positive_value() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (T::lit(2.0) * g);
                let t = zeta.signum() / (zeta.abs() + (zeta * zeta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = c * t;
                // columns (p, q) <- (c a_p - s e^{-i phi} a_q, s a_p + c e^{-i phi} a_q)
                let back = phase.conj();
                for row in 0..cols[p].len() {
                    let (ap, aq) = (cols[p][row], cols[q][row] * back);
                    cols[p][row] = ap.scale(c) - aq.scale(s);
                    cols[q][row] = ap.scale(s) + aq.scale(c);
                }
                for row in 0..k {
                    let (vp, vq) = (v[(row, p)], v[(row, q)] * back);
                    v[(row, p)] = vp.scale(c) - vq.scale(s);
                    v[(row, q)] = vp.scale(s) + vq.scale(c);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    v
}

/// Singular values of the matrix with columns `cols`, descending.
pub fn singular_values<T: Scalar>(cols: &[Vec<Complex<T>>]) -> Vec<T> {
    let mut work = cols.to_vec();
    orthogonalize_columns(&mut work);
    let mut values: Vec<T> = work
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt())
        .collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    values
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    /// Descending.
    pub values: Vec<T>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: ComplexMatrix<T>,
}

impl<T: Scalar> HermitianEigen<T> {
    pub fn vector(&self, k: usize) -> Vec<Complex<T>> {
        (0..self.vectors.dim()).map(|i| self.vectors[(i, k)]).collect()
    }
}

/// Cyclic complex Jacobi. Input must be Hermitian to within
/// `Scalar::structural_tol()` relative to its largest entry.
pub fn hermitian_eigen<T: Scalar>(m: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    let deviation = m.hermitian_deviation();
    if !(deviation <= T::structural_tol()) {
        return Err(Error::NotHermitian {
            deviation: deviation.as_f64(),
        });
    }
    let n = m.dim();
    let mut a = m.symmetrized();
    let mut v = ComplexMatrix::<T>::identity(n);
    let frob2: T = a.entries.iter().map(|z| z.norm_sqr()).sum();
    let target = T::epsilon() * T::epsilon() * frob2;

    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + a[(p, q)].norm_sqr();
            }
        }
        if off <= target || off.is_zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

/// Annihilates `a[p][q]` with the unitary `G = diag(1, e^{-i theta}) R`,
/// where `R` is the real Jacobi rotation; `a <- G^H a G`, `v <- v G`.
fn rotate<T: Scalar>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r <= T::min_positive_value() {
        return;
    }
    let phase = apq / r; // e^{i theta}
    let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
    let two = T::lit(2.0);
    let theta = (aqq - app) / (two * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    let gpp = Complex::new(c, T::zero());
    let gpq = Complex::new(s, T::zero());
    let gqp = phase.conj().scale(-s);
    let gqq = phase.conj().scale(c);

    let n = a.dim();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * gpp + akq * gqp;
        a[(k, q)] = akp * gpq + akq * gqq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * gpp + vkq * gqp;
        v[(k, q)] = vkp * gpq + vkq * gqq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
}

/// Real eigenvalues in descending order.
pub fn hermitian_eigenvalues<T: Scalar>(m: &ComplexMatrix<T>) -> Result<Vec<T>> {
    hermitian_eigen(m).map(|e| e.values)
}

/// Principal square root of a positive semidefinite Hermitian matrix; tiny
/// negative eigenvalues are clamped to zero.
pub fn psd_sqrt<T: Scalar>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let eig = hermitian_eigen(m)?;
    let roots: Vec<T> = eig.values.iter().map(|&l| l.max(T::zero()).sqrt()).collect();
    let n = m.dim();
    Ok(ComplexMatrix::from_fn(n, |i, j| {
        (0..n)
            .map(|k| eig.vectors[(i, k)] * eig.vectors[(j, k)].conj() * roots[k])
            .fold(Complex::zero(), |a, b| a + b)
    }))
}

/// Clamps an eigenvalue consumed as a probability into `[0, 1]`.
#[inline]
pub fn clamp_probability<T: Scalar>(x: T) -> T {
    x.max(T::zero()).min(T::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn basis(n: usize, index: usize) -> Vec<Complex<f64>> {
        let mut v = vec![c(0.0, 0.0); 1 << n];
        v[index] = c(1.0, 0.0);
        v
    }

    fn close(a: &ComplexMatrix<f64>, b: &ComplexMatrix<f64>, tol: f64) -> bool {
        a.dim() == b.dim() && a.entries().iter().zip(b.entries()).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn product_state_reduces_to_ket_zero() {
        let reg = QubitRegister::with_default_labels(2).unwrap();
        let rho = ComplexMatrix::outer(&basis(2, 0));
        let (red, sub) = partial_trace(&rho, &reg, &["A"]).unwrap();
        assert_eq!(sub.labels(), ["A"]);
        assert!(close(&red, &ComplexMatrix::from_diagonal(&[1.0, 0.0]), 1e-15));
    }

    #[test]
    fn bell_state_reduces_to_maximally_mixed() {
        let reg = QubitRegister::with_default_labels(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)];
        let (red, _) = partial_trace(&ComplexMatrix::outer(&bell), &reg, &["A"]).unwrap();
        assert!(close(&red, &ComplexMatrix::from_diagonal(&[0.5, 0.5]), 1e-15));
    }

    #[test]
    fn w_state_reduction_on_first_qubit() {
        let reg = QubitRegister::with_default_labels(3).unwrap();
        let a = 1.0 / 3f64.sqrt();
        let mut w = vec![c(0.0, 0.0); 8];
        for i in [4, 2, 1] {
            w[i] = c(a, 0.0);
        }
        let expected = ComplexMatrix::from_diagonal(&[2.0 / 3.0, 1.0 / 3.0]);
        let (red, _) = partial_trace(&ComplexMatrix::outer(&w), &reg, &["A"]).unwrap();
        assert!(close(&red, &expected, 1e-15));
        let (red_pure, _) = partial_trace_pure(&w, &reg, &["A"]).unwrap();
        assert!(close(&red_pure, &expected, 1e-15));
    }

    #[test]
    fn msb_first_ordering() {
        // |10> on (A, B): A is excited, B is not.
        let reg = QubitRegister::with_default_labels(2).unwrap();
        let rho = ComplexMatrix::outer(&basis(2, 2));
        let (a, _) = partial_trace(&rho, &reg, &["A"]).unwrap();
        let (b, _) = partial_trace(&rho, &reg, &["B"]).unwrap();
        assert!(close(&a, &ComplexMatrix::from_diagonal(&[0.0, 1.0]), 0.0));
        assert!(close(&b, &ComplexMatrix::from_diagonal(&[1.0, 0.0]), 0.0));
    }

    #[test]
    fn keep_order_does_not_permute_output() {
        let reg = QubitRegister::with_default_labels(3).unwrap();
        let rho = ComplexMatrix::outer(&basis(3, 0b110));
        let (r1, s1) = partial_trace(&rho, &reg, &["C", "A"]).unwrap();
        let (r2, s2) = partial_trace(&rho, &reg, &["A", "C"]).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(r1, r2);
        // kept (A, C) = (1, 0) -> index 2
        assert_eq!(r1[(2, 2)], c(1.0, 0.0));
    }

    #[test]
    fn partial_trace_errors() {
        let reg = QubitRegister::with_default_labels(2).unwrap();
        let rho = ComplexMatrix::<f64>::identity(4);
        let empty: [&str; 0] = [];
        assert!(matches!(
            partial_trace(&rho, &reg, &empty),
            Err(Error::InvalidKeepSet(_))
        ));
        assert!(matches!(
            partial_trace(&rho, &reg, &["A", "B"]),
            Err(Error::InvalidKeepSet(_))
        ));
        assert!(matches!(
            partial_trace(&rho, &reg, &["Z"]),
            Err(Error::InvalidKeepSet(_))
        ));
        let small = ComplexMatrix::<f64>::identity(2);
        assert!(matches!(
            partial_trace(&small, &reg, &["A"]),
            Err(Error::DimensionMismatch { expected: 4, found: 2 })
        ));
    }

    #[test]
    fn register_validation() {
        assert!(QubitRegister::new(["A", "A"]).is_err());
        assert!(QubitRegister::new(Vec::<String>::new()).is_err());
        assert!(matches!(
            QubitRegister::with_default_labels(13),
            Err(Error::TooManyQubits(13))
        ));
        assert_eq!(QubitRegister::with_default_labels(12).unwrap().dim(), 4096);
    }

    #[test]
    fn eigenvalues_of_known_matrices() {
        let id = ComplexMatrix::<f64>::identity(2);
        assert_eq!(hermitian_eigenvalues(&id).unwrap(), vec![1.0, 1.0]);

        let d = ComplexMatrix::<f64>::from_diagonal(&[1.0 / 3.0, 2.0 / 3.0]);
        let ev = hermitian_eigenvalues(&d).unwrap();
        assert!((ev[0] - 2.0 / 3.0).abs() < 1e-15 && (ev[1] - 1.0 / 3.0).abs() < 1e-15);

        let x = ComplexMatrix::from_entries(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let ev = hermitian_eigenvalues(&x).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] + 1.0).abs() < 1e-14);

        let y = ComplexMatrix::from_entries(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap();
        let ev = hermitian_eigenvalues(&y).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvectors_reconstruct_matrix() {
        let m = ComplexMatrix::from_fn(5, |i, j| {
            let (a, b) = (i.min(j) as f64, i.max(j) as f64);
            let im = if i < j {
                0.3 * (a + 1.0)
            } else if i > j {
                -0.3 * (a + 1.0)
            } else {
                0.0
            };
            c(1.0 / (1.0 + a + b), im)
        });
        let eig = hermitian_eigen(&m).unwrap();
        let n = m.dim();
        let rebuilt = ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| eig.vectors[(i, k)] * eig.vectors[(j, k)].conj() * eig.values[k])
                .sum()
        });
        assert!(close(&rebuilt, &m, 1e-13));
        assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_entries(2, vec![c(1., 0.), c(1., 0.), c(0., 0.), c(1., 0.)]).unwrap();
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn works_in_single_precision() {
        let x = ComplexMatrix::<f32>::from_entries(
            2,
            vec![
                Complex::new(0.0, 0.0),
                Complex::new(1.0, 0.0),
                Complex::new(1.0, 0.0),
                Complex::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let ev = hermitian_eigenvalues(&x).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-6 && (ev[1] + 1.0).abs() < 1e-6);
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let m = ComplexMatrix::from_entries(2, vec![c(0.6, 0.), c(0.1, 0.2), c(0.1, -0.2), c(0.4, 0.)]).unwrap();
        let r = psd_sqrt(&m).unwrap();
        assert!(close(&r.matmul(&r), &m, 1e-14));
    }

    #[test]
    fn singular_values_of_known_matrices() {
        // columns of diag(3, 4) rotated by a unitary
        let cols = vec![vec![c(0., 3.), c(0., 0.)], vec![c(0., 0.), c(-4., 0.)]];
        assert_eq!(singular_values(&cols), vec![4.0, 3.0]);
        // rank one: [[1, 2], [2, 4]] has singular values 5 and 0
        let cols = vec![vec![c(1., 0.), c(2., 0.)], vec![c(2., 0.), c(4., 0.)]];
        let sv = singular_values(&cols);
        assert!((sv[0] - 5.0).abs() < 1e-14);
        assert!(sv[1] < 1e-15);
    }

    #[test]
    fn orthogonalized_columns_match_v() {
        let a = vec![
            vec![c(0.3, 0.1), c(-0.2, 0.5), c(0.7, 0.0)],
            vec![c(0.1, -0.4), c(0.6, 0.2), c(0.0, 0.3)],
            vec![c(-0.5, 0.0), c(0.2, 0.2), c(0.1, -0.1)],
        ];
        let mut work = a.clone();
        let v = orthogonalize_columns(&mut work);
        for j in 0..3 {
            for row in 0..3 {
                let av = (0..3).fold(Complex::zero(), |acc: Complex<f64>, k| acc + a[k][row] * v[(k, j)]);
                assert!((av - work[j][row]).norm() < 1e-14);
            }
        }
        for p in 0..3 {
            for q in (p + 1)..3 {
                let dot = (0..3).fold(Complex::zero(), |acc: Complex<f64>, r| {
                    acc + work[p][r].conj() * work[q][r]
                });
                assert!(dot.norm() < 1e-14);
            }
        }
        assert!(close(&v.adjoint().matmul(&v), &ComplexMatrix::identity(3), 1e-14));
    }

    #[test]
    fn pure_factor_reproduces_reduced_state() {
        let reg = QubitRegister::with_default_labels(3).unwrap();
        let amps: Vec<Complex<f64>> = (0..8).map(|k| c(k as f64 * 0.1, 0.05 * (k % 3) as f64)).collect();
        let (rows, sub) = pure_factor(&amps, &reg, &["C", "A"]).unwrap();
        let (rho, _) = partial_trace_pure(&amps, &reg, &["A", "C"]).unwrap();
        assert_eq!(sub.labels(), ["A", "C"]);
        let gram = ComplexMatrix::from_fn(4, |i, j| {
            rows[i]
                .iter()
                .zip(&rows[j])
                .fold(Complex::zero(), |acc, (a, b)| acc + a * b.conj())
        });
        assert!(close(&gram, &rho, 1e-15));
    }
}
