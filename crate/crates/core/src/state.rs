//! Dense pure-state representation and the linear-algebra kernels built on it.
//!
//! Amplitude index `i` encodes the basis ket `|i_1 ... i_n>` by its binary
//! expansion with qubit 1 as the most significant bit, so `|011>` is index 3.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Tolerance on `sum |amp|^2 = 1` for an accepted state.
pub const NORM_TOL: f64 = 1e-12;
/// Largest imaginary part tolerated in a Hermitian expectation value.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;
/// Tolerance used when validating density matrices.
pub const DENSITY_TOL: f64 = 1e-10;

/// Normalized pure state of `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// Builds a state from raw amplitudes.
    ///
    /// With `normalize` set the vector is rescaled to unit norm; otherwise a
    /// norm off by more than [`NORM_TOL`] is rejected.
    pub fn from_amplitudes(raw: Vec<C64>, normalize: bool) -> Result<Self> {
        let len = raw.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        let norm_sqr: f64 = raw.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr == 0.0 || !norm_sqr.is_finite() {
            return Err(Error::ZeroVector);
        }
        let amps = if normalize {
            let inv = 1.0 / norm_sqr.sqrt();
            raw.into_iter().map(|a| a * inv).collect()
        } else {
            let norm = norm_sqr.sqrt();
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::NotNormalized(norm));
            }
            raw
        };
        Ok(Self {
            n: len.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn from_real(raw: &[f64], normalize: bool) -> Result<Self> {
        Self::from_amplitudes(raw.iter().map(|&x| C64::new(x, 0.0)).collect(), normalize)
    }

    /// Computational basis state `|index>` on `n` qubits.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n == 0 || n >= usize::BITS as usize || index >= 1 << n {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} on {n} qubits"
            )));
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<C64> {
        self.amps
    }

    /// Kronecker product `self (x) other`; `self` occupies the leading qubits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        StateVector {
            n: self.n + other.n,
            amps,
        }
    }

    /// Multiplies every amplitude by `e^{i phi}`.
    pub fn with_global_phase(&self, phi: f64) -> StateVector {
        let phase = C64::from_polar(1.0, phi);
        StateVector {
            n: self.n,
            amps: self.amps.iter().map(|a| a * phase).collect(),
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Amplitude-wise comparison within `tol` (no phase freedom).
    pub fn approx_eq(&self, other: &StateVector, tol: f64) -> bool {
        self.n == other.n
            && self
                .amps
                .iter()
                .zip(&other.amps)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    pub fn projective_point(&self) -> ProjectivePoint {
        ProjectivePoint {
            coords: self.amps.clone(),
        }
    }

    fn check_cut(&self, ell: usize) -> Result<()> {
        if ell == 0 || ell >= self.n {
            return Err(Error::BadCut { ell, n: self.n });
        }
        Ok(())
    }

    /// `<psi| sigma_{i_1} (x) ... (x) sigma_{i_l} (x) I |psi>` with the Pauli
    /// factors on the leading qubits.
    ///
    /// Each factor is applied as a strided sweep over the amplitude vector;
    /// the operator matrix is never formed.
    pub fn pauli_string_expectation(&self, indices: &[u8]) -> Result<f64> {
        let mut scratch = Vec::new();
        self.pauli_expectation_with(indices, &mut scratch)
    }

    /// Same as [`Self::pauli_string_expectation`], reusing `scratch` as the
    /// work buffer.
    pub fn pauli_expectation_with(&self, indices: &[u8], scratch: &mut Vec<C64>) -> Result<f64> {
        if indices.is_empty() || indices.len() > self.n {
            return Err(Error::BadPauliLength {
                len: indices.len(),
                n: self.n,
            });
        }
        if let Some(&bad) = indices.iter().find(|&&p| p > 3) {
            return Err(Error::BadPauliIndex(bad));
        }
        scratch.clear();
        scratch.extend_from_slice(&self.amps);
        for (k, &p) in indices.iter().enumerate() {
            apply_pauli(scratch, self.n, k, p);
        }
        let value: C64 = self
            .amps
            .iter()
            .zip(scratch.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        if value.im.abs() > IMAG_RESIDUE_TOL {
            return Err(Error::ImaginaryResidueTooLarge(value.im.abs()));
        }
        Ok(value.re)
    }

    /// Row-major `2^ell x 2^(n-ell)` reshape; row `j` holds the amplitudes
    /// whose leading `ell` bits equal `j`.
    pub fn reshape_matrix(&self, ell: usize) -> Result<DMatrix<C64>> {
        self.check_cut(ell)?;
        Ok(DMatrix::from_row_slice(
            1 << ell,
            1 << (self.n - ell),
            &self.amps,
        ))
    }

    /// Marginal on the leading `ell` qubits, tracing out the rest.
    pub fn reduced_density_matrix(&self, ell: usize) -> Result<DensityMatrix> {
        self.check_cut(ell)?;
        let dim = 1usize << ell;
        let stride = 1usize << (self.n - ell);
        let mut entries = DMatrix::<C64>::zeros(dim, dim);
        for j in 0..dim {
            let row_j = &self.amps[j * stride..(j + 1) * stride];
            for k in j..dim {
                let row_k = &self.amps[k * stride..(k + 1) * stride];
                let v: C64 = row_j.iter().zip(row_k).map(|(a, b)| a * b.conj()).sum();
                entries[(j, k)] = v;
                entries[(k, j)] = v.conj();
            }
        }
        Ok(DensityMatrix { dim, entries })
    }
}

/// Applies `sigma_p` in place to qubit `k` (0-based from the most significant bit).
fn apply_pauli(buf: &mut [C64], n: usize, k: usize, p: u8) {
    let bit = 1usize << (n - 1 - k);
    match p {
        0 => {}
        1 => {
            for i in 0..buf.len() {
                if i & bit == 0 {
                    buf.swap(i, i | bit);
                }
            }
        }
        2 => {
            let im = C64::new(0.0, 1.0);
            for i in 0..buf.len() {
                if i & bit == 0 {
                    let lo = buf[i];
                    let hi = buf[i | bit];
                    buf[i] = -im * hi;
                    buf[i | bit] = im * lo;
                }
            }
        }
        3 => {
            for (i, a) in buf.iter_mut().enumerate() {
                if i & bit != 0 {
                    *a = -*a;
                }
            }
        }
        _ => unreachable!("pauli index validated by caller"),
    }
}

/// Point of projective space given by homogeneous coordinates.
///
/// Equality is up to a nonzero complex scalar.
#[derive(Debug, Clone)]
pub struct ProjectivePoint {
    coords: Vec<C64>,
}

/// Threshold on [`ProjectivePoint::distance`] below which two points are equal.
pub const PROJECTIVE_TOL: f64 = 1e-10;

impl ProjectivePoint {
    pub fn new(coords: Vec<C64>) -> Result<Self> {
        if coords.is_empty() || coords.iter().all(|c| c.norm_sqr() == 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { coords })
    }

    pub fn from_real(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Projective dimension `k` of the ambient `P^k`.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Unit-norm representative.
    pub fn normalized(&self) -> Vec<C64> {
        let inv = 1.0 / self.norm();
        self.coords.iter().map(|c| c * inv).collect()
    }

    /// Representative whose first nonvanishing coordinate is 1.
    pub fn affine_representative(&self) -> Vec<C64> {
        let scale = self.normalized();
        let lead = scale
            .iter()
            .copied()
            .find(|c| c.norm() > 1e-12)
            .unwrap_or(C64::new(1.0, 0.0));
        scale.iter().map(|c| c / lead).collect()
    }

    /// `1 - |<p,q>| / (|p| |q|)`; zero iff the points coincide.
    pub fn distance(&self, other: &ProjectivePoint) -> f64 {
        if self.coords.len() != other.coords.len() {
            return 1.0;
        }
        let dot: C64 = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.conj() * b)
            .sum();
        (1.0 - dot.norm() / (self.norm() * other.norm())).max(0.0)
    }

    pub fn scaled(&self, lambda: C64) -> ProjectivePoint {
        ProjectivePoint {
            coords: self.coords.iter().map(|c| c * lambda).collect(),
        }
    }

    pub fn to_state(&self) -> Result<StateVector> {
        StateVector::from_amplitudes(self.coords.clone(), true)
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        self.distance(other) < PROJECTIVE_TOL
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dim: usize,
    entries: DMatrix<C64>,
}

impl DensityMatrix {
    /// Wraps `entries` after checking the density-matrix contract.
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::ShapeMismatch("density matrix must be square".into()));
        }
        let dim = entries.nrows();
        let rho = Self { dim, entries };
        rho.validate()?;
        Ok(rho)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    /// Checks hermiticity, unit trace and eigenvalues `>= -DENSITY_TOL`.
    pub fn validate(&self) -> Result<()> {
        let herm = (&self.entries - self.entries.adjoint()).camax();
        if herm > DENSITY_TOL {
            return Err(Error::InvalidArgument(format!(
                "density matrix not Hermitian ({herm:e})"
            )));
        }
        let tr = self.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(Error::InvalidArgument(format!("trace {tr} != 1")));
        }
        let min_eig = self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min_eig < -DENSITY_TOL {
            return Err(Error::InvalidArgument(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(())
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect()
    }

    /// `Tr(rho^2)`, computed as the squared Frobenius norm of a Hermitian matrix.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|c| c.norm_sqr()).sum()
    }
}

pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}
