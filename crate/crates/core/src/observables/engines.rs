//! The three routes to `J_{n,l}`.

use crate::error::{Error, Result};
use crate::segre::minors::{enumerate_minors, minor_value};
use crate::state::StateVector;

use super::JEngine;

fn check_cut(psi: &StateVector, ell: usize) -> Result<()> {
    if ell == 0 || ell >= psi.n() {
        return Err(Error::BadCut { ell, n: psi.n() });
    }
    Ok(())
}

/// `2 - 2^{1-l} * sum |<psi| sigma_{i_1..i_l} (x) I |psi>|^2` over all `4^l`
/// Pauli strings on the leading `l` qubits.
pub fn j_pauli(psi: &StateVector, ell: usize) -> Result<f64> {
    check_cut(psi, ell)?;
    let mut indices = vec![0u8; ell];
    let mut scratch = Vec::with_capacity(psi.dim());
    let mut sum = 0.0;
    loop {
        let e = psi.pauli_expectation_with(&indices, &mut scratch)?;
        sum += e * e;
        // base-4 odometer, last index fastest
        let mut k = ell;
        loop {
            if k == 0 {
                return Ok(2.0 - sum / (1u64 << (ell - 1)) as f64);
            }
            k -= 1;
            indices[k] += 1;
            if indices[k] < 4 {
                break;
            }
            indices[k] = 0;
        }
    }
}

/// `4 * sum |M_I|^2` over every 2x2 minor of the `2^l x 2^{n-l}` reshape.
pub fn j_minors(psi: &StateVector, ell: usize) -> Result<f64> {
    check_cut(psi, ell)?;
    let m = psi.reshape_matrix(ell)?;
    let sum: f64 = enumerate_minors(m.nrows(), m.ncols())
        .map(|idx| minor_value(&m, &idx).norm_sqr())
        .sum();
    Ok(4.0 * sum)
}

/// `2 (1 - Tr rho_A^2)` for the marginal on the leading `l` qubits.
pub fn j_purity(psi: &StateVector, ell: usize) -> Result<f64> {
    let rho = psi.reduced_density_matrix(ell)?;
    Ok(2.0 * (1.0 - rho.purity()))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PauliEngine;

#[derive(Debug, Clone, Copy, Default)]
pub struct MinorsEngine;

#[derive(Debug, Clone, Copy, Default)]
pub struct PurityEngine;

impl JEngine for PauliEngine {
    fn name(&self) -> &'static str {
        "pauli"
    }
    fn j(&self, psi: &StateVector, ell: usize) -> Result<f64> {
        j_pauli(psi, ell)
    }
}

impl JEngine for MinorsEngine {
    fn name(&self) -> &'static str {
        "minors"
    }
    fn j(&self, psi: &StateVector, ell: usize) -> Result<f64> {
        j_minors(psi, ell)
    }
}

impl JEngine for PurityEngine {
    fn name(&self) -> &'static str {
        "purity"
    }
    fn j(&self, psi: &StateVector, ell: usize) -> Result<f64> {
        j_purity(psi, ell)
    }
}
