use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::observables::{report, JEngine, PurityEngine};
use crate::state::StateVector;

use super::hypercube::HypercubeVertex;
use super::rank::{kron_all, peel, peel_unchecked};
use super::shape::SegreShape;

/// Largest residual accepted for an extracted factorization.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Largest `n` handled by the brute-force oracle.
pub const ORACLE_MAX_QUBITS: usize = 12;

/// `psi = phase * factors[0] (x) ... (x) factors[q-1]` over contiguous spans.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionTree {
    /// Inclusive 1-based qubit ranges, in order.
    pub spans: Vec<(usize, usize)>,
    #[serde(skip)]
    pub factors: Vec<StateVector>,
    #[serde(skip)]
    pub phase: C64,
    /// `|psi - phase * (x) factors|`.
    pub residual: f64,
}

impl DecompositionTree {
    pub fn composition(&self) -> Vec<usize> {
        self.spans.iter().map(|(a, b)| b - a + 1).collect()
    }

    pub fn reconstruct(&self) -> Vec<C64> {
        let amps: Vec<Vec<C64>> = self.factors.iter().map(|f| f.amps().to_vec()).collect();
        kron_all(&amps).into_iter().map(|a| a * self.phase).collect()
    }
}

#[derive(Debug, Clone)]
pub enum Decomposition {
    Entangled,
    Separable(DecompositionTree),
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub q: usize,
    /// Cuts `l` with `J_{n,l} < epsilon`.
    pub vanishing: Vec<usize>,
    pub values: Vec<f64>,
    /// Vertex of degree `n - q` the state lives in.
    pub witness: HypercubeVertex,
    pub decomposition: Decomposition,
}

pub fn spans_from_cuts(n: usize, cuts: &[usize]) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut start = 1;
    for &c in cuts {
        spans.push((start, c));
        start = c + 1;
    }
    spans.push((start, n));
    spans
}

/// Factors `psi` over the contiguous blocks of `composition` (qubit counts),
/// taking the leading singular vectors at every level.
pub fn factorize(psi: &StateVector, composition: &[usize]) -> Result<DecompositionTree> {
    if composition.iter().sum::<usize>() != psi.n() || composition.contains(&0) {
        return Err(Error::ShapeMismatch(format!(
            "composition {composition:?} of a {}-qubit state",
            psi.n()
        )));
    }
    let rows: Vec<usize> = composition.iter().map(|&m| 1usize << m).collect();
    let (raw, phase) = peel_unchecked(psi.amps(), &rows);
    let factors = raw
        .into_iter()
        .map(|f| StateVector::from_amplitudes(f, true))
        .collect::<Result<Vec<_>>>()?;
    let mut spans = Vec::new();
    let mut start = 1;
    for &m in composition {
        spans.push((start, start + m - 1));
        start += m;
    }
    let mut tree = DecompositionTree {
        spans,
        factors,
        phase,
        residual: 0.0,
    };
    tree.residual = tree
        .reconstruct()
        .iter()
        .zip(psi.amps())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(tree)
}

/// Counts vanishing observables and, when any vanish, factors the state at
/// those cuts.
pub fn classify(psi: &StateVector, epsilon: f64) -> Result<Classification> {
    classify_with(psi, &PurityEngine, epsilon)
}

/// [`classify`] with the observables computed by `engine`.
pub fn classify_with(
    psi: &StateVector,
    engine: &dyn JEngine,
    epsilon: f64,
) -> Result<Classification> {
    let n = psi.n();
    let rep = report(psi, engine, epsilon)?;
    let vanishing = rep.vanishing_cuts();
    let witness = HypercubeVertex::with_cuts(n, &vanishing);
    let decomposition = if rep.q == 1 {
        Decomposition::Entangled
    } else {
        let tree = factorize(psi, &witness.composition())?;
        if !(tree.residual < RESIDUAL_TOL) {
            return Err(Error::InconsistentCuts {
                cuts: vanishing,
                residual: tree.residual,
            });
        }
        Decomposition::Separable(tree)
    };
    Ok(Classification {
        q: rep.q,
        vanishing,
        values: rep.values,
        witness,
        decomposition,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub q: usize,
    pub composition: Vec<usize>,
}

impl OracleResult {
    /// Cut positions between the blocks of the composition.
    pub fn cuts(&self) -> Vec<usize> {
        self.composition
            .iter()
            .scan(0, |acc, &m| {
                *acc += m;
                Some(*acc)
            })
            .take(self.composition.len() - 1)
            .collect()
    }
}

/// All `2^{n-1}` ordered compositions of `n`; mask bit `j-1` set means a cut
/// after qubit `j`.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << (n - 1))
        .map(|mask| {
            let cuts: Vec<usize> = (1..n).filter(|j| mask >> (j - 1) & 1 == 1).collect();
            spans_from_cuts(n, &cuts)
                .into_iter()
                .map(|(a, b)| b - a + 1)
                .collect()
        })
        .collect()
}

/// Whether `psi` factors over `composition`, by recursive rank-1 peeling.
pub fn factors_over(psi: &StateVector, composition: &[usize], eps_rank: f64) -> Result<bool> {
    let shape = SegreShape::from_qubit_composition(composition)?;
    if shape.coord_count() != psi.dim() {
        return Err(Error::ShapeMismatch(format!(
            "composition {composition:?} of a {}-qubit state",
            psi.n()
        )));
    }
    let rows: Vec<usize> = composition.iter().map(|&m| 1usize << m).collect();
    Ok(peel(psi.amps(), &rows, eps_rank).is_some())
}

/// Brute force over every composition of `n`, independent of the
/// observables: returns the finest composition `psi` factors over.
pub fn oracle_classify(psi: &StateVector, eps_rank: f64) -> Result<OracleResult> {
    let n = psi.n();
    if n > ORACLE_MAX_QUBITS {
        return Err(Error::TooLarge(format!(
            "oracle limited to {ORACLE_MAX_QUBITS} qubits, got {n}"
        )));
    }
    if n < 2 {
        return Err(Error::BadCut { ell: 1, n });
    }
    let candidates = compositions(n);
    let hits = candidates
        .par_iter()
        .map(|c| factors_over(psi, c, eps_rank))
        .collect::<Result<Vec<bool>>>()?;
    let best = candidates
        .into_iter()
        .zip(hits)
        .filter(|(_, ok)| *ok)
        .map(|(c, _)| c)
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
        .expect("the trivial composition always factors");
    Ok(OracleResult {
        q: best.len(),
        composition: best,
    })
}
