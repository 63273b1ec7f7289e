use crate::error::{Error, Result};
use crate::state::StateVector;

/// Bijection on qubit positions `1..=n`: qubit `i` moves to position `map[i-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// From images `perm(1), ..., perm(n)` (1-based).
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::BadPermutation(format!("{images:?} is not a bijection on 1..={n}")));
            }
            seen[p - 1] = true;
        }
        Ok(Self { map: images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (1..=n).collect(),
        }
    }

    /// From an ordering that lists, for each new position, the original qubit
    /// it holds. `"ACB"` and `"1,3,2"` both put qubit 3 in position 2.
    pub fn from_order(order: &str) -> Result<Self> {
        let order = order.trim();
        let sources: Vec<usize> = if order.chars().all(|c| c.is_ascii_alphabetic()) {
            order
                .chars()
                .map(|c| (c.to_ascii_uppercase() as u8 - b'A') as usize + 1)
                .collect()
        } else {
            order
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::BadPermutation(format!("bad index '{s}' in order")))
                })
                .collect::<Result<_>>()?
        };
        if sources.is_empty() {
            return Err(Error::BadPermutation("empty order".into()));
        }
        Ok(Self::new(sources)?.inverse())
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, qubit: usize) -> usize {
        self.map[qubit - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &p) in self.map.iter().enumerate() {
            inv[p - 1] = i + 1;
        }
        Self { map: inv }
    }

    /// `self . other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::BadPermutation("length mismatch in compose".into()));
        }
        Ok(Self {
            map: other.map.iter().map(|&q| self.map[q - 1]).collect(),
        })
    }
}

/// Relabels qubits: the bit of qubit `i` moves to position `perm(i)`.
pub fn permute_qubits(psi: &StateVector, perm: &Permutation) -> Result<StateVector> {
    let n = psi.n();
    if perm.len() != n {
        return Err(Error::BadPermutation(format!(
            "permutation on {} qubits applied to {n}-qubit state",
            perm.len()
        )));
    }
    // shift of the bit holding qubit i (1-based), and of its destination
    let src_shift: Vec<usize> = (1..=n).map(|i| n - i).collect();
    let dst_shift: Vec<usize> = (1..=n).map(|i| n - perm.apply(i)).collect();
    let mut out = vec![num_complex::Complex64::new(0.0, 0.0); psi.dim()];
    for (idx, &a) in psi.amps().iter().enumerate() {
        let mut target = 0usize;
        for q in 0..n {
            target |= ((idx >> src_shift[q]) & 1) << dst_shift[q];
        }
        out[target] = a;
    }
    StateVector::from_amplitudes(out, false)
}
