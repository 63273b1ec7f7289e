//! The directed `(n-1)`-cube of partial Segre contractions.
//!
//! Vertex `v = (v_1, ..., v_{n-1})` has `v_j = 1` when the factors on either
//! side of position `j` have been contracted by a Segre map. The initial
//! vertex `(0, ..., 0)` is the full product of `n` factors and the final
//! vertex `(1, ..., 1)` is the ambient projective space. Edge `[j]` sets
//! `v_j` from 0 to 1.

use itertools::Itertools;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::ProjectivePoint;

use super::embed::segre_embed;
use super::membership::member_by_rank;
use super::shape::SegreShape;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HypercubeVertex {
    bits: Vec<u8>,
}

impl HypercubeVertex {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidArgument(format!("vertex bits {bits:?} not in {{0,1}}")));
        }
        Ok(Self { bits })
    }

    pub fn initial(n: usize) -> Self {
        Self {
            bits: vec![0; n.saturating_sub(1)],
        }
    }

    pub fn terminal(n: usize) -> Self {
        Self {
            bits: vec![1; n.saturating_sub(1)],
        }
    }

    /// Vertex whose open positions are exactly `cuts` (1-based).
    pub fn with_cuts(n: usize, cuts: &[usize]) -> Self {
        let bits = (1..n).map(|j| u8::from(!cuts.contains(&j))).collect();
        Self { bits }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Number of factors of the full product, `n`.
    pub fn n(&self) -> usize {
        self.bits.len() + 1
    }

    /// `|v| = sum v_j`.
    pub fn degree(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum()
    }

    /// Positions `j` with `v_j = 0`: the cuts still separating factors.
    pub fn open_positions(&self) -> Vec<usize> {
        (1..=self.bits.len()).filter(|&j| self.bits[j - 1] == 0).collect()
    }

    /// Block sizes: consecutive factors merged wherever `v_j = 1`.
    pub fn composition(&self) -> Vec<usize> {
        let mut parts = vec![1usize];
        for &b in &self.bits {
            if b == 1 {
                *parts.last_mut().unwrap() += 1;
            } else {
                parts.push(1);
            }
        }
        parts
    }

    pub fn label(&self) -> String {
        self.bits.iter().map(|b| char::from(b'0' + b)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypercubeEdge {
    pub from: usize,
    pub to: usize,
    /// 1-based position `j` being contracted.
    pub label: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Hypercube {
    pub n: usize,
    pub vertices: Vec<HypercubeVertex>,
    pub edges: Vec<HypercubeEdge>,
}

impl Hypercube {
    /// Vertex `i` has `v_j` equal to bit `n-1-j` of `i`, so vertices are
    /// listed in lexicographic order of their tuples.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("hypercube needs n >= 2".into()));
        }
        let d = n - 1;
        if d >= 24 {
            return Err(Error::TooLarge(format!("hypercube of dimension {d}")));
        }
        let vertex = |i: usize| HypercubeVertex {
            bits: (1..=d).map(|j| ((i >> (d - j)) & 1) as u8).collect(),
        };
        let vertices: Vec<HypercubeVertex> = (0..1usize << d).map(vertex).collect();
        let mut edges = Vec::new();
        for from in 0..vertices.len() {
            for j in 1..=d {
                let bit = 1usize << (d - j);
                if from & bit == 0 {
                    edges.push(HypercubeEdge {
                        from,
                        to: from | bit,
                        label: j,
                    });
                }
            }
        }
        Ok(Self { n, vertices, edges })
    }

    pub fn initial(&self) -> &HypercubeVertex {
        &self.vertices[0]
    }

    pub fn terminal(&self) -> &HypercubeVertex {
        self.vertices.last().unwrap()
    }

    /// Every maximal directed path `v_0 -> v_f`, as its sequence of edge labels.
    pub fn maximal_paths(&self) -> Vec<Vec<usize>> {
        (1..self.n).permutations(self.n - 1).collect()
    }
}

/// Contracts `points` along the edge labels in `path`; returns the point at
/// the final vertex.
pub fn contract_along(points: &[ProjectivePoint], path: &[usize]) -> Result<ProjectivePoint> {
    let n = points.len();
    let mut check: Vec<usize> = path.to_vec();
    check.sort_unstable();
    if n < 1 || check != (1..n).collect::<Vec<_>>() {
        return Err(Error::InvalidArgument(format!(
            "path {path:?} is not a maximal path for {n} factors"
        )));
    }
    // blocks of (first factor, last factor, point)
    let mut blocks: Vec<(usize, usize, ProjectivePoint)> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (i + 1, i + 1, p.clone()))
        .collect();
    for &j in path {
        let left = blocks.iter().position(|b| b.1 == j).expect("block ending at j");
        let (first, _, a) = blocks[left].clone();
        let (_, last, b) = blocks.remove(left + 1);
        blocks[left] = (first, last, segre_embed(&a, &b));
    }
    Ok(blocks.pop().unwrap().2)
}

/// Whether `z` is in the image of the contractions from `v` to the final
/// vertex, i.e. factors over the blocks of `v`'s composition.
pub fn lives_in(z: &ProjectivePoint, v: &HypercubeVertex, epsilon: f64) -> Result<bool> {
    let n = v.n();
    if n >= usize::BITS as usize || z.len() != 1usize << n {
        return Err(Error::ShapeMismatch(format!(
            "point in P^{} and a vertex of the {}-qubit cube",
            z.ambient_dim(),
            n
        )));
    }
    let shape = SegreShape::from_qubit_composition(&v.composition())?;
    let unit: Vec<C64> = z.normalized();
    member_by_rank(&unit, &shape, epsilon)
}
