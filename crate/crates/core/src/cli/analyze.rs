use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ket::{permute_qubits, Permutation};
use crate::observables::{report, EngineRegistry};
use crate::segre::{factorize, HypercubeVertex, RESIDUAL_TOL};
use crate::state::StateVector;

use super::format::{aligned, num, render_state};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub input: String,
    pub n: usize,
    /// The `--order` word as given, if any.
    pub order: Option<String>,
    pub engine: String,
    pub epsilon: f64,
    /// `J_{n,1}, ..., J_{n,n-1}`.
    pub values: Vec<f64>,
    pub average: f64,
    pub q: usize,
    /// Cuts `l` with `J_{n,l} < epsilon`.
    pub vanishing: Vec<usize>,
    /// Hypercube vertex the state lives in.
    pub witness: String,
    /// Inclusive 1-based qubit ranges of the factorization.
    pub spans: Vec<(usize, usize)>,
    /// One ket expression per span; empty when entangled.
    pub factors: Vec<String>,
    /// Reconstruction residual of the factorization; absent when entangled.
    pub residual: Option<f64>,
    /// Wall time in seconds, keyed by stage.
    pub timings: BTreeMap<String, f64>,
}

pub struct AnalyzeOptions<'a> {
    pub order: Option<&'a str>,
    pub engine: &'a str,
    pub epsilon: f64,
}

/// Applies the order, evaluates every cut with the chosen engine and factors
/// the state at the vanishing cuts.
pub fn analyze(input: &str, psi: &StateVector, opts: &AnalyzeOptions) -> Result<AnalysisDocument> {
    let n = psi.n();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "analysis needs at least 2 qubits, got {n}"
        )));
    }
    let psi = match opts.order {
        Some(word) => {
            let perm = Permutation::from_order(word)?;
            permute_qubits(psi, &perm)?
        }
        None => psi.clone(),
    };
    let registry = EngineRegistry::default();
    let engine = registry.get(opts.engine)?;
    let mut timings = BTreeMap::new();

    let start = Instant::now();
    let rep = report(&psi, engine, opts.epsilon)?;
    timings.insert(engine.name().to_string(), start.elapsed().as_secs_f64());

    let cuts = rep.vanishing_cuts();
    let witness = HypercubeVertex::with_cuts(n, &cuts);
    let (spans, factors, residual) = if rep.q == 1 {
        (vec![(1, n)], Vec::new(), None)
    } else {
        let start = Instant::now();
        let tree = factorize(&psi, &witness.composition())?;
        timings.insert("factorize".to_string(), start.elapsed().as_secs_f64());
        if !(tree.residual < RESIDUAL_TOL) {
            return Err(Error::InconsistentCuts {
                cuts,
                residual: tree.residual,
            });
        }
        // fold the global phase into the first factor
        let mut factors = tree.factors.clone();
        let first = factors[0].amps().iter().map(|a| a * tree.phase).collect();
        factors[0] = StateVector::from_amplitudes(first, true)?;
        (
            tree.spans.clone(),
            factors.iter().map(render_state).collect(),
            Some(tree.residual),
        )
    };

    Ok(AnalysisDocument {
        input: input.to_string(),
        n,
        order: opts.order.map(str::to_string),
        engine: engine.name().to_string(),
        epsilon: opts.epsilon,
        values: rep.values,
        average: rep.average,
        q: rep.q,
        vanishing: cuts,
        witness: witness.label(),
        spans,
        factors,
        residual,
        timings,
    })
}

impl AnalysisDocument {
    pub fn render_text(&self) -> String {
        let mut head = vec![
            vec!["input".to_string(), self.input.clone()],
            vec![
                "order".to_string(),
                self.order.clone().unwrap_or_else(|| "identity".to_string()),
            ],
            vec!["n".to_string(), self.n.to_string()],
            vec!["engine".to_string(), self.engine.clone()],
            vec!["epsilon".to_string(), num(self.epsilon)],
        ];
        for (i, v) in self.values.iter().enumerate() {
            head.push(vec![format!("J_{{{},{}}}", self.n, i + 1), num(*v)]);
        }
        head.push(vec!["average".to_string(), num(self.average)]);
        head.push(vec!["q".to_string(), self.q.to_string()]);
        head.push(vec!["witness".to_string(), self.witness.clone()]);
        if self.factors.is_empty() {
            head.push(vec!["decomposition".to_string(), "entangled".to_string()]);
        } else {
            for ((a, b), f) in self.spans.iter().zip(&self.factors) {
                head.push(vec![format!("factor {a}..{b}"), f.clone()]);
            }
        }
        if let Some(r) = self.residual {
            head.push(vec!["residual".to_string(), num(r)]);
        }
        for (stage, t) in &self.timings {
            head.push(vec![format!("time {stage}"), format!("{} s", num(*t))]);
        }
        aligned(&head)
    }
}
