//! Randomized verification suites behind `verify`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::observables::{j_minors, j_pauli, j_purity, DEFAULT_EPSILON};
use crate::random::{haar_state, substream};
use crate::segre::{
    classify, compositions, contract_along, enumerate_minors, generalized_segre_embed, lives_in,
    minor_count, oracle_classify, verify_tripartite_lemma, Hypercube, SegreShape,
    DEFAULT_RANK_EPSILON,
};
use crate::state::{ProjectivePoint, StateVector};

use super::format::num;

/// Largest engine disagreement accepted.
pub const ENGINE_TOL: f64 = 1e-8;
/// Largest projective distance between two contraction paths.
pub const PATH_TOL: f64 = 1e-10;
pub const MAX_ENGINE_QUBITS: usize = 8;
pub const MAX_ORACLE_QUBITS: usize = 5;
pub const MAX_HYPERCUBE_QUBITS: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// Largest observed deviation, for numeric suites.
    pub max_deviation: Option<f64>,
    /// Reason the suite did not run.
    pub skipped: Option<String>,
}

impl SuiteResult {
    fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: 0,
            failed: 0,
            max_deviation: None,
            skipped: None,
        }
    }

    fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            skipped: Some(reason.into()),
            ..Self::new(name)
        }
    }

    fn tally(&mut self, oks: impl IntoIterator<Item = bool>) {
        for ok in oks {
            if ok {
                self.passed += 1;
            } else {
                self.failed += 1;
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("n = {}, trials = {}, seed = {}\n", self.n, self.trials, self.seed);
        for s in &self.suites {
            match &s.skipped {
                Some(reason) => out.push_str(&format!("{}: skipped ({reason})\n", s.name)),
                None => {
                    out.push_str(&format!(
                        "{}: {} passed, {} failed",
                        s.name, s.passed, s.failed
                    ));
                    if let Some(d) = s.max_deviation {
                        out.push_str(&format!(", max deviation {}", num(d)));
                    }
                    out.push_str(if s.ok() { " PASS\n" } else { " FAIL\n" });
                }
            }
        }
        out
    }
}

fn stream(suite: u64, shape: u64, trial: u64) -> u64 {
    (suite << 48) | (shape << 24) | trial
}

/// `|j_pauli - j_minors|` and `|j_minors - j_purity|` for every cut of
/// `trials` Haar-random states.
pub fn engine_equivalence(n: usize, trials: usize, seed: u64) -> Result<SuiteResult> {
    if !(2..=MAX_ENGINE_QUBITS).contains(&n) {
        return Err(Error::TooLarge(format!(
            "engine equivalence needs 2 <= n <= {MAX_ENGINE_QUBITS}, got {n}"
        )));
    }
    let deviations = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let psi = haar_state(&mut substream(seed, stream(1, n as u64, t)), n);
            (1..n)
                .map(|ell| {
                    let p = j_pauli(&psi, ell)?;
                    let m = j_minors(&psi, ell)?;
                    let u = j_purity(&psi, ell)?;
                    Ok((p - m).abs().max((m - u).abs()))
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut r = SuiteResult::new(format!("engine equivalence (n = {n})"));
    let flat: Vec<f64> = deviations.into_iter().flatten().collect();
    r.tally(flat.iter().map(|&d| d < ENGINE_TOL));
    r.max_deviation = Some(flat.iter().copied().fold(0.0, f64::max));
    Ok(r)
}

/// Whether the observable classification and the brute-force oracle agree on
/// `psi`, and the witness vertex is consistent with both.
pub fn classification_agrees(psi: &StateVector) -> Result<bool> {
    let c = match classify(psi, DEFAULT_EPSILON) {
        Ok(c) => c,
        Err(Error::InconsistentCuts { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    let o = oracle_classify(psi, DEFAULT_RANK_EPSILON)?;
    let lives = lives_in(&psi.projective_point(), &c.witness, DEFAULT_RANK_EPSILON)?;
    Ok(c.q == o.q && c.vanishing == o.cuts() && lives && c.witness.degree() == psi.n() - c.q)
}

/// Tensor product of Haar-random blocks with the given qubit counts.
pub fn random_product(composition: &[usize], seed: u64, stream_id: u64) -> StateVector {
    let mut rng = substream(seed, stream_id);
    let mut blocks = composition.iter().map(|&m| haar_state(&mut rng, m));
    let first = blocks.next().expect("nonempty composition");
    blocks.fold(first, |acc, b| acc.tensor(&b))
}

/// `trials` constructed products per ordered composition of `n`, plus
/// `trials` Haar-random states: classify and the oracle must agree, and a
/// constructed state must have exactly as many blocks as its shape.
pub fn oracle_equivalence(n: usize, trials: usize, seed: u64) -> Result<SuiteResult> {
    if !(2..=MAX_ORACLE_QUBITS).contains(&n) {
        return Err(Error::TooLarge(format!(
            "oracle equivalence needs 2 <= n <= {MAX_ORACLE_QUBITS}, got {n}"
        )));
    }
    let shapes = compositions(n);
    let mut r = SuiteResult::new(format!("classify vs oracle (n = {n})"));
    for (s, shape) in shapes.iter().enumerate() {
        let oks = (0..trials as u64)
            .into_par_iter()
            .map(|t| {
                let psi = random_product(shape, seed, stream(2, s as u64, t));
                let c = classify(&psi, DEFAULT_EPSILON).map(|c| c.q).unwrap_or(0);
                Ok(classification_agrees(&psi)? && c == shape.len())
            })
            .collect::<Result<Vec<bool>>>()?;
        r.tally(oks);
    }
    let oks = (0..trials as u64)
        .into_par_iter()
        .map(|t| classification_agrees(&haar_state(&mut substream(seed, stream(3, 0, t)), n)))
        .collect::<Result<Vec<bool>>>()?;
    r.tally(oks);
    Ok(r)
}

pub fn lemma_suite(dims: (usize, usize, usize), trials: usize, seed: u64) -> Result<SuiteResult> {
    let rep = verify_tripartite_lemma(trials, dims, seed)?;
    let mut r = SuiteResult::new(format!(
        "tripartite lemma ({},{},{})",
        dims.0, dims.1, dims.2
    ));
    for c in [&rep.triple_in_both, &rep.one_sided_excluded, &rep.intersection_is_triple] {
        r.passed += c.passed;
        r.failed += c.failed;
    }
    Ok(r)
}

/// Every maximal path of the `n`-factor cube applied to random points of
/// `P^1` lands on the direct generalized embedding.
pub fn hypercube_suite(n: usize, trials: usize, seed: u64) -> Result<SuiteResult> {
    if !(2..=MAX_HYPERCUBE_QUBITS).contains(&n) {
        return Err(Error::TooLarge(format!(
            "hypercube check needs 2 <= n <= {MAX_HYPERCUBE_QUBITS}, got {n}"
        )));
    }
    let cube = Hypercube::new(n)?;
    let paths = cube.maximal_paths();
    let shape = SegreShape::new(vec![1; n])?;
    let worst = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = substream(seed, stream(4, n as u64, t));
            let points: Vec<ProjectivePoint> = (0..n)
                .map(|_| haar_state(&mut rng, 1).projective_point())
                .collect();
            let direct = generalized_segre_embed(&points, &shape)?;
            paths
                .iter()
                .map(|p| Ok(contract_along(&points, p)?.distance(&direct)))
                .try_fold(0.0f64, |acc, d: Result<f64>| Ok(acc.max(d?)))
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut r = SuiteResult::new(format!("hypercube paths (n = {n}, {} paths)", paths.len()));
    r.tally(worst.iter().map(|&d| d < PATH_TOL));
    r.max_deviation = Some(worst.iter().copied().fold(0.0, f64::max));
    Ok(r)
}

/// Closed-form minor count against enumeration for `1 <= k, l <= max`.
pub fn minor_count_suite(max: usize) -> SuiteResult {
    let mut r = SuiteResult::new(format!("minor count (k, l <= {max})"));
    for k in 1..=max {
        for ell in 1..=max {
            r.tally([minor_count(k, ell) == enumerate_minors(k + 1, ell + 1).count()]);
        }
    }
    r
}

pub fn verify(n: usize, trials: usize, seed: u64) -> Result<VerifyReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("verify needs n >= 2, got {n}")));
    }
    if n > MAX_ENGINE_QUBITS {
        return Err(Error::TooLarge(format!(
            "verify supports n <= {MAX_ENGINE_QUBITS}, got {n}"
        )));
    }
    let mut suites = vec![engine_equivalence(n, trials, seed)?];
    suites.push(if n <= MAX_ORACLE_QUBITS {
        oracle_equivalence(n, trials, seed)?
    } else {
        SuiteResult::skipped("classify vs oracle", format!("n > {MAX_ORACLE_QUBITS}"))
    });
    suites.push(lemma_suite((1, 1, 1), trials, seed)?);
    suites.push(lemma_suite((1, 1, 3), trials, seed)?);
    suites.push(if n <= MAX_HYPERCUBE_QUBITS {
        hypercube_suite(n, trials, seed)?
    } else {
        SuiteResult::skipped("hypercube paths", format!("n > {MAX_HYPERCUBE_QUBITS}"))
    });
    suites.push(minor_count_suite(7));
    Ok(VerifyReport {
        n,
        trials,
        seed,
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let r = verify(3, 20, 1).unwrap();
        assert!(r.all_passed(), "{}", r.render_text());
        assert_eq!(r.suites.len(), 6);
        assert_eq!(r.suites[0].passed, 40);
    }

    #[test]
    fn limits() {
        assert!(matches!(verify(9, 1, 0), Err(Error::TooLarge(_))));
        assert!(verify(1, 1, 0).is_err());
        let r = verify(6, 2, 0).unwrap();
        assert!(r.suites[1].skipped.is_some());
    }

    #[test]
    fn reproducible() {
        let a = engine_equivalence(4, 10, 9).unwrap();
        let b = engine_equivalence(4, 10, 9).unwrap();
        assert_eq!(a, b);
    }
}
