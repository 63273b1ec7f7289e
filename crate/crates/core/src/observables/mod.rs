//! Bipartite observables `J_{n,l}` and the per-state report.
//!
//! Every engine implements [`JEngine`]; engines are looked up by name in an
//! [`EngineRegistry`]. The default registry holds `purity` (the fast path),
//! `minors` and `pauli`.

mod engines;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use engines::{j_minors, j_pauli, j_purity, MinorsEngine, PauliEngine, PurityEngine};

use crate::error::{Error, Result};
use crate::state::StateVector;

/// Default threshold below which `J_{n,l}` counts as vanishing.
pub const DEFAULT_EPSILON: f64 = 1e-9;

pub const DEFAULT_ENGINE: &str = "purity";

/// A way of computing `J_{n,l}` for the cut after qubit `l`.
pub trait JEngine: Send + Sync {
    fn name(&self) -> &'static str;

    fn j(&self, psi: &StateVector, ell: usize) -> Result<f64>;
}

pub struct EngineRegistry {
    engines: Vec<Box<dyn JEngine>>,
}

impl EngineRegistry {
    pub fn empty() -> Self {
        Self {
            engines: Vec::new(),
        }
    }

    /// Registers `engine`, replacing any engine of the same name.
    pub fn register(&mut self, engine: Box<dyn JEngine>) {
        self.engines.retain(|e| e.name() != engine.name());
        self.engines.push(engine);
    }

    pub fn get(&self, name: &str) -> Result<&dyn JEngine> {
        self.engines
            .iter()
            .find(|e| e.name() == name)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::BadEngine(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.engines.iter().map(|e| e.name()).collect()
    }
}

impl Default for EngineRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(PurityEngine));
        r.register(Box::new(MinorsEngine));
        r.register(Box::new(PauliEngine));
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableReport {
    pub n: usize,
    /// `J_{n,1}, ..., J_{n,n-1}`.
    pub values: Vec<f64>,
    pub average: f64,
    pub vanishing: Vec<bool>,
    /// `1 + #vanishing`.
    pub q: usize,
    pub engine: String,
}

impl ObservableReport {
    /// Cuts `l` (1-based) whose observable vanishes.
    pub fn vanishing_cuts(&self) -> Vec<usize> {
        self.vanishing
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// All `n-1` observables of `psi`. Cuts are evaluated in parallel and
/// collected in cut order.
pub fn report(psi: &StateVector, engine: &dyn JEngine, epsilon: f64) -> Result<ObservableReport> {
    let n = psi.n();
    if n < 2 {
        return Err(Error::BadCut { ell: 1, n });
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    let values = (1..n)
        .into_par_iter()
        .map(|ell| engine.j(psi, ell))
        .collect::<Result<Vec<f64>>>()?;
    let average = values.iter().sum::<f64>() / values.len() as f64;
    let vanishing: Vec<bool> = values.iter().map(|&v| v < epsilon).collect();
    let q = 1 + vanishing.iter().filter(|&&v| v).count();
    Ok(ObservableReport {
        n,
        values,
        average,
        vanishing,
        q,
        engine: engine.name().to_string(),
    })
}

/// [`report`] with the engine looked up by name in the default registry.
pub fn report_with(psi: &StateVector, engine: &str, epsilon: f64) -> Result<ObservableReport> {
    let registry = EngineRegistry::default();
    report(psi, registry.get(engine)?, epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ket::parse_state;

    fn all_engines(psi: &StateVector, ell: usize) -> [f64; 3] {
        [
            j_pauli(psi, ell).unwrap(),
            j_minors(psi, ell).unwrap(),
            j_purity(psi, ell).unwrap(),
        ]
    }

    #[test]
    fn eps_and_product() {
        for v in all_engines(&parse_state("|00>+|11>").unwrap(), 1) {
            assert!((v - 1.0).abs() < 1e-12);
        }
        for v in all_engines(&parse_state("|00>").unwrap(), 1) {
            assert!(v.abs() < 1e-12);
        }
    }

    #[test]
    fn w_state_value() {
        let w = parse_state("|100>+|010>+|001>").unwrap();
        for ell in 1..3 {
            for v in all_engines(&w, ell) {
                assert!((v - 8.0 / 9.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ghz_has_single_minor() {
        let ghz = parse_state("|000>+|111>").unwrap();
        assert!((j_minors(&ghz, 1).unwrap() - 1.0).abs() < 1e-12);
    }

    /// Minor enumeration done by hand: B1's second block row is zero.
    #[test]
    fn b1_first_cut_vanishes() {
        let b1 = parse_state("|000>+|011>").unwrap();
        assert!(j_minors(&b1, 1).unwrap().abs() < 1e-15);
        assert!((j_minors(&b1, 2).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn schmidt_law() {
        for k in 0..16 {
            let theta = k as f64 * std::f64::consts::FRAC_PI_4 / 15.0;
            let (s, c) = theta.sin_cos();
            let psi = StateVector::from_real(&[c, 0.0, 0.0, s], false).unwrap();
            let expect = 4.0 * c * c * s * s;
            for v in all_engines(&psi, 1) {
                assert!((v - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dicke_values() {
        let d42 = parse_state("|1100>+|1010>+|1001>+|0110>+|0101>+|0011>").unwrap();
        for ell in 1..4 {
            assert!((j_purity(&d42, ell).unwrap() - 1.0).abs() < 1e-12);
        }
        let d52 = parse_state(
            "|11000>+|10100>+|10010>+|10001>+|01100>+|01010>+|01001>+|00110>+|00101>+|00011>",
        )
        .unwrap();
        assert!((j_purity(&d52, 2).unwrap() - 27.0 / 25.0).abs() < 1e-12);
    }

    #[test]
    fn reports() {
        let ghz = parse_state("|000>+|111>").unwrap();
        let r = report_with(&ghz, "purity", DEFAULT_EPSILON).unwrap();
        assert_eq!(r.q, 1);
        assert!((r.average - 1.0).abs() < 1e-12);
        assert_eq!(r.engine, "purity");

        let sep = parse_state("|00000>").unwrap();
        let r = report_with(&sep, "minors", DEFAULT_EPSILON).unwrap();
        assert_eq!(r.q, 5);
        assert!(r.values.iter().all(|&v| v.abs() < 1e-15));
        assert_eq!(r.vanishing_cuts(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn registry_lookup() {
        let reg = EngineRegistry::default();
        assert_eq!(reg.names(), vec!["purity", "minors", "pauli"]);
        assert!(matches!(reg.get("svd"), Err(Error::BadEngine(_))));
        let psi = parse_state("|0>").unwrap();
        assert!(report_with(&psi, "purity", 1e-9).is_err());
        let eps = parse_state("|00>+|11>").unwrap();
        assert!(report_with(&eps, "purity", 0.0).is_err());
        assert!(matches!(j_purity(&eps, 2), Err(Error::BadCut { .. })));
        assert!(matches!(j_pauli(&eps, 0), Err(Error::BadCut { .. })));
    }
}
