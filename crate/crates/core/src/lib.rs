//! Entanglement observables and Segre-variety decomposability for pure
//! n-qubit states.
//!
//! - [`state`]: dense state vectors, Pauli expectations, partial traces.
//! - [`ket`]: ASCII Dirac-notation parsing with exact coefficients.
//! - [`observables`]: the `J_{n,l}` engines and per-state reports.
//! - [`segre`]: Segre embeddings, the hypercube model, classifiers.
//! - [`cli`]: the command implementations behind the `qsegre` binary.

pub mod cli;
pub mod error;
pub mod ket;
pub mod observables;
pub mod random;
pub mod segre;
pub mod state;
pub mod states;

pub use error::{Error, Result};
pub use state::{DensityMatrix, ProjectivePoint, StateVector};
