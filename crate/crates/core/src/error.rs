use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("state vector is zero")]
    ZeroVector,
    #[error("amplitude count {0} is not a power of two >= 2")]
    NotPowerOfTwo(usize),
    #[error("state norm {0} deviates from 1")]
    NotNormalized(f64),
    #[error("bad Pauli index {0}; expected 0..=3")]
    BadPauliIndex(u8),
    #[error("Pauli string of length {len} does not fit {n} qubits")]
    BadPauliLength { len: usize, n: usize },
    #[error("expectation value has imaginary residue {0:e}")]
    ImaginaryResidueTooLarge(f64),
    #[error("cut {ell} out of range for {n} qubits")]
    BadCut { ell: usize, n: usize },
    #[error("bad permutation: {0}")]
    BadPermutation(String),
    #[error(transparent)]
    Parse(#[from] crate::ket::ParseError),
    #[error("kets of different qubit counts ({0} and {1}) in one sum")]
    MixedArity(usize, usize),
    #[error("expression evaluates to the zero state")]
    ZeroState,
    #[error("division by zero in coefficient")]
    DivisionByZero,
    #[error("unknown engine '{0}'")]
    BadEngine(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("vanishing cuts {cuts:?} do not factor (residual {residual:e})")]
    InconsistentCuts { cuts: Vec<usize>, residual: f64 },
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
