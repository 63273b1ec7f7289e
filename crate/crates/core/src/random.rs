//! Seeded sampling of Haar-random states and unitaries.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::state::StateVector;

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream from `seed` for sub-task `stream`.
pub fn substream(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<C64> {
    (0..len).map(|_| gaussian_complex(rng)).collect()
}

/// Haar-random pure state: normalized complex Gaussian amplitudes.
pub fn haar_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> StateVector {
    loop {
        if let Ok(s) = StateVector::from_amplitudes(gaussian_vector(rng, 1 << n), true) {
            return s;
        }
    }
}

/// Haar-random unitary of size `dim` (QR of a Ginibre matrix with the
/// phases of `R`'s diagonal folded into `Q`).
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DMatrix<C64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_states_are_reproducible() {
        let a = haar_state(&mut seeded_rng(7), 4);
        let b = haar_state(&mut seeded_rng(7), 4);
        assert_eq!(a, b);
        let c = haar_state(&mut substream(7, 1), 4);
        assert_ne!(a, c);
    }

    #[test]
    fn unitary_is_unitary() {
        let u = haar_unitary(&mut seeded_rng(3), 8);
        let id = &u.adjoint() * &u;
        assert!((id - DMatrix::identity(8, 8)).camax() < 1e-12);
    }
}
