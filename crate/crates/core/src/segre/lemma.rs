//! Numerical check of
//! `Sigma_{k1,k2,k3} = Sigma_{k1,N(k2,k3)} ∩ Sigma_{N(k1,k2),k3}`.
//!
//! Three trial classes:
//! - (a) triple products lie in both bipartite varieties;
//! - (b) points in exactly one bipartite variety fail the intersection and
//!   the triple test;
//! - (c) points detected in the intersection, drawn from a pool mixing
//!   triple products with one-sided bipartite products, pass an independent
//!   triple test built from all three mode unfoldings.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::random::{gaussian_complex, gaussian_vector, seeded_rng};
use crate::state::ProjectivePoint;

use super::embed::{generalized_segre_embed, segre_embed};
use super::membership::membership;
use super::rank::{kron_all, rank_one_split};
use super::shape::SegreShape;

/// Minor threshold for the bipartite memberships.
pub const LEMMA_MINOR_EPSILON: f64 = 1e-8;
/// Projective distance accepted by the unfolding reconstruction.
pub const LEMMA_RECONSTRUCTION_TOL: f64 = 1e-10;
/// Largest `N(k1,k2,k3)` accepted.
pub const LEMMA_MAX_TARGET_DIM: usize = 63;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub passed: usize,
    pub failed: usize,
}

impl CheckCount {
    fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub dims: (usize, usize, usize),
    pub triple_in_both: CheckCount,
    pub one_sided_excluded: CheckCount,
    pub intersection_is_triple: CheckCount,
    /// Pool draws needed to collect the class (c) trials.
    pub pool_draws: usize,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        [
            &self.triple_in_both,
            &self.one_sided_excluded,
            &self.intersection_is_triple,
        ]
        .iter()
        .all(|c| c.failed == 0)
    }

    pub fn failures(&self) -> usize {
        self.triple_in_both.failed + self.one_sided_excluded.failed + self.intersection_is_triple.failed
    }
}

struct Shapes {
    left: SegreShape,
    right: SegreShape,
    triple: SegreShape,
}

fn random_point<R: Rng + ?Sized>(rng: &mut R, k: usize) -> ProjectivePoint {
    ProjectivePoint::new(gaussian_vector(rng, k + 1)).expect("gaussian vector is nonzero")
}

fn in_intersection(z: &ProjectivePoint, s: &Shapes) -> Result<bool> {
    Ok(membership(z, &s.left, LEMMA_MINOR_EPSILON)?.member
        && membership(z, &s.right, LEMMA_MINOR_EPSILON)?.member)
}

/// Triple membership from the three mode unfoldings: take the leading
/// singular vector of each and compare `a (x) b (x) c` with `z`.
pub fn triple_by_unfoldings(z: &ProjectivePoint, dims: (usize, usize, usize)) -> bool {
    let (d1, d2, d3) = (dims.0 + 1, dims.1 + 1, dims.2 + 1);
    let unit = z.normalized();
    let a = rank_one_split(&unit, d1).left;
    let c = rank_one_split(&unit, d1 * d2).right;
    // mode-2 unfolding: rows indexed by j, columns by (i, k)
    let m2 = DMatrix::from_fn(d2, d1 * d3, |j, col| {
        let (i, k) = (col / d3, col % d3);
        unit[(i * d2 + j) * d3 + k]
    });
    let flat: Vec<C64> = m2.transpose().iter().copied().collect();
    let b = rank_one_split(&flat, d2).left;
    let rebuilt = kron_all(&[a, b, c]);
    match ProjectivePoint::new(rebuilt) {
        Ok(p) => p.distance(z) < LEMMA_RECONSTRUCTION_TOL,
        Err(_) => false,
    }
}

pub fn verify_tripartite_lemma(
    trials: usize,
    dims: (usize, usize, usize),
    seed: u64,
) -> Result<LemmaReport> {
    let (k1, k2, k3) = dims;
    let triple = SegreShape::new(vec![k1, k2, k3])?;
    if triple.target_dim() > LEMMA_MAX_TARGET_DIM {
        return Err(Error::TooLarge(format!(
            "target dimension {} exceeds {LEMMA_MAX_TARGET_DIM}",
            triple.target_dim()
        )));
    }
    let n12 = (k1 + 1) * (k2 + 1) - 1;
    let n23 = (k2 + 1) * (k3 + 1) - 1;
    let shapes = Shapes {
        left: SegreShape::new(vec![k1, n23])?,
        right: SegreShape::new(vec![n12, k3])?,
        triple: triple.clone(),
    };
    let mut rng = seeded_rng(seed);
    let mut report = LemmaReport {
        dims,
        triple_in_both: CheckCount::default(),
        one_sided_excluded: CheckCount::default(),
        intersection_is_triple: CheckCount::default(),
        pool_draws: 0,
    };

    for _ in 0..trials {
        let pts = [
            random_point(&mut rng, k1),
            random_point(&mut rng, k2),
            random_point(&mut rng, k3),
        ];
        let z = generalized_segre_embed(&pts, &shapes.triple)?;
        report.triple_in_both.record(in_intersection(&z, &shapes)?);
    }

    for t in 0..trials {
        // alternate a (x) Y and X (x) c with generic Y, X
        let z = if t % 2 == 0 {
            segre_embed(&random_point(&mut rng, k1), &random_point(&mut rng, n23))
        } else {
            segre_embed(&random_point(&mut rng, n12), &random_point(&mut rng, k3))
        };
        let left = membership(&z, &shapes.left, LEMMA_MINOR_EPSILON)?.member;
        let right = membership(&z, &shapes.right, LEMMA_MINOR_EPSILON)?.member;
        let triple_member = membership(&z, &shapes.triple, LEMMA_MINOR_EPSILON)?.member
            || triple_by_unfoldings(&z, dims);
        report
            .one_sided_excluded
            .record(left != right && !(left && right) && !triple_member);
    }

    let cap = trials.saturating_mul(50).max(100);
    while report.intersection_is_triple.passed + report.intersection_is_triple.failed < trials {
        if report.pool_draws >= cap {
            return Err(Error::InvalidArgument(format!(
                "only {} intersection points found in {cap} draws",
                report.intersection_is_triple.passed + report.intersection_is_triple.failed
            )));
        }
        report.pool_draws += 1;
        let z = match rng.random_range(0..3) {
            0 => {
                let pts = [
                    random_point(&mut rng, k1),
                    random_point(&mut rng, k2),
                    random_point(&mut rng, k3),
                ];
                generalized_segre_embed(&pts, &shapes.triple)?.scaled(gaussian_complex(&mut rng))
            }
            1 => segre_embed(&random_point(&mut rng, k1), &random_point(&mut rng, n23)),
            _ => segre_embed(&random_point(&mut rng, n12), &random_point(&mut rng, k3)),
        };
        if in_intersection(&z, &shapes)? {
            report
                .intersection_is_triple
                .record(triple_by_unfoldings(&z, dims));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_holds_for_qubits() {
        let r = verify_tripartite_lemma(40, (1, 1, 1), 11).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert_eq!(r.triple_in_both.passed, 40);
        assert_eq!(r.intersection_is_triple.passed, 40);
    }

    #[test]
    fn zero_times_eps_is_one_sided() {
        let z = ProjectivePoint::from_real(&[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let left = SegreShape::new(vec![1, 3]).unwrap();
        let right = SegreShape::new(vec![3, 1]).unwrap();
        assert!(membership(&z, &left, LEMMA_MINOR_EPSILON).unwrap().member);
        assert!(!membership(&z, &right, LEMMA_MINOR_EPSILON).unwrap().member);
        assert!(!triple_by_unfoldings(&z, (1, 1, 1)));
    }

    #[test]
    fn too_large_rejected() {
        assert!(matches!(
            verify_tripartite_lemma(1, (3, 3, 4), 0),
            Err(Error::TooLarge(_))
        ));
    }
}
