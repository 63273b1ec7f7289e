use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::state::ProjectivePoint;

use super::minors::worst_minor;
use super::rank::{peel, rank_one_split};
use super::shape::SegreShape;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub member: bool,
    /// Largest `|M_I|` seen over the levels that were tested.
    pub worst_minor: f64,
}

fn check_len(z: &ProjectivePoint, shape: &SegreShape) -> Result<()> {
    if z.len() != shape.coord_count() {
        return Err(Error::ShapeMismatch(format!(
            "point in P^{} tested against a shape with target P^{}",
            z.ambient_dim(),
            shape.target_dim()
        )));
    }
    Ok(())
}

/// Tests `[z]` against the Segre variety of `shape` using 2x2 minors.
///
/// The point is scaled to unit norm. Each level reshapes the remaining
/// coordinates as `(k_1 + 1) x rest`; the level passes when every minor is
/// below `epsilon` in modulus. The trailing factor (leading right singular
/// vector) is then tested against the remaining shape. A two-factor shape is
/// the single-level case.
pub fn membership(z: &ProjectivePoint, shape: &SegreShape, epsilon: f64) -> Result<Membership> {
    check_len(z, shape)?;
    let mut rest = z.normalized();
    let mut worst = 0.0f64;
    let dims = shape.dims();
    for (level, &k) in dims.iter().enumerate().take(dims.len().saturating_sub(1)) {
        let rows = k + 1;
        let m = DMatrix::from_row_slice(rows, rest.len() / rows, &rest);
        let (w, _) = worst_minor(&m);
        worst = worst.max(w);
        if w >= epsilon {
            return Ok(Membership {
                member: false,
                worst_minor: worst,
            });
        }
        if level + 2 < dims.len() {
            rest = rank_one_split(&rest, rows).right;
        }
    }
    Ok(Membership {
        member: true,
        worst_minor: worst,
    })
}

/// Rank-route membership: every peel level has `sigma_2 < eps * sigma_1`.
pub fn member_by_rank(coords: &[C64], shape: &SegreShape, eps: f64) -> Result<bool> {
    if coords.len() != shape.coord_count() {
        return Err(Error::ShapeMismatch(format!(
            "{} coordinates for shape {:?}",
            coords.len(),
            shape.dims()
        )));
    }
    let rows: Vec<usize> = shape.dims().iter().map(|k| k + 1).collect();
    Ok(peel(coords, &rows, eps).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segre::embed::{generalized_segre_embed, segre_embed};

    fn pt(v: &[f64]) -> ProjectivePoint {
        ProjectivePoint::from_real(v).unwrap()
    }

    #[test]
    fn eps_is_off_the_variety() {
        let shape = SegreShape::new(vec![1, 1]).unwrap();
        let m = membership(&pt(&[1.0, 0.0, 0.0, 1.0]), &shape, 1e-9).unwrap();
        assert!(!m.member);
        assert!((m.worst_minor - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ghz_not_in_one_three() {
        let shape = SegreShape::new(vec![1, 3]).unwrap();
        let ghz = pt(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(!membership(&ghz, &shape, 1e-9).unwrap().member);
        assert!(!member_by_rank(ghz.coords(), &shape, 1e-8).unwrap());
    }

    #[test]
    fn images_are_members() {
        let a = ProjectivePoint::new(vec![C64::new(0.3, 0.1), C64::new(-0.2, 0.9)]).unwrap();
        let b = ProjectivePoint::new(vec![
            C64::new(1.0, 0.0),
            C64::new(0.5, -0.5),
            C64::new(0.0, 2.0),
        ])
        .unwrap();
        let z = segre_embed(&a, &b);
        let shape = SegreShape::new(vec![1, 2]).unwrap();
        let m = membership(&z, &shape, 1e-9).unwrap();
        assert!(m.member && m.worst_minor < 1e-15);

        let shape3 = SegreShape::new(vec![1, 2, 1]).unwrap();
        let z3 = generalized_segre_embed(&[a.clone(), b.clone(), a.clone()], &shape3).unwrap();
        assert!(membership(&z3, &shape3, 1e-9).unwrap().member);
        assert!(member_by_rank(z3.coords(), &shape3, 1e-8).unwrap());
    }

    #[test]
    fn three_factor_rejects_inner_entanglement() {
        // |0> (x) EPS is in Sigma_{1,3} but not Sigma_{1,1,1}
        let z = pt(&[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(membership(&z, &SegreShape::new(vec![1, 3]).unwrap(), 1e-9).unwrap().member);
        let m = membership(&z, &SegreShape::new(vec![1, 1, 1]).unwrap(), 1e-9).unwrap();
        assert!(!m.member);
        assert!((m.worst_minor - 0.5).abs() < 1e-12);
        assert!(!membership(&z, &SegreShape::new(vec![3, 1]).unwrap(), 1e-9).unwrap().member);
    }

    #[test]
    fn wrong_length_is_shape_mismatch() {
        let shape = SegreShape::new(vec![1, 1]).unwrap();
        assert!(matches!(
            membership(&pt(&[1.0, 0.0]), &shape, 1e-9),
            Err(Error::ShapeMismatch(_))
        ));
    }
}
