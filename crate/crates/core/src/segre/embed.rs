use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::state::ProjectivePoint;

use super::shape::SegreShape;

/// `[a_i] , [b_j] -> [a_i b_j]` in lexicographic order.
pub fn segre_embed(a: &ProjectivePoint, b: &ProjectivePoint) -> ProjectivePoint {
    let coords: Vec<C64> = a
        .coords()
        .iter()
        .flat_map(|x| b.coords().iter().map(move |y| x * y))
        .collect();
    ProjectivePoint::new(coords).expect("product of nonzero points is nonzero")
}

/// `z_{i_1 ... i_q} = a^1_{i_1} ... a^q_{i_q}`, evaluated directly from the
/// product formula.
pub fn generalized_segre_embed(
    points: &[ProjectivePoint],
    shape: &SegreShape,
) -> Result<ProjectivePoint> {
    if points.len() != shape.parts() {
        return Err(Error::ShapeMismatch(format!(
            "{} points for a {}-factor shape",
            points.len(),
            shape.parts()
        )));
    }
    for (p, &k) in points.iter().zip(shape.dims()) {
        if p.ambient_dim() != k {
            return Err(Error::ShapeMismatch(format!(
                "point in P^{} where P^{k} expected",
                p.ambient_dim()
            )));
        }
    }
    let total = shape.coord_count();
    let mut coords = Vec::with_capacity(total);
    let mut digits = vec![0usize; points.len()];
    for _ in 0..total {
        let mut z = C64::new(1.0, 0.0);
        for (p, &d) in points.iter().zip(&digits) {
            z *= p.coords()[d];
        }
        coords.push(z);
        for pos in (0..digits.len()).rev() {
            digits[pos] += 1;
            if digits[pos] <= shape.dims()[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
    ProjectivePoint::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[f64]) -> ProjectivePoint {
        ProjectivePoint::from_real(v).unwrap()
    }

    #[test]
    fn small_embeddings() {
        assert_eq!(segre_embed(&pt(&[1.0, 0.0]), &pt(&[1.0, 0.0])), pt(&[1.0, 0.0, 0.0, 0.0]));
        assert_eq!(
            segre_embed(&pt(&[1.0, 1.0]), &pt(&[1.0, -1.0])),
            pt(&[1.0, -1.0, 1.0, -1.0])
        );
    }

    #[test]
    fn coordinate_order_is_lexicographic() {
        let a = pt(&[2.0, 3.0]);
        let b = pt(&[5.0, 7.0, 11.0, 13.0]);
        let z = segre_embed(&a, &b);
        let expect: Vec<f64> = [2.0, 3.0]
            .iter()
            .flat_map(|x| [5.0, 7.0, 11.0, 13.0].map(|y| x * y))
            .collect();
        for (c, e) in z.coords().iter().zip(expect) {
            assert_eq!(c.re, e);
        }
    }

    #[test]
    fn both_factorizations_of_the_square_agree() {
        let a = pt(&[1.0, 0.0]);
        let b = pt(&[1.0, 0.0]);
        let c = pt(&[0.6, -0.8]);
        let left = segre_embed(&segre_embed(&a, &b), &c);
        let right = segre_embed(&a, &segre_embed(&b, &c));
        assert_eq!(left, right);
        let shape = SegreShape::new(vec![1, 1, 1]).unwrap();
        assert_eq!(generalized_segre_embed(&[a, b, c], &shape).unwrap(), left);
    }

    #[test]
    fn shape_mismatch() {
        let shape = SegreShape::new(vec![1, 1]).unwrap();
        assert!(generalized_segre_embed(&[pt(&[1.0, 0.0])], &shape).is_err());
        assert!(generalized_segre_embed(&[pt(&[1.0, 0.0]), pt(&[1.0, 0.0, 0.0])], &shape).is_err());
    }
}
