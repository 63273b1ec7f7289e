//! Rank-1 witnesses from the two leading singular values of a reshape.

use faer::Mat;
use num_complex::Complex64 as C64;

/// Default relative threshold `sigma_2 < eps * sigma_1`.
pub const DEFAULT_RANK_EPSILON: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct RankOneSplit {
    pub sigma1: f64,
    pub sigma2: f64,
    /// Unit-norm leading left factor, phase-fixed.
    pub left: Vec<C64>,
    /// Unit-norm leading right factor, phase-fixed.
    pub right: Vec<C64>,
    /// `coeff * left (x) right` is the best rank-1 approximation.
    pub coeff: C64,
}

impl RankOneSplit {
    pub fn is_rank_one(&self, eps: f64) -> bool {
        self.sigma2 < eps * self.sigma1
    }
}

/// Rescales `v` so its first clearly nonzero entry is real positive and
/// returns the phase that was removed.
pub fn fix_phase(v: &mut [C64]) -> C64 {
    let scale = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let Some(lead) = v.iter().copied().find(|c| c.norm() > 1e-9 * scale) else {
        return C64::new(1.0, 0.0);
    };
    let phase = lead / lead.norm();
    for c in v.iter_mut() {
        *c /= phase;
    }
    phase
}

/// Splits `coords` viewed as a row-major `rows x cols` matrix.
pub fn rank_one_split(coords: &[C64], rows: usize) -> RankOneSplit {
    debug_assert!(rows > 0 && coords.len() % rows == 0);
    let cols = coords.len() / rows;
    let m = Mat::<C64>::from_fn(rows, cols, |i, j| coords[i * cols + j]);
    // singular values come sorted in nonincreasing order
    let svd = m.thin_svd().expect("svd converges on finite input");
    let sv = svd.S().column_vector();
    let sigma1 = sv[0].re;
    let sigma2 = if sv.nrows() > 1 { sv[1].re } else { 0.0 };
    let mut left: Vec<C64> = svd.U().col(0).iter().copied().collect();
    let mut right: Vec<C64> = svd.V().col(0).iter().map(|c| c.conj()).collect();
    let pl = fix_phase(&mut left);
    let pr = fix_phase(&mut right);
    RankOneSplit {
        sigma1,
        sigma2,
        left,
        right,
        coeff: pl * pr * sigma1,
    }
}

/// Peels the composition `parts` (dimensions of each factor, product equal
/// to `coords.len()`) left to right. Returns the factors and the overall
/// coefficient when every level is rank-1 within `eps`, otherwise `None`.
pub fn peel(coords: &[C64], parts: &[usize], eps: f64) -> Option<(Vec<Vec<C64>>, C64)> {
    let mut factors = Vec::with_capacity(parts.len());
    let mut rest = coords.to_vec();
    let mut coeff = C64::new(1.0, 0.0);
    for (idx, &rows) in parts.iter().enumerate() {
        if idx + 1 == parts.len() {
            let norm = rest.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            let mut last: Vec<C64> = rest.iter().map(|c| c / norm).collect();
            let phase = fix_phase(&mut last);
            coeff *= phase * norm;
            factors.push(last);
            break;
        }
        let split = rank_one_split(&rest, rows);
        if !split.is_rank_one(eps) {
            return None;
        }
        coeff *= split.coeff;
        factors.push(split.left);
        rest = split.right;
    }
    Some((factors, coeff))
}

/// Like [`peel`] but always extracts the leading factors, whatever the rank.
pub fn peel_unchecked(coords: &[C64], parts: &[usize]) -> (Vec<Vec<C64>>, C64) {
    peel(coords, parts, f64::INFINITY).expect("infinite tolerance always splits")
}

pub fn kron_all(factors: &[Vec<C64>]) -> Vec<C64> {
    let mut acc = vec![C64::new(1.0, 0.0)];
    for f in factors {
        acc = acc
            .iter()
            .flat_map(|a| f.iter().map(move |b| a * b))
            .collect();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn product_splits_exactly() {
        let a = [c(0.6, 0.0), c(0.0, 0.8)];
        let b = [c(0.0, 1.0), c(1.0, 1.0), c(-2.0, 0.5)];
        let z: Vec<C64> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        let s = rank_one_split(&z, 2);
        assert!(s.is_rank_one(1e-12));
        assert!(s.left[0].im == 0.0 && s.left[0].re > 0.0);
        let rebuilt: Vec<C64> = kron_all(&[s.left.clone(), s.right.clone()])
            .into_iter()
            .map(|x| x * s.coeff)
            .collect();
        for (x, y) in rebuilt.iter().zip(&z) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn square_complex_rank_one() {
        let z = [
            c(0.10062953170291244, 0.0),
            c(0.4402983674046602, -0.29228396023680164),
            c(0.019753932363692002, 0.15643489965987475),
            c(0.5408058175412924, 0.6270949717837045),
        ];
        let s = rank_one_split(&z, 2);
        assert!((s.sigma1 - 1.0).abs() < 1e-12, "{}", s.sigma1);
        assert!(s.is_rank_one(1e-8));
        let rebuilt = kron_all(&[s.left.clone(), s.right.clone()]);
        for (x, y) in rebuilt.iter().zip(&z) {
            assert!((x * s.coeff - y).norm() < 1e-12);
        }
    }

    #[test]
    fn entangled_does_not_split() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let eps = [c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)];
        let s = rank_one_split(&eps, 2);
        assert!((s.sigma2 - h).abs() < 1e-12);
        assert!(!s.is_rank_one(1e-8));
        assert!(peel(&eps, &[2, 2], 1e-8).is_none());
    }

    #[test]
    fn peel_three_factors() {
        let f1 = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let f2 = vec![c(0.6, 0.0), c(0.0, -0.8)];
        let f3 = vec![c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.5)];
        let z: Vec<C64> = kron_all(&[f1.clone(), f2.clone(), f3.clone()])
            .into_iter()
            .map(|x| x * c(0.0, -1.0))
            .collect();
        let (factors, coeff) = peel(&z, &[2, 2, 4], 1e-8).unwrap();
        for (got, want) in factors.iter().zip([&f1, &f2, &f3]) {
            for (x, y) in got.iter().zip(want.iter()) {
                assert!((x - y).norm() < 1e-12);
            }
        }
        assert!((coeff - c(0.0, -1.0)).norm() < 1e-12);
    }
}
