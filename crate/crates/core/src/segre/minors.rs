use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// The 2x2 minor on rows `(j, k)` and columns `(s, t)`, `j < k`, `s < t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MinorIndex {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

/// Every 2x2 minor of a `rows x cols` matrix, rows pairs outermost.
pub fn enumerate_minors(rows: usize, cols: usize) -> impl Iterator<Item = MinorIndex> {
    (0..rows).flat_map(move |j| {
        (j + 1..rows).flat_map(move |k| {
            (0..cols).flat_map(move |s| {
                (s + 1..cols).map(move |t| MinorIndex {
                    rows: (j, k),
                    cols: (s, t),
                })
            })
        })
    })
}

/// `A[j,s] A[k,t] - A[j,t] A[k,s]`.
pub fn minor_value(m: &DMatrix<C64>, idx: &MinorIndex) -> C64 {
    let (j, k) = idx.rows;
    let (s, t) = idx.cols;
    m[(j, s)] * m[(k, t)] - m[(j, t)] * m[(k, s)]
}

/// Number of 2x2 minors of a `(k+1) x (l+1)` matrix: `k(k+1) l(l+1) / 4`.
pub fn minor_count(k: usize, ell: usize) -> usize {
    k * (k + 1) * ell * (ell + 1) / 4
}

/// Largest `|M_I|` over all minors, with the index attaining it.
pub fn worst_minor(m: &DMatrix<C64>) -> (f64, Option<MinorIndex>) {
    let mut best = (0.0, None);
    for idx in enumerate_minors(m.nrows(), m.ncols()) {
        let v = minor_value(m, &idx).norm();
        if v > best.0 || best.1.is_none() {
            best = (v, Some(idx));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_enumeration() {
        assert_eq!(minor_count(1, 1), 1);
        assert_eq!(minor_count(1, 3), 6);
        assert_eq!(minor_count(3, 3), 36);
        for k in 1..=7 {
            for l in 1..=7 {
                assert_eq!(minor_count(k, l), enumerate_minors(k + 1, l + 1).count());
            }
        }
    }

    #[test]
    fn single_minor_of_two_by_two() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(1.0, 0.0),
                C64::new(2.0, 0.0),
                C64::new(3.0, 0.0),
                C64::new(4.0, 0.0),
            ],
        );
        let all: Vec<_> = enumerate_minors(2, 2).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(minor_value(&m, &all[0]), C64::new(-2.0, 0.0));
        assert_eq!(worst_minor(&m).0, 2.0);
    }
}
