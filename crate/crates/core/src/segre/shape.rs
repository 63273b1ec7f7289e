use crate::error::{Error, Result};

/// Factor dimensions `(k_1, ..., k_q)` of `P^{k_1} x ... x P^{k_q}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SegreShape {
    dims: Vec<usize>,
}

impl SegreShape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::ShapeMismatch(format!(
                "shape {dims:?} needs at least one positive dimension"
            )));
        }
        let shape = Self { dims };
        shape
            .dims
            .iter()
            .try_fold(1usize, |acc, &k| acc.checked_mul(k + 1))
            .ok_or_else(|| Error::TooLarge(format!("shape {:?}", shape.dims)))?;
        Ok(shape)
    }

    /// Shape of the blocks of a qubit composition `m_1 + ... + m_q = n`:
    /// each block is `P^{2^{m_i} - 1}`.
    pub fn from_qubit_composition(parts: &[usize]) -> Result<Self> {
        if parts.iter().any(|&m| m == 0 || m >= usize::BITS as usize) {
            return Err(Error::ShapeMismatch(format!("bad composition {parts:?}")));
        }
        Self::new(parts.iter().map(|&m| (1usize << m) - 1).collect())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parts(&self) -> usize {
        self.dims.len()
    }

    /// `N(k_1, ..., k_q) = prod (k_i + 1) - 1`.
    pub fn target_dim(&self) -> usize {
        self.coord_count() - 1
    }

    pub fn coord_count(&self) -> usize {
        self.dims.iter().map(|k| k + 1).product()
    }

    /// Drops the leading factor.
    pub fn tail(&self) -> Option<SegreShape> {
        (self.dims.len() > 1).then(|| SegreShape {
            dims: self.dims[1..].to_vec(),
        })
    }
}

/// `N_m = 2^m - 1`, the dimension of the `m`-qubit projective space.
pub fn qubit_space_dim(m: usize) -> usize {
    (1usize << m) - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_dimension() {
        let s = SegreShape::new(vec![1, 1, 3]).unwrap();
        assert_eq!(s.target_dim(), 15);
        assert_eq!(SegreShape::new(vec![1, 3]).unwrap().target_dim(), 7);
        assert_eq!(SegreShape::from_qubit_composition(&[1, 2]).unwrap().dims(), &[1, 3]);
        assert_eq!(qubit_space_dim(3), 7);
        assert!(SegreShape::new(vec![]).is_err());
        assert!(SegreShape::new(vec![1, 0]).is_err());
        assert_eq!(s.tail().unwrap().dims(), &[1, 3]);
    }
}
