use std::collections::HashSet;

use rayon::prelude::*;

use super::{BitVec, CohomologyBasis, Gf2Error, SparseMatrix};

/// Cochain complex over GF(2): `d_k : C^k -> C^{k+1}` for `k = 0..top`.
#[derive(Clone, Debug)]
pub struct GF2ChainComplex {
    dims: Vec<usize>,
    differentials: Vec<SparseMatrix>,
    labels: Vec<Vec<String>>,
}

impl GF2ChainComplex {
    /// `differentials[k]` must be a `dims[k+1] x dims[k]` matrix, and
    /// consecutive differentials must compose to zero.
    pub fn new(dims: Vec<usize>, differentials: Vec<SparseMatrix>) -> Result<Self, Gf2Error> {
        if differentials.len() + 1 != dims.len() {
            return Err(Gf2Error::DimensionMismatch { expected: dims.len().saturating_sub(1), found: differentials.len() });
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.cols() != dims[k] || d.rows() != dims[k + 1] {
                return Err(Gf2Error::DimensionMismatch { expected: dims[k] * dims[k + 1], found: d.rows() * d.cols() });
            }
        }
        for k in 0..differentials.len().saturating_sub(1) {
            if !differentials[k + 1].mul(&differentials[k])?.is_zero() {
                return Err(Gf2Error::NotAComplex { degree: k });
            }
        }
        Ok(Self { dims, differentials, labels: Vec::new() })
    }

    /// Attaches basis labels; labels within a degree must be distinct.
    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self, Gf2Error> {
        if labels.len() != self.dims.len() {
            return Err(Gf2Error::DimensionMismatch { expected: self.dims.len(), found: labels.len() });
        }
        for (k, l) in labels.iter().enumerate() {
            if l.len() != self.dims[k] {
                return Err(Gf2Error::DimensionMismatch { expected: self.dims[k], found: l.len() });
            }
            let mut seen = HashSet::new();
            for s in l {
                if !seen.insert(s) {
                    return Err(Gf2Error::DuplicateLabel { degree: k, label: s.clone() });
                }
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn differential(&self, k: usize) -> &SparseMatrix {
        &self.differentials[k]
    }

    pub fn differentials(&self) -> &[SparseMatrix] {
        &self.differentials
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    /// Ranks of all differentials, computed in parallel.
    pub fn ranks(&self) -> Vec<usize> {
        self.differentials.par_iter().map(SparseMatrix::rank).collect()
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.dims.len())
            .map(|k| {
                let out = if k < ranks.len() { ranks[k] } else { 0 };
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                self.dims[k] - out - inc
            })
            .collect()
    }

    pub fn is_cocycle(&self, k: usize, x: &BitVec) -> Result<bool, Gf2Error> {
        if k >= self.differentials.len() {
            return Ok(true);
        }
        Ok(self.differentials[k].mul_vec(x)?.is_zero())
    }

    /// Basis of `H^k` as cocycle representatives with a coordinate map.
    pub fn cohomology_basis(&self, k: usize) -> CohomologyBasis {
        let out = self.differentials.get(k);
        let inc = if k > 0 { self.differentials.get(k - 1) } else { None };
        CohomologyBasis::new(self.dims[k], out, inc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_differentials_give_space_dims() {
        let c = GF2ChainComplex::new(vec![2, 3], vec![SparseMatrix::zeros(3, 2)]).unwrap();
        assert_eq!(c.cohomology_dims(), vec![2, 3]);
    }

    #[test]
    fn identity_is_acyclic() {
        let c = GF2ChainComplex::new(vec![1, 1], vec![SparseMatrix::from_entries(1, 1, [(0, 0)])]).unwrap();
        assert_eq!(c.cohomology_dims(), vec![0, 0]);
    }

    #[test]
    fn rejects_non_complex() {
        let d0 = SparseMatrix::from_entries(1, 1, [(0, 0)]);
        let d1 = SparseMatrix::from_entries(1, 1, [(0, 0)]);
        assert!(matches!(GF2ChainComplex::new(vec![1, 1, 1], vec![d0, d1]), Err(Gf2Error::NotAComplex { degree: 0 })));
    }

    #[test]
    fn basis_dims_match_ranks() {
        let d0 = SparseMatrix::from_entries(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 0), (2, 2)]);
        let c = GF2ChainComplex::new(vec![3, 3], vec![d0]).unwrap();
        assert_eq!(c.cohomology_basis(0).dim(), 1);
        assert_eq!(c.cohomology_basis(1).dim(), 1);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let c = GF2ChainComplex::new(vec![2], vec![]).unwrap();
        let err = c.with_labels(vec![vec!["a".into(), "a".into()]]).unwrap_err();
        assert!(matches!(err, Gf2Error::DuplicateLabel { .. }));
    }
}
