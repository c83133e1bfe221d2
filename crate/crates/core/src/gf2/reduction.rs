use std::collections::HashMap;

use super::sparse::xor_sorted;
use super::{BitVec, SparseMatrix};

/// Column reduction of a sparse matrix by largest row index ("low").
///
/// After reduction the nonzero columns have distinct lows and span the
/// column space; the recorded combinations of the columns that reduced to
/// zero span the kernel.
#[derive(Clone, Debug)]
pub struct ColumnReduction {
    reduced: Vec<Vec<u32>>,
    combos: Vec<Vec<u32>>,
    low_to_col: HashMap<u32, u32>,
}

impl ColumnReduction {
    /// Reduces the columns of `m`.
    pub fn new(m: &SparseMatrix) -> Self {
        let cols = m.transpose();
        let mut reduced: Vec<Vec<u32>> = Vec::with_capacity(cols.rows());
        let mut combos: Vec<Vec<u32>> = Vec::with_capacity(cols.rows());
        let mut low_to_col: HashMap<u32, u32> = HashMap::new();
        for j in 0..cols.rows() {
            let mut col = cols.row(j).to_vec();
            let mut combo = vec![j as u32];
            while let Some(&low) = col.last() {
                match low_to_col.get(&low) {
                    Some(&i) => {
                        col = xor_sorted(&col, &reduced[i as usize]);
                        combo = xor_sorted(&combo, &combos[i as usize]);
                    }
                    None => {
                        low_to_col.insert(low, j as u32);
                        break;
                    }
                }
            }
            reduced.push(col);
            combos.push(combo);
        }
        Self { reduced, combos, low_to_col }
    }

    pub fn rank(&self) -> usize {
        self.low_to_col.len()
    }

    /// Column indices whose reduced column vanished.
    pub fn zero_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.reduced.iter().enumerate().filter(|(_, c)| c.is_empty()).map(|(j, _)| j)
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.reduced[j]
    }

    /// Combination of original columns producing reduced column `j`; its
    /// largest entry is `j`.
    pub fn combination(&self, j: usize) -> &[u32] {
        &self.combos[j]
    }

    pub fn is_low(&self, row: usize) -> bool {
        self.low_to_col.contains_key(&(row as u32))
    }

    pub fn pivot_column(&self, low: usize) -> Option<usize> {
        self.low_to_col.get(&(low as u32)).map(|&c| c as usize)
    }
}

/// Basis of `H^k = ker d_k / im d_{k-1}` with triangular reducers, so the
/// class of any cocycle can be read off by sparse reduction.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    len: usize,
    representatives: Vec<Vec<u32>>,
    // largest index -> (vector, class index if it is a representative)
    reducers: HashMap<u32, (Vec<u32>, Option<u32>)>,
}

impl CohomologyBasis {
    /// `outgoing` is `d_k` (may be `None` in the top degree), `incoming` is
    /// `d_{k-1}` (may be `None` in degree 0); `len = dim C^k`.
    pub fn new(len: usize, outgoing: Option<&SparseMatrix>, incoming: Option<&SparseMatrix>) -> Self {
        let mut reducers = HashMap::new();
        let mut boundary_lows = std::collections::HashSet::new();
        if let Some(d) = incoming {
            let red = ColumnReduction::new(d);
            for j in 0..d.cols() {
                let c = red.column(j);
                if let Some(&low) = c.last() {
                    boundary_lows.insert(low);
                    reducers.insert(low, (c.to_vec(), None));
                }
            }
        }
        let cycles: Vec<Vec<u32>> = match outgoing {
            Some(d) => {
                let red = ColumnReduction::new(d);
                red.zero_columns().map(|j| red.combination(j).to_vec()).collect()
            }
            None => (0..len as u32).map(|j| vec![j]).collect(),
        };
        let mut representatives = Vec::new();
        for z in cycles {
            let low = *z.last().expect("kernel vectors are nonzero");
            if !boundary_lows.contains(&low) {
                reducers.insert(low, (z.clone(), Some(representatives.len() as u32)));
                representatives.push(z);
            }
        }
        Self { len, representatives, reducers }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn representative(&self, i: usize) -> BitVec {
        let ones: Vec<usize> = self.representatives[i].iter().map(|&c| c as usize).collect();
        BitVec::from_ones(self.len, &ones)
    }

    pub fn representatives(&self) -> Vec<BitVec> {
        (0..self.dim()).map(|i| self.representative(i)).collect()
    }

    /// Class coordinates of a cocycle, or `None` if `z` is not a cocycle.
    pub fn coordinates(&self, z: &BitVec) -> Option<BitVec> {
        let mut v: Vec<u32> = z.ones().map(|c| c as u32).collect();
        let mut coords = BitVec::zeros(self.dim());
        while let Some(&low) = v.last() {
            let (r, class) = self.reducers.get(&low)?;
            v = xor_sorted(&v, r);
            if let Some(c) = class {
                coords.flip(*c as usize);
            }
        }
        Some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_classes() {
        // circle with 3 vertices and 3 edges: d0 is 3x3
        let d0 = SparseMatrix::from_entries(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 0), (2, 2)]);
        let h0 = CohomologyBasis::new(3, Some(&d0), None);
        assert_eq!(h0.dim(), 1);
        let h1 = CohomologyBasis::new(3, None, Some(&d0));
        assert_eq!(h1.dim(), 1);
        let a = h1.coordinates(&BitVec::unit(3, 0)).unwrap();
        let b = h1.coordinates(&BitVec::unit(3, 2)).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_zero());
        assert!(h1.coordinates(&BitVec::from_ones(3, &[0, 1])).unwrap().is_zero());
        assert!(h0.coordinates(&BitVec::unit(3, 0)).is_none());
    }
}
