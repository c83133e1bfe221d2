use super::{BitVec, GF2Matrix, Gf2Error};

/// Sparse GF(2) matrix: each row is a sorted list of the columns holding a one.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u32>>,
}

/// Symmetric difference of two sorted index lists.
pub(crate) fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Builds from (row, col) pairs; repeated pairs cancel mod 2.
    pub fn from_entries<I: IntoIterator<Item = (usize, usize)>>(rows: usize, cols: usize, entries: I) -> Self {
        let mut data = vec![Vec::new(); rows];
        for (r, c) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) out of bounds for {rows}x{cols}");
            data[r].push(c as u32);
        }
        for row in &mut data {
            row.sort_unstable();
            let mut out: Vec<u32> = Vec::with_capacity(row.len());
            for &c in row.iter() {
                if out.last() == Some(&c) {
                    out.pop();
                } else {
                    out.push(c);
                }
            }
            *row = out;
        }
        Self { rows, cols, data }
    }

    pub fn from_dense(m: &GF2Matrix) -> Self {
        let data = (0..m.rows()).map(|r| m.row(r).ones().map(|c| c as u32).collect()).collect();
        Self { rows: m.rows(), cols: m.cols(), data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].binary_search(&(c as u32)).is_ok()
    }

    pub fn to_dense(&self) -> GF2Matrix {
        let mut m = GF2Matrix::zeros(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for &c in row {
                m.set(r, c as usize, true);
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for &c in row {
                data[c as usize].push(r as u32);
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec, Gf2Error> {
        if x.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok(BitVec::from_bools(self.data.iter().map(|row| row.iter().filter(|&&c| x.get(c as usize)).count() % 2 == 1)))
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut data = Vec::with_capacity(self.rows);
        let mut acc = vec![false; other.cols];
        let mut touched = Vec::new();
        for row in &self.data {
            for &k in row {
                for &c in &other.data[k as usize] {
                    if !acc[c as usize] {
                        touched.push(c);
                    }
                    acc[c as usize] ^= true;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let out: Vec<u32> = touched.drain(..).filter(|&c| acc[c as usize]).collect();
            for &c in &out {
                acc[c as usize] = false;
            }
            data.push(out);
        }
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, data })
    }

    /// GF(2) rank by sparse elimination on leading columns. Rows are fed in
    /// order of increasing weight; a row whose working copy grows dense is
    /// finished off in packed form.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminate along the shorter dimension.
        if self.cols > self.rows {
            return self.transpose().rank();
        }
        sparse_rank(self.cols, &self.data)
    }
}

fn sparse_rank(cols: usize, rows: &[Vec<u32>]) -> usize {
    let dense_threshold = (cols / 48).max(64);
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| (rows[i].len(), i));

    enum Pivot {
        Sparse(Vec<u32>),
        Dense(BitVec),
    }
    let mut pivot_of: Vec<Option<usize>> = vec![None; cols];
    let mut pivots: Vec<Pivot> = Vec::new();

    for &ri in &order {
        let mut work = rows[ri].clone();
        let mut dense: Option<BitVec> = None;
        loop {
            if let Some(d) = dense.as_mut() {
                let Some(lead) = d.first_one() else { break };
                match pivot_of[lead] {
                    None => {
                        pivot_of[lead] = Some(pivots.len());
                        pivots.push(Pivot::Dense(dense.take().unwrap()));
                        break;
                    }
                    Some(p) => match &pivots[p] {
                        Pivot::Sparse(s) => {
                            for &c in s {
                                d.flip(c as usize);
                            }
                        }
                        Pivot::Dense(pd) => d.xor_assign_from(pd, lead),
                    },
                }
            } else {
                let Some(&lead) = work.first() else { break };
                match pivot_of[lead as usize] {
                    None => {
                        pivot_of[lead as usize] = Some(pivots.len());
                        pivots.push(Pivot::Sparse(std::mem::take(&mut work)));
                        break;
                    }
                    Some(p) => match &pivots[p] {
                        Pivot::Sparse(s) => {
                            work = xor_sorted(&work, s);
                            if work.len() > dense_threshold {
                                let mut d = BitVec::zeros(cols);
                                for &c in &work {
                                    d.set(c as usize, true);
                                }
                                dense = Some(d);
                            }
                        }
                        Pivot::Dense(pd) => {
                            let mut d = BitVec::zeros(cols);
                            for &c in &work {
                                d.set(c as usize, true);
                            }
                            d.xor_assign_from(pd, lead as usize);
                            dense = Some(d);
                        }
                    },
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_entries_cancel() {
        let m = SparseMatrix::from_entries(2, 2, [(0, 0), (0, 0), (1, 1), (0, 1)]);
        assert_eq!(m.row(0), &[1]);
        assert_eq!(m.row(1), &[1]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn mul_matches_dense() {
        let a = SparseMatrix::from_entries(3, 4, [(0, 0), (0, 3), (1, 1), (2, 2), (2, 3)]);
        let b = SparseMatrix::from_entries(4, 2, [(0, 0), (1, 1), (2, 0), (3, 0), (3, 1)]);
        let prod = a.mul(&b).unwrap().to_dense();
        let expect = a.to_dense().mul(&b.to_dense()).unwrap();
        assert_eq!(prod, expect);
    }
}
