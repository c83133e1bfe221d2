use super::{BitVec, Gf2Error};

/// Dense GF(2) matrix stored as packed bit rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: GF2Matrix,
    pub pivots: Vec<usize>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BitVec::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from explicit 0/1 rows; any nonzero entry counts as 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, Gf2Error> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Gf2Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.push(BitVec::from_bools(r.iter().map(|&x| x % 2 == 1)));
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn from_bit_rows(cols: usize, data: Vec<BitVec>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "row length mismatch");
        Self { rows: data.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[BitVec] {
        &self.data
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_bools((0..self.rows).map(|r| self.get(r, c)))
    }

    pub fn columns(&self) -> Vec<BitVec> {
        self.transpose().data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec, Gf2Error> {
        if x.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok(BitVec::from_bools(self.data.iter().map(|row| row.dot(x))))
    }

    pub fn mul(&self, other: &GF2Matrix) -> Result<GF2Matrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = GF2Matrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.ones() {
                out.data[r].xor_assign(&other.data[k]);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &GF2Matrix) -> Result<GF2Matrix, Gf2Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Gf2Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.xor_assign(b);
        }
        Ok(out)
    }

    /// Reduced row echelon form. Pivoting takes the first row (in current
    /// order) with a one in the pivot column.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.data[i].get(c)) else {
                continue;
            };
            m.data.swap(r, p);
            let pivot_row = m.data[r].clone();
            for i in 0..m.rows {
                if i != r && m.data[i].get(c) {
                    m.data[i].xor_assign_from(&pivot_row, c);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut() {
                if row.get(c) {
                    row.xor_assign_from(pivot_row, c);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the null space as the columns of a `cols x k` matrix.
    pub fn kernel_basis(&self) -> GF2Matrix {
        let vecs = self.kernel_vectors();
        GF2Matrix::from_columns(self.cols, &vecs)
    }

    pub fn kernel_vectors(&self) -> Vec<BitVec> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (i, &p) in pivots.iter().enumerate() {
                if matrix.get(i, free) {
                    v.set(p, true);
                }
            }
            out.push(v);
        }
        out
    }

    /// Solves `self * x = b`; `Ok(None)` when the system is inconsistent.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>, Gf2Error> {
        if b.len() != self.rows {
            return Err(Gf2Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let augmented = GF2Matrix::from_bit_rows(
            self.cols + 1,
            self.data.iter().enumerate().map(|(i, row)| row.concat(&BitVec::from_bools([b.get(i)]))).collect(),
        );
        let Rref { matrix, pivots } = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if matrix.get(i, self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<GF2Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = GF2Matrix::from_bit_rows(
            2 * n,
            self.data.iter().enumerate().map(|(i, row)| row.concat(&BitVec::unit(n, i))).collect(),
        );
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(GF2Matrix::from_bit_rows(n, matrix.data.iter().map(|r| r.slice(n, 2 * n)).collect()))
    }

    /// Plain text dump: a `rows cols` header, then one line of 0/1 characters per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for row in &self.data {
            s.push_str(&row.to_bit_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, Gf2Error> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Gf2Error::Parse("missing header".into()))?;
        let mut parts = header.split_whitespace();
        let mut next_num = |what: &str| -> Result<usize, Gf2Error> {
            parts
                .next()
                .ok_or_else(|| Gf2Error::Parse(format!("missing {what} in header")))?
                .parse()
                .map_err(|e| Gf2Error::Parse(format!("bad {what}: {e}")))
        };
        let rows = next_num("rows")?;
        let cols = next_num("cols")?;
        let mut data = Vec::with_capacity(rows);
        for (i, line) in lines.enumerate() {
            if line.len() != cols {
                return Err(Gf2Error::Parse(format!("row {i} has {} entries, expected {cols}", line.len())));
            }
            let mut v = BitVec::zeros(cols);
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => v.set(j, true),
                    other => return Err(Gf2Error::Parse(format!("invalid character {other:?} in row {i}"))),
                }
            }
            data.push(v);
        }
        if data.len() != rows {
            return Err(Gf2Error::Parse(format!("expected {rows} rows, found {}", data.len())));
        }
        Ok(Self { rows, cols, data })
    }
}
