use super::BitVec;

/// Incrementally built echelon basis of a subspace of GF(2)^n.
///
/// Every stored row carries a tag recording which tagged generators it was
/// built from, so a reduction also reports the combination used. This is how
/// quotient coordinates (cohomology classes) are read off.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    tag_len: usize,
    rows: Vec<BitVec>,
    tags: Vec<BitVec>,
    pivot_row: Vec<Option<u32>>,
}

impl EchelonBasis {
    pub fn new(len: usize, tag_len: usize) -> Self {
        Self { len, tag_len, rows: Vec::new(), tags: Vec::new(), pivot_row: vec![None; len] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    /// Reduces `v` against the basis. Returns the residual and the tag
    /// combination of the rows that were added.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut r = v.clone();
        let mut tag = BitVec::zeros(self.tag_len);
        let mut pos = 0;
        while let Some(c) = r.first_one_from(pos) {
            if let Some(p) = self.pivot_row[c] {
                let p = p as usize;
                r.xor_assign_from(&self.rows[p], c);
                tag.xor_assign(&self.tags[p]);
            } else {
                pos = c + 1;
            }
        }
        (r, tag)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Inserts `v` with the given tag; returns false if `v` was already in the span.
    pub fn insert(&mut self, v: &BitVec, tag: BitVec) -> bool {
        let mut r = v.clone();
        let mut t = tag;
        let mut pos = 0;
        while let Some(c) = r.first_one_from(pos) {
            match self.pivot_row[c] {
                Some(p) => {
                    let p = p as usize;
                    r.xor_assign_from(&self.rows[p], c);
                    t.xor_assign(&self.tags[p]);
                }
                None => {
                    self.pivot_row[c] = Some(self.rows.len() as u32);
                    self.rows.push(r);
                    self.tags.push(t);
                    return true;
                }
            }
            pos = c;
        }
        false
    }

    pub fn insert_untagged(&mut self, v: &BitVec) -> bool {
        self.insert(v, BitVec::zeros(self.tag_len))
    }
}

/// Basis of a quotient `Z / B` given by representatives, with coordinates.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    echelon: EchelonBasis,
    representatives: Vec<BitVec>,
}

impl QuotientBasis {
    /// `boundaries` spans B, `cycles` spans Z (with B contained in Z).
    pub fn new(len: usize, boundaries: &[BitVec], cycles: &[BitVec]) -> Self {
        let mut b = EchelonBasis::new(len, 0);
        for v in boundaries {
            b.insert_untagged(v);
        }
        let mut reps = Vec::new();
        for v in cycles {
            if b.insert_untagged(v) {
                reps.push(v.clone());
            }
        }
        let mut echelon = EchelonBasis::new(len, reps.len());
        for v in boundaries {
            echelon.insert_untagged(v);
        }
        for (i, v) in reps.iter().enumerate() {
            echelon.insert(v, BitVec::unit(reps.len(), i));
        }
        Self { echelon, representatives: reps }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[BitVec] {
        &self.representatives
    }

    /// Coordinates of the class of `z`, or `None` if `z` is not in `Z`.
    pub fn coordinates(&self, z: &BitVec) -> Option<BitVec> {
        let (res, tag) = self.echelon.reduce(z);
        res.is_zero().then_some(tag)
    }
}
