use std::collections::HashMap;

use crate::gf2::{GF2ChainComplex, Gf2Error, SparseMatrix};

/// A finite regular cell complex given by its face poset.
///
/// Each cell records its codimension-one faces and an optional chart id;
/// cells without a chart are the cells of the discriminant. Cells of
/// dimension at most two that are simplices also record their vertices
/// (0-cell ids, ascending), which is what cup products need.
#[derive(Clone, Debug, Default)]
pub struct CellComplex {
    dims: Vec<u8>,
    faces: Vec<Vec<u32>>,
    cofaces: Vec<Vec<u32>>,
    charts: Vec<Option<u32>>,
    vertices: Vec<Option<Vec<u32>>>,
    by_dim: Vec<Vec<u32>>,
    index_in_dim: Vec<u32>,
    simplex_lookup: HashMap<Vec<u32>, u32>,
}

impl CellComplex {
    pub fn new(dims: Vec<u8>, faces: Vec<Vec<u32>>, charts: Vec<Option<u32>>, vertices: Vec<Option<Vec<u32>>>) -> Self {
        let n = dims.len();
        assert!(faces.len() == n && charts.len() == n && vertices.len() == n);
        let top = dims.iter().copied().max().map_or(0, |d| d as usize + 1);
        let mut by_dim = vec![Vec::new(); top];
        let mut index_in_dim = vec![0; n];
        for (c, &d) in dims.iter().enumerate() {
            index_in_dim[c] = by_dim[d as usize].len() as u32;
            by_dim[d as usize].push(c as u32);
        }
        let mut cofaces = vec![Vec::new(); n];
        for (c, fs) in faces.iter().enumerate() {
            for &f in fs {
                debug_assert_eq!(dims[f as usize] + 1, dims[c]);
                cofaces[f as usize].push(c as u32);
            }
        }
        let mut simplex_lookup = HashMap::new();
        for (c, v) in vertices.iter().enumerate() {
            if let Some(v) = v {
                simplex_lookup.insert(v.clone(), c as u32);
            }
        }
        Self { dims, faces, cofaces, charts, vertices, by_dim, index_in_dim, simplex_lookup }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, cell: usize) -> usize {
        self.dims[cell] as usize
    }

    pub fn top_dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn faces(&self, cell: usize) -> &[u32] {
        &self.faces[cell]
    }

    pub fn cofaces(&self, cell: usize) -> &[u32] {
        &self.cofaces[cell]
    }

    pub fn chart(&self, cell: usize) -> Option<u32> {
        self.charts[cell]
    }

    pub fn in_discriminant(&self, cell: usize) -> bool {
        self.charts[cell].is_none()
    }

    pub fn vertices(&self, cell: usize) -> Option<&[u32]> {
        self.vertices[cell].as_deref()
    }

    /// The simplex cell with exactly these (ascending) vertices.
    pub fn simplex(&self, vertices: &[u32]) -> Option<usize> {
        self.simplex_lookup.get(vertices).map(|&c| c as usize)
    }

    pub fn cells_of_dim(&self, d: usize) -> &[u32] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, d: usize) -> usize {
        self.cells_of_dim(d).len()
    }

    pub fn index_in_dim(&self, cell: usize) -> usize {
        self.index_in_dim[cell] as usize
    }

    /// Cells of the closed star: `cell` and everything above it.
    pub fn up_set(&self, cell: usize) -> Vec<usize> {
        let mut seen = vec![cell];
        let mut i = 0;
        while i < seen.len() {
            for &c in &self.cofaces[seen[i]] {
                if !seen.contains(&(c as usize)) {
                    seen.push(c as usize);
                }
            }
            i += 1;
        }
        seen
    }

    /// Cellular cochain complex with constant GF(2) coefficients.
    pub fn constant_cochains(&self) -> Result<GF2ChainComplex, Gf2Error> {
        let top = self.top_dim();
        let dims: Vec<usize> = (0..=top).map(|d| self.count(d)).collect();
        let mut ds = Vec::new();
        for d in 0..top {
            let entries = self.cells_of_dim(d + 1).iter().enumerate().flat_map(|(r, &c)| {
                self.faces[c as usize].iter().map(move |&f| (r, self.index_in_dim[f as usize] as usize))
            });
            ds.push(SparseMatrix::from_entries(dims[d + 1], dims[d], entries));
        }
        GF2ChainComplex::new(dims, ds)
    }

    /// Euler characteristic (alternating cell count).
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.top_dim()).map(|d| if d % 2 == 0 { self.count(d) as i64 } else { -(self.count(d) as i64) }).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_cohomology() {
        // two vertices, two edges
        let c = CellComplex::new(
            vec![0, 0, 1, 1],
            vec![vec![], vec![], vec![0, 1], vec![0, 1]],
            vec![Some(0); 4],
            vec![None; 4],
        );
        assert_eq!(c.constant_cochains().unwrap().cohomology_dims(), vec![1, 1]);
        assert_eq!(c.euler_characteristic(), 0);
        assert_eq!(c.up_set(0).len(), 3);
    }
}
