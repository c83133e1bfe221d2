use super::{CellularSheaf, SheafError};
use crate::gf2::{BitVec, CohomologyBasis, GF2Matrix, SparseMatrix};

/// A morphism of cellular sheaves on the same complex induced by a fibre map
/// that commutes with all transports.
#[derive(Clone, Debug)]
pub struct SheafMorphism {
    /// `dim target stalk x dim source stalk` per cell.
    blocks: Vec<GF2Matrix>,
    cochain_maps: Vec<SparseMatrix>,
}

impl SheafMorphism {
    /// `fibre` maps source fibre coordinates to target fibre coordinates in
    /// every chart.
    pub fn from_fibre_map(source: &CellularSheaf, target: &CellularSheaf, fibre: &GF2Matrix) -> Result<Self, SheafError> {
        if fibre.rows() != target.rank() || fibre.cols() != source.rank() {
            return Err(SheafError::NotEquivariant("fibre map has the wrong shape".into()));
        }
        let cells = source.cells();
        if cells.len() != target.cells().len() {
            return Err(SheafError::NotEquivariant("sheaves live on different complexes".into()));
        }
        let mut blocks = Vec::with_capacity(cells.len());
        for c in 0..cells.len() {
            if source.reference_chart(c) != target.reference_chart(c) {
                return Err(SheafError::NotEquivariant(format!("reference charts differ on cell {c}")));
            }
            let image = fibre.mul(source.stalk_basis(c))?;
            let mut cols = Vec::with_capacity(image.cols());
            for k in 0..image.cols() {
                let v = target
                    .stalk_coordinates(c, &image.column(k))
                    .ok_or_else(|| SheafError::NotEquivariant(format!("stalk of cell {c} is not preserved")))?;
                cols.push(v);
            }
            blocks.push(GF2Matrix::from_columns(target.stalk_dim(c), &cols));
        }
        let top = cells.top_dim();
        let mut cochain_maps = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let mut entries = Vec::new();
            for &c in cells.cells_of_dim(d) {
                let c = c as usize;
                let b = &blocks[c];
                for r in 0..b.rows() {
                    for k in b.row(r).ones() {
                        entries.push((target.offset(c) + r, source.offset(c) + k));
                    }
                }
            }
            cochain_maps.push(SparseMatrix::from_entries(target.cochain_dims()[d], source.cochain_dims()[d], entries));
        }
        let m = Self { blocks, cochain_maps };
        m.audit(source, target)?;
        Ok(m)
    }

    pub fn block(&self, cell: usize) -> &GF2Matrix {
        &self.blocks[cell]
    }

    pub fn cochain_map(&self, degree: usize) -> &SparseMatrix {
        &self.cochain_maps[degree]
    }

    pub fn apply(&self, degree: usize, x: &BitVec) -> BitVec {
        self.cochain_maps[degree].mul_vec(x).expect("cochain has the source dimension")
    }

    /// Checks `d ∘ M = M ∘ d` in every degree.
    fn audit(&self, source: &CellularSheaf, target: &CellularSheaf) -> Result<(), SheafError> {
        for k in 0..self.cochain_maps.len() - 1 {
            let lhs = target.coboundary(k).mul(&self.cochain_maps[k])?;
            let rhs = self.cochain_maps[k + 1].mul(&source.coboundary(k))?;
            if lhs != rhs {
                return Err(SheafError::NotEquivariant(format!("cochain map does not commute with d in degree {k}")));
            }
        }
        Ok(())
    }

    pub fn is_injective_on_stalks(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective_on_stalks(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    /// Matrix of the induced map `H^k(source) -> H^k(target)` in the given bases.
    pub fn induced(&self, degree: usize, source: &CohomologyBasis, target: &CohomologyBasis) -> GF2Matrix {
        let cols: Vec<BitVec> = source
            .representatives()
            .iter()
            .map(|z| target.coordinates(&self.apply(degree, z)).expect("cochain maps send cocycles to cocycles"))
            .collect();
        GF2Matrix::from_columns(target.dim(), &cols)
    }
}

/// Checks `im(first) = ker(second)` on every stalk.
pub fn stalkwise_exact(first: &SheafMorphism, second: &SheafMorphism) -> bool {
    first.blocks.iter().zip(&second.blocks).all(|(a, b)| {
        let composite_zero = b.mul(a).map(|m| m.is_zero()).unwrap_or(false);
        composite_zero && a.rank() + b.rank() == b.cols()
    })
}
