use std::collections::HashMap;
use std::sync::Arc;

use super::{LocalSystem, SheafError, SheafLabel};
use crate::affine_base::CellComplex;
use crate::gf2::{BitVec, CohomologyBasis, GF2ChainComplex, GF2Matrix, SparseMatrix};

/// Sections of the pushforward over the open star of a Δ-cell: one fibre
/// vector per chart met by the star, recorded for each basis section.
#[derive(Clone, Debug)]
struct StarSections {
    charts: Vec<u32>,
    /// `values[c]` is `rank x dim`: column `k` is basis section `k` in chart `charts[c]`.
    values: Vec<GF2Matrix>,
}

impl StarSections {
    fn at(&self, chart: u32) -> Option<&GF2Matrix> {
        self.charts.iter().position(|&c| c == chart).map(|i| &self.values[i])
    }
}

/// A constructible sheaf on a regular cell complex given by stalks and
/// restriction maps.
///
/// Away from Δ the stalk of a cell is the fibre of the local system in the
/// cell's chart with its standard basis. On a Δ-cell the stalk is the space
/// of sections over the part of its open star outside Δ; it is represented
/// by the values of a basis of sections in a reference chart.
#[derive(Clone, Debug)]
pub struct CellularSheaf {
    label: SheafLabel,
    rank: usize,
    cells: Arc<CellComplex>,
    ref_chart: Vec<u32>,
    /// `rank x dim` per cell: stalk basis evaluated in the reference chart.
    basis: Vec<GF2Matrix>,
    star: Vec<Option<StarSections>>,
    /// aligned with `cells.faces(c)`: restriction from the face to `c`.
    restrictions: Vec<Vec<GF2Matrix>>,
    offsets: Vec<usize>,
    degree_dims: Vec<usize>,
}

/// A cochain of a cellular sheaf: stalk coordinates on every cell of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub label: SheafLabel,
    pub values: BitVec,
}

fn solve_in_basis(basis: &GF2Matrix, v: &BitVec) -> Option<BitVec> {
    basis.solve(v).ok().flatten()
}

impl CellularSheaf {
    /// Pushforward of a local system from the complement of Δ.
    pub fn build(cells: Arc<CellComplex>, system: &LocalSystem) -> Result<Self, SheafError> {
        let n = cells.len();
        let rank = system.rank();
        let mut ref_chart = vec![0u32; n];
        let mut basis = Vec::with_capacity(n);
        let mut star: Vec<Option<StarSections>> = vec![None; n];
        for c in 0..n {
            match cells.chart(c) {
                Some(ch) => {
                    ref_chart[c] = ch;
                    basis.push(GF2Matrix::identity(rank));
                }
                None => {
                    let s = star_sections(&cells, system, c)?;
                    let r = *s.charts.iter().min().ok_or(SheafError::EmptyStar(c))?;
                    ref_chart[c] = r;
                    basis.push(s.at(r).expect("reference chart is in the star").clone());
                    star[c] = Some(s);
                }
            }
        }
        let mut restrictions = Vec::with_capacity(n);
        for c in 0..n {
            let mut row = Vec::with_capacity(cells.faces(c).len());
            for &f in cells.faces(c) {
                let f = f as usize;
                let target_chart = ref_chart[c];
                let value = match &star[f] {
                    None => {
                        let t = system
                            .transport(ref_chart[f], target_chart)
                            .ok_or(SheafError::MissingTransport(ref_chart[f], target_chart))?;
                        t.mul(&basis[f]).expect("shapes")
                    }
                    Some(s) => s.at(target_chart).ok_or(SheafError::Inconsistent(f, c))?.clone(),
                };
                let block = if star[c].is_none() {
                    value
                } else {
                    let mut cols = Vec::with_capacity(value.cols());
                    for k in 0..value.cols() {
                        cols.push(solve_in_basis(&basis[c], &value.column(k)).ok_or(SheafError::Inconsistent(f, c))?);
                    }
                    GF2Matrix::from_columns(basis[c].cols(), &cols)
                };
                row.push(block);
            }
            restrictions.push(row);
        }
        let top = cells.top_dim();
        let mut offsets = vec![0; n];
        let mut degree_dims = vec![0; top + 1];
        for d in 0..=top {
            for &c in cells.cells_of_dim(d) {
                offsets[c as usize] = degree_dims[d];
                degree_dims[d] += basis[c as usize].cols();
            }
        }
        Ok(Self { label: system.label(), rank, cells, ref_chart, basis, star, restrictions, offsets, degree_dims })
    }

    pub fn label(&self) -> SheafLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cells(&self) -> &CellComplex {
        &self.cells
    }

    pub fn shared_cells(&self) -> Arc<CellComplex> {
        Arc::clone(&self.cells)
    }

    pub fn stalk_dim(&self, cell: usize) -> usize {
        self.basis[cell].cols()
    }

    pub fn reference_chart(&self, cell: usize) -> u32 {
        self.ref_chart[cell]
    }

    /// Stalk basis evaluated in the reference chart (`rank x dim`).
    pub fn stalk_basis(&self, cell: usize) -> &GF2Matrix {
        &self.basis[cell]
    }

    pub fn offset(&self, cell: usize) -> usize {
        self.offsets[cell]
    }

    pub fn cochain_dims(&self) -> &[usize] {
        &self.degree_dims
    }

    /// Restriction from `face` to `cell` (`dim cell x dim face`).
    pub fn restriction(&self, face: usize, cell: usize) -> Option<&GF2Matrix> {
        let i = self.cells.faces(cell).iter().position(|&f| f as usize == face)?;
        Some(&self.restrictions[cell][i])
    }

    /// Restriction along a chain of incidences `face < ... < cell`.
    pub fn restriction_along(&self, chain: &[usize]) -> Option<GF2Matrix> {
        let mut m = GF2Matrix::identity(self.stalk_dim(chain[0]));
        for w in chain.windows(2) {
            m = self.restriction(w[0], w[1])?.mul(&m).ok()?;
        }
        Some(m)
    }

    /// Coordinates of a fibre vector (in the reference chart) in the stalk basis.
    pub fn stalk_coordinates(&self, cell: usize, fibre: &BitVec) -> Option<BitVec> {
        if self.star[cell].is_none() {
            return Some(fibre.clone());
        }
        solve_in_basis(&self.basis[cell], fibre)
    }

    /// The fibre vector (in the reference chart) of stalk coordinates.
    pub fn fibre_value(&self, cell: usize, coords: &BitVec) -> BitVec {
        self.basis[cell].mul_vec(coords).expect("stalk coordinates have the stalk dimension")
    }

    /// Coboundary `d_k`.
    pub fn coboundary(&self, k: usize) -> SparseMatrix {
        let rows = self.degree_dims[k + 1];
        let cols = self.degree_dims[k];
        let mut entries = Vec::new();
        for &c in self.cells.cells_of_dim(k + 1) {
            let c = c as usize;
            for (i, &f) in self.cells.faces(c).iter().enumerate() {
                let block = &self.restrictions[c][i];
                let (ro, co) = (self.offsets[c], self.offsets[f as usize]);
                for r in 0..block.rows() {
                    for col in block.row(r).ones() {
                        entries.push((ro + r, co + col));
                    }
                }
            }
        }
        SparseMatrix::from_entries(rows, cols, entries)
    }

    pub fn cochain_complex(&self) -> Result<GF2ChainComplex, SheafError> {
        let top = self.cells.top_dim();
        let ds = (0..top).map(|k| self.coboundary(k)).collect();
        Ok(GF2ChainComplex::new(self.degree_dims.clone(), ds)?)
    }

    /// Values of a cochain on one cell, as stalk coordinates.
    pub fn value(&self, cochain: &Cochain, cell: usize) -> BitVec {
        let o = self.offsets[cell];
        cochain.values.slice(o, o + self.stalk_dim(cell))
    }

    pub fn zero_cochain(&self, degree: usize) -> Cochain {
        Cochain { degree, label: self.label, values: BitVec::zeros(self.degree_dims[degree]) }
    }

    /// Checks that restrictions compose consistently over every pair of
    /// incidences `a < b < c`.
    pub fn check_consistency(&self) -> Result<(), SheafError> {
        for c in 0..self.cells.len() {
            for (i, &b) in self.cells.faces(c).iter().enumerate() {
                for &a in self.cells.faces(b as usize) {
                    let lhs = self.restrictions[c][i].mul(self.restriction(a as usize, b as usize).unwrap())?;
                    // the other route through a second face containing a
                    for (j, &b2) in self.cells.faces(c).iter().enumerate() {
                        if j == i {
                            continue;
                        }
                        if let Some(r) = self.restriction(a as usize, b2 as usize) {
                            if self.restrictions[c][j].mul(r)? != lhs {
                                return Err(SheafError::Inconsistent(a as usize, c));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Sections over the non-Δ part of the open star of `cell`, one unknown
/// fibre vector per chart, glued by the transports along incidences.
fn star_sections(cells: &CellComplex, system: &LocalSystem, cell: usize) -> Result<StarSections, SheafError> {
    let up: Vec<usize> = cells.up_set(cell).into_iter().filter(|&c| !cells.in_discriminant(c)).collect();
    let mut charts: Vec<u32> = up.iter().map(|&c| cells.chart(c).unwrap()).collect();
    charts.sort_unstable();
    charts.dedup();
    let slot: HashMap<u32, usize> = charts.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    // Cells sharing a chart must be connected through same-chart incidences.
    let index: HashMap<usize, usize> = up.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut parent: Vec<usize> = (0..up.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for (i, &c) in up.iter().enumerate() {
        for &co in cells.cofaces(c) {
            let j = index[&(co as usize)];
            let (a, b) = (cells.chart(c).unwrap(), cells.chart(co as usize).unwrap());
            if a == b {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            } else {
                pairs.push((a, b));
            }
        }
    }
    let mut comps_per_chart: HashMap<u32, std::collections::HashSet<usize>> = HashMap::new();
    for (i, &c) in up.iter().enumerate() {
        let r = find(&mut parent, i);
        comps_per_chart.entry(cells.chart(c).unwrap()).or_default().insert(r);
    }
    if comps_per_chart.values().any(|s| s.len() != 1) {
        return Err(SheafError::DisconnectedStar(cell));
    }
    pairs.sort_unstable();
    pairs.dedup();

    let rank = system.rank();
    let unknowns = charts.len() * rank;
    let mut rows: Vec<BitVec> = Vec::new();
    for &(a, b) in &pairs {
        let t = system.transport(a, b).ok_or(SheafError::MissingTransport(a, b))?;
        let (sa, sb) = (slot[&a] * rank, slot[&b] * rank);
        for r in 0..rank {
            let mut row = BitVec::zeros(unknowns);
            for c in t.row(r).ones() {
                row.flip(sa + c);
            }
            row.flip(sb + r);
            rows.push(row);
        }
    }
    let system_matrix = GF2Matrix::from_bit_rows(unknowns, rows);
    let kernel = system_matrix.kernel_vectors();
    let dim = kernel.len();
    let values = (0..charts.len())
        .map(|ci| {
            let cols: Vec<BitVec> = kernel.iter().map(|k| k.slice(ci * rank, (ci + 1) * rank)).collect();
            GF2Matrix::from_columns(rank, &cols)
        })
        .collect::<Vec<_>>();
    // A section is determined by its value in any one chart of a connected star.
    if values.iter().any(|v| v.rank() != dim) {
        return Err(SheafError::DisconnectedStar(cell));
    }
    Ok(StarSections { charts, values })
}

/// Pushforward of `system` to the cells of `cells`.
pub fn pushforward_sheaf(cells: Arc<CellComplex>, system: &LocalSystem) -> Result<CellularSheaf, SheafError> {
    CellularSheaf::build(cells, system)
}

/// Dimensions `h^0..h^top` of the sheaf cohomology.
pub fn sheaf_cohomology(sheaf: &CellularSheaf) -> Result<Vec<usize>, SheafError> {
    Ok(sheaf.cochain_complex()?.cohomology_dims())
}

/// Cohomology with class coordinates in one degree.
pub fn cohomology_basis(complex: &GF2ChainComplex, k: usize) -> CohomologyBasis {
    complex.cohomology_basis(k)
}
