use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::morphism::stalkwise_exact;
use super::{build_local_system, CellularSheaf, SheafError, SheafLabel, SheafMorphism};
use crate::affine_base::{BaseComplex, CellComplex};
use crate::gf2::{BitVec, CohomologyBasis, GF2ChainComplex, GF2Matrix};
use crate::monodromy::{Side, TORSION_POINTS};

/// `ι`: a linear functional on the fibre group as a function on its points,
/// in the basis `δ_{u_i} + δ_{u_7}` of the complement of the constants.
pub fn functional_inclusion() -> GF2Matrix {
    let mut m = GF2Matrix::zeros(6, 3);
    for i in 1..=6 {
        for (c, &x) in TORSION_POINTS[i].iter().enumerate() {
            m.set(i - 1, c, x == 1);
        }
    }
    m
}

/// `φ`: a function `g` goes to `Σ g(u) u`.
pub fn point_sum() -> GF2Matrix {
    let mut m = GF2Matrix::zeros(3, 6);
    for i in 1..=6 {
        for c in 0..3 {
            m.set(c, i - 1, (TORSION_POINTS[i][c] ^ TORSION_POINTS[7][c]) == 1);
        }
    }
    m
}

/// The class of the indicator function of the point with fibre coordinates
/// `u`, in complement coordinates.
pub fn indicator_class(u: &BitVec) -> BitVec {
    let label = TORSION_POINTS.iter().position(|p| (0..3).all(|c| (p[c] == 1) == u.get(c))).expect("3-bit vector");
    if label == 0 {
        return BitVec::zeros(6);
    }
    // δ_u + 1_V + 1_{0} has value 1 + [u_i = u] away from the origin
    BitVec::from_bools((1..=6).map(|i| i != label))
}

/// Cellular sheaves and maps of `0 -> R¹ -> 𝓕 -> R² -> 0` for one side.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub side: Side,
    pub r1: CellularSheaf,
    pub quotient: CellularSheaf,
    pub r2: CellularSheaf,
    pub iota: SheafMorphism,
    pub phi: SheafMorphism,
}

impl ShortExactSequence {
    pub fn build(base: &BaseComplex, cells: Arc<CellComplex>, side: Side) -> Result<Self, SheafError> {
        let sheaf = |label| -> Result<CellularSheaf, SheafError> {
            CellularSheaf::build(Arc::clone(&cells), &build_local_system(base, label)?)
        };
        Self::from_sheaves(side, sheaf(SheafLabel::r1(side))?, sheaf(SheafLabel::Quotient(side))?, sheaf(SheafLabel::r2(side))?)
    }

    /// Wires up `ι` and `φ` between already built sheaves on one complex.
    pub fn from_sheaves(side: Side, r1: CellularSheaf, quotient: CellularSheaf, r2: CellularSheaf) -> Result<Self, SheafError> {
        let iota = SheafMorphism::from_fibre_map(&r1, &quotient, &functional_inclusion())?;
        let phi = SheafMorphism::from_fibre_map(&quotient, &r2, &point_sum())?;
        Ok(Self { side, r1, quotient, r2, iota, phi })
    }

    pub fn is_stalkwise_exact(&self) -> bool {
        self.iota.is_injective_on_stalks() && self.phi.is_surjective_on_stalks() && stalkwise_exact(&self.iota, &self.phi)
    }

    /// Lift of a `k`-cochain of `R²` through `φ` by indicator functions.
    pub fn indicator_lift(&self, k: usize, z: &BitVec) -> Result<BitVec, SheafError> {
        let cells = self.r2.cells();
        let mut x = BitVec::zeros(self.quotient.cochain_dims()[k]);
        for &c in cells.cells_of_dim(k) {
            let c = c as usize;
            let o = self.r2.offset(c);
            let u = self.r2.fibre_value(c, &z.slice(o, o + self.r2.stalk_dim(c)));
            let coords = self.quotient.stalk_coordinates(c, &indicator_class(&u)).ok_or(SheafError::NotExact(c))?;
            let q = self.quotient.offset(c);
            for i in coords.ones() {
                x.flip(q + i);
            }
        }
        Ok(x)
    }

    /// Any stalkwise preimage under `φ`.
    pub fn stalkwise_lift(&self, k: usize, z: &BitVec) -> Result<BitVec, SheafError> {
        let cells = self.r2.cells();
        let mut x = BitVec::zeros(self.quotient.cochain_dims()[k]);
        for &c in cells.cells_of_dim(k) {
            let c = c as usize;
            let o = self.r2.offset(c);
            let v = z.slice(o, o + self.r2.stalk_dim(c));
            let pre = self.phi.block(c).solve(&v)?.ok_or(SheafError::NotExact(c))?;
            let q = self.quotient.offset(c);
            for i in pre.ones() {
                x.flip(q + i);
            }
        }
        Ok(x)
    }

    /// The snake: given a lift `x` of a `k`-cocycle of `R²`, the `(k+1)`-cocycle
    /// `y` of `R¹` with `ι(y) = d x`.
    pub fn connecting_cochain(&self, k: usize, x: &BitVec) -> Result<BitVec, SheafError> {
        let dx = self.quotient.coboundary(k).mul_vec(x)?;
        let cells = self.r1.cells();
        let mut y = BitVec::zeros(self.r1.cochain_dims()[k + 1]);
        for &c in cells.cells_of_dim(k + 1) {
            let c = c as usize;
            let q = self.quotient.offset(c);
            let w = dx.slice(q, q + self.quotient.stalk_dim(c));
            let pre = self.iota.block(c).solve(&w)?.ok_or(SheafError::NotExact(c))?;
            let o = self.r1.offset(c);
            for i in pre.ones() {
                y.flip(o + i);
            }
        }
        Ok(y)
    }

    /// Matrix of `β_k : H^k(R²) -> H^{k+1}(R¹)` in the given bases.
    pub fn connecting_matrix(&self, k: usize, source: &CohomologyBasis, target: &CohomologyBasis) -> Result<GF2Matrix, SheafError> {
        let mut cols = Vec::with_capacity(source.dim());
        for z in source.representatives() {
            let y = self.connecting_cochain(k, &self.indicator_lift(k, &z)?)?;
            cols.push(target.coordinates(&y).ok_or(SheafError::NotCocycle)?);
        }
        Ok(GF2Matrix::from_columns(target.dim(), &cols))
    }
}

/// Cochain complex together with a cohomology basis in every degree.
#[derive(Clone, Debug)]
pub struct ComplexWithBases {
    pub complex: GF2ChainComplex,
    pub bases: Vec<CohomologyBasis>,
}

impl ComplexWithBases {
    pub fn new(sheaf: &CellularSheaf) -> Result<Self, SheafError> {
        let complex = sheaf.cochain_complex()?;
        let bases = (0..=complex.top_degree()).into_par_iter().map(|k| complex.cohomology_basis(k)).collect();
        Ok(Self { complex, bases })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(CohomologyBasis::dim).collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NodeCheck {
    pub node: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExactnessAudit {
    pub stalkwise_exact: bool,
    pub nodes: Vec<NodeCheck>,
    pub alternating_sum: i64,
    /// `h^j(π⋆Z₂) = h^j(𝓕) + 2 h^j(Z₂)` for all `j`.
    pub splitting: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LESReport {
    pub side: Side,
    pub r1: Vec<usize>,
    pub quotient: Vec<usize>,
    pub cover: Vec<usize>,
    pub r2: Vec<usize>,
    pub constant: Vec<usize>,
    /// `β : H¹(R²) -> H²(R¹)` in the cohomology bases, one string per row.
    pub beta: Vec<String>,
    pub beta_rank: usize,
    pub beta_kernel: usize,
    /// Ranks of the connecting maps in degrees 0, 1, 2.
    pub connecting_ranks: Vec<usize>,
    /// `h^j(L_ℝ)` read off the sequence: `h^j(R¹) - rk β_{j-1} + dim ker β_j + 2 h^j(Z₂)`.
    pub h_real: Vec<usize>,
    pub exactness: ExactnessAudit,
    #[serde(skip)]
    pub beta_matrix: GF2Matrix,
}

/// The long exact sequence on the refinement of `base`.
pub fn assemble_les(base: &BaseComplex, side: Side) -> Result<LESReport, SheafError> {
    assemble_les_on(base, base.shared_cells(), side)
}

/// The long exact sequence on an arbitrary refinement carrying the same charts.
pub fn assemble_les_on(base: &BaseComplex, cells: Arc<CellComplex>, side: Side) -> Result<LESReport, SheafError> {
    let ses = ShortExactSequence::build(base, Arc::clone(&cells), side)?;
    let cover = CellularSheaf::build(Arc::clone(&cells), &build_local_system(base, SheafLabel::Cover(side))?)?;
    let constant = CellularSheaf::build(Arc::clone(&cells), &build_local_system(base, SheafLabel::Constant)?)?;
    les_report(&ses, &cover, &constant)
}

pub fn les_report(ses: &ShortExactSequence, cover: &CellularSheaf, constant: &CellularSheaf) -> Result<LESReport, SheafError> {
    let (a, f, c) = (ComplexWithBases::new(&ses.r1)?, ComplexWithBases::new(&ses.quotient)?, ComplexWithBases::new(&ses.r2)?);
    let cover_dims = cover.cochain_complex()?.cohomology_dims();
    let const_dims = constant.cochain_complex()?.cohomology_dims();
    let top = a.bases.len() - 1;

    let mut iota = Vec::new();
    let mut phi = Vec::new();
    let mut beta = Vec::new();
    for k in 0..=top {
        iota.push(ses.iota.induced(k, &a.bases[k], &f.bases[k]));
        phi.push(ses.phi.induced(k, &f.bases[k], &c.bases[k]));
        if k < top {
            beta.push(ses.connecting_matrix(k, &c.bases[k], &a.bases[k + 1])?);
        }
    }

    // nodes in order H^0(R¹), H^0(𝓕), H^0(R²), H^1(R¹), ...
    let mut nodes = Vec::new();
    let mut alternating = 0i64;
    for k in 0..=top {
        let maps: [(String, usize, Option<&GF2Matrix>, Option<&GF2Matrix>); 3] = [
            (format!("H{k}(R1)"), a.bases[k].dim(), if k > 0 { Some(&beta[k - 1]) } else { None }, Some(&iota[k])),
            (format!("H{k}(F)"), f.bases[k].dim(), Some(&iota[k]), Some(&phi[k])),
            (format!("H{k}(R2)"), c.bases[k].dim(), Some(&phi[k]), beta.get(k)),
        ];
        for (i, (node, dim, inc, out)) in maps.into_iter().enumerate() {
            let rank_in = inc.map_or(0, GF2Matrix::rank);
            let rank_out = out.map_or(0, GF2Matrix::rank);
            let composite_zero = match (inc, out) {
                (Some(x), Some(y)) => y.mul(x)?.is_zero(),
                _ => true,
            };
            let exact = composite_zero && rank_in + rank_out == dim;
            let sign = if (3 * k + i) % 2 == 0 { 1 } else { -1 };
            alternating += sign * dim as i64;
            nodes.push(NodeCheck { node, dim, rank_in, rank_out, exact });
        }
    }
    let quotient_dims = f.dims();
    let splitting = (0..=top).all(|j| cover_dims[j] == quotient_dims[j] + 2 * const_dims[j]);
    let stalkwise_exact = ses.is_stalkwise_exact();
    let passed = stalkwise_exact && splitting && alternating == 0 && nodes.iter().all(|n| n.exact);

    let connecting_ranks: Vec<usize> = beta.iter().map(GF2Matrix::rank).collect();
    let r1 = a.dims();
    let r2 = c.dims();
    let h_real = (0..=top)
        .map(|j| {
            let from_r1 = r1[j] - if j > 0 { connecting_ranks[j - 1] } else { 0 };
            let from_r2 = r2[j] - connecting_ranks.get(j).copied().unwrap_or(0);
            from_r1 + from_r2 + 2 * const_dims[j]
        })
        .collect();
    let beta1 = beta[1].clone();
    Ok(LESReport {
        side: ses.side,
        r1,
        quotient: quotient_dims,
        cover: cover_dims,
        r2,
        constant: const_dims,
        beta: (0..beta1.rows()).map(|r| beta1.row(r).to_bit_string()).collect(),
        beta_rank: connecting_ranks[1],
        beta_kernel: beta1.cols() - connecting_ranks[1],
        connecting_ranks,
        h_real,
        exactness: ExactnessAudit { stalkwise_exact, nodes, alternating_sum: alternating, splitting, passed },
        beta_matrix: beta1,
    })
}
