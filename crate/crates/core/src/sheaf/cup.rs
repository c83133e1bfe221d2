use super::{CellularSheaf, Cochain, SheafError, SheafLabel};
use crate::gf2::{BitVec, GF2Matrix};

/// Fibrewise products used by cup products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StalkProduct {
    /// `V x V -> Λ²V` in the basis `(e23, e31, e12)`.
    Wedge,
    /// `V x Λ²V -> Λ³V`, the coordinate dot product.
    Pairing,
    /// Constant coefficients acting on the left.
    ScalarLeft,
    /// Constant coefficients acting on the right.
    ScalarRight,
}

impl StalkProduct {
    /// The product and output sheaf for a pair of sheaves.
    pub fn for_labels(a: SheafLabel, b: SheafLabel) -> Result<(StalkProduct, SheafLabel), SheafError> {
        use SheafLabel::*;
        Ok(match (a, b) {
            (Constant, x) => (StalkProduct::ScalarLeft, x),
            (x, Constant) => (StalkProduct::ScalarRight, x),
            (R1F, R1F) => (StalkProduct::Wedge, R2F),
            (R1FDual, R1FDual) => (StalkProduct::Wedge, R2FDual),
            (R1F, R2F) | (R2F, R1F) | (R1FDual, R2FDual) | (R2FDual, R1FDual) => (StalkProduct::Pairing, Constant),
            _ => return Err(SheafError::UndefinedProduct(a.name(), b.name())),
        })
    }

    pub fn apply(self, a: &BitVec, b: &BitVec) -> BitVec {
        match self {
            StalkProduct::Wedge => {
                let (x, y) = (|i| a.get(i), |i| b.get(i));
                BitVec::from_bools([
                    (x(1) & y(2)) ^ (x(2) & y(1)),
                    (x(2) & y(0)) ^ (x(0) & y(2)),
                    (x(0) & y(1)) ^ (x(1) & y(0)),
                ])
            }
            StalkProduct::Pairing => BitVec::from_bools([a.dot(b)]),
            StalkProduct::ScalarLeft => {
                if a.get(0) {
                    b.clone()
                } else {
                    BitVec::zeros(b.len())
                }
            }
            StalkProduct::ScalarRight => {
                if b.get(0) {
                    a.clone()
                } else {
                    BitVec::zeros(a.len())
                }
            }
        }
    }
}

/// How the vertices of a simplex are split between the two factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CupRule {
    /// Front face times back face.
    AlexanderWhitney,
    /// Sum over cyclic rotations of the vertex order; defined for two
    /// 1-cochains only.
    Cyclic,
}

/// Fibre value (in the reference chart of `cell`) of the restriction of a
/// cochain from `face` to `cell`.
pub(crate) fn restricted_value(sheaf: &CellularSheaf, cochain: &Cochain, face: usize, cell: usize) -> Result<BitVec, SheafError> {
    Ok(restriction_to_fibre(sheaf, face, cell)?.mul_vec(&sheaf.value(cochain, face))?)
}

/// Matrix from stalk coordinates at `face` to fibre coordinates (reference
/// chart) at the simplex `cell` containing it.
pub fn restriction_to_fibre(sheaf: &CellularSheaf, face: usize, cell: usize) -> Result<GF2Matrix, SheafError> {
    let chain = chain_between(sheaf, face, cell).ok_or(SheafError::Inconsistent(face, cell))?;
    let r = sheaf.restriction_along(&chain).ok_or(SheafError::Inconsistent(face, cell))?;
    Ok(sheaf.stalk_basis(cell).mul(&r)?)
}

/// A maximal chain of simplices from `face` up to `cell`, adding one vertex at a time.
fn chain_between(sheaf: &CellularSheaf, face: usize, cell: usize) -> Option<Vec<usize>> {
    let cells = sheaf.cells();
    let top = cells.vertices(cell)?;
    let mut current: Vec<u32> = cells.vertices(face)?.to_vec();
    let mut chain = vec![face];
    for &v in top {
        if !current.contains(&v) {
            current.push(v);
            current.sort_unstable();
            chain.push(cells.simplex(&current)?);
        }
    }
    (chain.last() == Some(&cell)).then_some(chain)
}

/// Cup product of cochains on a simplicial complex with ordered vertices.
pub fn cup_product(
    sa: &CellularSheaf,
    a: &Cochain,
    sb: &CellularSheaf,
    b: &Cochain,
    out: &CellularSheaf,
    rule: CupRule,
) -> Result<Cochain, SheafError> {
    let (product, label) = StalkProduct::for_labels(a.label, b.label)?;
    if label != out.label() || sa.label() != a.label || sb.label() != b.label {
        return Err(SheafError::UndefinedProduct(a.label.name(), b.label.name()));
    }
    if rule == CupRule::Cyclic && (a.degree != 1 || b.degree != 1) {
        return Err(SheafError::DegreeOutOfRange(a.degree + b.degree));
    }
    let (p, q) = (a.degree, b.degree);
    let n = p + q;
    if n > out.cells().top_dim() {
        return Err(SheafError::DegreeOutOfRange(n));
    }
    let cells = out.cells();
    let mut result = out.zero_cochain(n);
    for &s in cells.cells_of_dim(n) {
        let s = s as usize;
        let verts = cells.vertices(s).ok_or(SheafError::NotSimplicial(s))?.to_vec();
        let rotations: Vec<Vec<u32>> = match rule {
            CupRule::AlexanderWhitney => vec![verts.clone()],
            CupRule::Cyclic => (0..3).map(|r| (0..3).map(|i| verts[(i + r) % 3]).collect()).collect(),
        };
        let mut fibre = BitVec::zeros(out.rank());
        for order in rotations {
            let mut front = order[..=p].to_vec();
            let mut back = order[p..].to_vec();
            front.sort_unstable();
            back.sort_unstable();
            let f = cells.simplex(&front).ok_or(SheafError::NotSimplicial(s))?;
            let bk = cells.simplex(&back).ok_or(SheafError::NotSimplicial(s))?;
            let x = restricted_value(sa, a, f, s)?;
            let y = restricted_value(sb, b, bk, s)?;
            fibre.xor_assign(&product.apply(&x, &y));
        }
        let coords = out.stalk_coordinates(s, &fibre).ok_or(SheafError::Inconsistent(s, s))?;
        let o = out.offset(s);
        for i in coords.ones() {
            result.values.flip(o + i);
        }
    }
    Ok(result)
}

/// The annihilator recipe for the connecting map: on every 2-simplex whose
/// three edge values are pairwise distinct, the covector vanishing on their
/// span; zero elsewhere.
pub fn beta_cocycle(r2: &CellularSheaf, alpha: &Cochain, r1: &CellularSheaf) -> Result<Cochain, SheafError> {
    if alpha.degree != 1 || alpha.label != r2.label() {
        return Err(SheafError::DegreeOutOfRange(alpha.degree));
    }
    if !r2.coboundary(1).mul_vec(&alpha.values)?.is_zero() {
        return Err(SheafError::NotCocycle);
    }
    let cells = r1.cells();
    let mut xi = r1.zero_cochain(2);
    for &s in cells.cells_of_dim(2) {
        let s = s as usize;
        if cells.in_discriminant(s) {
            return Err(SheafError::LerayCondition(s));
        }
        let v = cells.vertices(s).ok_or(SheafError::NotSimplicial(s))?;
        let edges = [[v[0], v[1]], [v[1], v[2]], [v[0], v[2]]];
        let mut vals = Vec::with_capacity(3);
        for e in edges {
            let e = cells.simplex(&e).ok_or(SheafError::NotSimplicial(s))?;
            vals.push(restricted_value(r2, alpha, e, s)?);
        }
        let distinct = vals[0] != vals[1] && vals[1] != vals[2] && vals[0] != vals[2];
        if !distinct {
            continue;
        }
        let span = GF2Matrix::from_bit_rows(3, vals);
        let ann = span.kernel_vectors();
        debug_assert_eq!(ann.len(), 1);
        let o = r1.offset(s);
        for i in ann[0].ones() {
            xi.values.flip(o + i);
        }
    }
    Ok(xi)
}

/// The duality identifications `R¹f̌ ≅ R²f` and `R²f̌ ≅ R¹f` (and their
/// inverses), which are the identity in the chosen stalk bases.
pub fn mu_dualize(c: &Cochain, a: usize) -> Result<Cochain, SheafError> {
    use SheafLabel::*;
    let label = match (a, c.label) {
        (1, R1FDual) => R2F,
        (1, R2F) => R1FDual,
        (2, R2FDual) => R1F,
        (2, R1F) => R2FDual,
        _ => return Err(SheafError::DegreeOutOfRange(a)),
    };
    Ok(Cochain { degree: c.degree, label, values: c.values.clone() })
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;
    use std::sync::Arc;

    use super::*;
    use crate::affine_base::CellComplex;
    use crate::sheaf::{complex_from_simplices, LocalSystem};

    fn triangle() -> Arc<CellComplex> {
        let s = [vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 1, 2]];
        Arc::new(complex_from_simplices(s.into_iter().map(|v| (v, Some(0))).collect()))
    }

    fn sheaf(cells: &Arc<CellComplex>, label: SheafLabel) -> CellularSheaf {
        CellularSheaf::build(Arc::clone(cells), &LocalSystem::from_transports(label, label.rank(), HashMap::new())).unwrap()
    }

    /// Values on the edges `01`, `12`, `02`.
    fn on_edges(s: &CellularSheaf, values: [[u8; 3]; 3]) -> Cochain {
        let mut c = s.zero_cochain(1);
        for (e, v) in [[0, 1], [1, 2], [0, 2]].iter().zip(values) {
            let o = s.offset(s.cells().simplex(e).unwrap());
            for (i, &b) in v.iter().enumerate() {
                c.values.set(o + i, b == 1);
            }
        }
        c
    }

    fn top_value(s: &CellularSheaf, c: &Cochain) -> BitVec {
        s.value(c, s.cells().simplex(&[0, 1, 2]).unwrap())
    }

    #[test]
    fn square_of_three_distinct_classes() {
        let cells = triangle();
        let (r1, r2) = (sheaf(&cells, SheafLabel::R1F), sheaf(&cells, SheafLabel::R2F));
        let d = on_edges(&r1, [[1, 0, 0], [0, 1, 0], [1, 1, 0]]);
        for rule in [CupRule::AlexanderWhitney, CupRule::Cyclic] {
            let sq = cup_product(&r1, &d, &r1, &d, &r2, rule).unwrap();
            assert_eq!(top_value(&r2, &sq), BitVec::from_bools([false, false, true]), "{rule:?}");
        }
    }

    #[test]
    fn square_with_repeated_class_vanishes() {
        let cells = triangle();
        let (r1, r2) = (sheaf(&cells, SheafLabel::R1F), sheaf(&cells, SheafLabel::R2F));
        let d = on_edges(&r1, [[0, 0, 0], [0, 1, 1], [0, 1, 1]]);
        for rule in [CupRule::AlexanderWhitney, CupRule::Cyclic] {
            let sq = cup_product(&r1, &d, &r1, &d, &r2, rule).unwrap();
            assert!(sq.values.is_zero());
        }
    }

    #[test]
    fn unit_cochain_acts_trivially() {
        let cells = triangle();
        let (one, r1) = (sheaf(&cells, SheafLabel::Constant), sheaf(&cells, SheafLabel::R1F));
        let mut unit = one.zero_cochain(0);
        for i in 0..3 {
            unit.values.set(i, true);
        }
        let b = on_edges(&r1, [[1, 0, 1], [0, 1, 1], [1, 1, 0]]);
        let out = cup_product(&one, &unit, &r1, &b, &r1, CupRule::AlexanderWhitney).unwrap();
        assert_eq!(out, b);
        assert!(matches!(cup_product(&one, &unit, &r1, &b, &r1, CupRule::Cyclic), Err(SheafError::DegreeOutOfRange(1))));
        let r2d = sheaf(&cells, SheafLabel::R2FDual);
        assert!(matches!(cup_product(&r1, &b, &r1, &b, &r2d, CupRule::AlexanderWhitney), Err(SheafError::UndefinedProduct(..))));
    }

    #[test]
    fn annihilator_recipe() {
        let cells = triangle();
        let (r1, r2) = (sheaf(&cells, SheafLabel::R1F), sheaf(&cells, SheafLabel::R2F));
        let alpha = on_edges(&r2, [[1, 0, 0], [0, 1, 0], [1, 1, 0]]);
        let xi = beta_cocycle(&r2, &alpha, &r1).unwrap();
        assert_eq!(top_value(&r1, &xi), BitVec::from_bools([false, false, true]));

        let d = mu_dualize(&alpha, 1).unwrap();
        let r1d = sheaf(&cells, SheafLabel::R1FDual);
        let r2d = sheaf(&cells, SheafLabel::R2FDual);
        let sq = cup_product(&r1d, &d, &r1d, &d, &r2d, CupRule::AlexanderWhitney).unwrap();
        assert_eq!(mu_dualize(&sq, 2).unwrap().values, xi.values);

        let repeated = on_edges(&r2, [[1, 0, 1], [0, 0, 0], [1, 0, 1]]);
        assert!(beta_cocycle(&r2, &repeated, &r1).unwrap().values.is_zero());
        let broken = on_edges(&r2, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(matches!(beta_cocycle(&r2, &broken, &r1), Err(SheafError::NotCocycle)));
    }

    #[test]
    fn dualizing_relabels() {
        let cells = triangle();
        let r1d = sheaf(&cells, SheafLabel::R1FDual);
        let e1 = on_edges(&r1d, [[1, 0, 0], [0, 0, 0], [1, 0, 0]]);
        let m = mu_dualize(&e1, 1).unwrap();
        assert_eq!((m.label, m.degree, &m.values), (SheafLabel::R2F, 1, &e1.values));
        assert_eq!(mu_dualize(&m, 1).unwrap(), e1);
        assert!(mu_dualize(&r1d.zero_cochain(1), 1).unwrap().values.is_zero());
        assert!(matches!(mu_dualize(&e1, 3), Err(SheafError::DegreeOutOfRange(3))));
        assert!(matches!(mu_dualize(&e1, 2), Err(SheafError::DegreeOutOfRange(2))));
    }
}
