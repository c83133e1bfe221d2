use std::sync::Arc;

use rayon::prelude::*;

use super::{IntersectionForm, MirrorError};
use crate::affine_base::{BaseComplex, CellComplex};
use crate::gf2::{BitVec, GF2Matrix};
use crate::monodromy::Side;
use crate::sheaf::{build_local_system, cone_complex, restriction_to_fibre, CellularSheaf, ComplexWithBases, SheafError, SheafLabel};

/// A mod-2 triple intersection form of the mirror read off the base by
/// triple cup products, with the cup pairing `H¹(R¹) x H²(R²) -> Z₂` used to
/// identify `H⁴` with the dual of `H²`.
#[derive(Clone, Debug)]
pub struct DerivedForm {
    pub form: IntersectionForm,
    /// `pairing[i][l] = ⟨D_i ⌣ E_l, [B]⟩`.
    pub pairing: GF2Matrix,
    pub cells: Arc<CellComplex>,
}

/// Per 3-simplex, the three coordinates of each class restricted from one edge.
struct EdgeValues {
    /// `coords[c][i]` is the bit vector over 3-simplices of coordinate `c` of class `i`.
    coords: [Vec<BitVec>; 3],
}

fn edge_values(sheaf: &CellularSheaf, classes: &[BitVec], edge_of: impl Fn(&[u32]) -> [u32; 2]) -> Result<EdgeValues, SheafError> {
    let cells = sheaf.cells();
    let tets = cells.cells_of_dim(3);
    let mut coords: [Vec<BitVec>; 3] = std::array::from_fn(|_| vec![BitVec::zeros(tets.len()); classes.len()]);
    for (t, &tet) in tets.iter().enumerate() {
        let tet = tet as usize;
        let v = cells.vertices(tet).ok_or(SheafError::NotSimplicial(tet))?;
        let e = cells.simplex(&edge_of(v)).ok_or(SheafError::NotSimplicial(tet))?;
        let r = restriction_to_fibre(sheaf, e, tet)?;
        let o = sheaf.offset(e);
        for (i, z) in classes.iter().enumerate() {
            let value = r.mul_vec(&z.slice(o, o + sheaf.stalk_dim(e)))?;
            for c in value.ones() {
                coords[c][i].set(t, true);
            }
        }
    }
    Ok(EdgeValues { coords })
}

/// Values of `R²` classes on the back face `(v1 v2 v3)` of each 3-simplex.
fn face_values(sheaf: &CellularSheaf, classes: &[BitVec]) -> Result<[Vec<BitVec>; 3], SheafError> {
    let cells = sheaf.cells();
    let tets = cells.cells_of_dim(3);
    let mut coords: [Vec<BitVec>; 3] = std::array::from_fn(|_| vec![BitVec::zeros(tets.len()); classes.len()]);
    for (t, &tet) in tets.iter().enumerate() {
        let tet = tet as usize;
        let v = cells.vertices(tet).ok_or(SheafError::NotSimplicial(tet))?;
        let f = cells.simplex(&v[1..]).ok_or(SheafError::NotSimplicial(tet))?;
        let r = restriction_to_fibre(sheaf, f, tet)?;
        let o = sheaf.offset(f);
        for (i, z) in classes.iter().enumerate() {
            for c in r.mul_vec(&z.slice(o, o + sheaf.stalk_dim(f)))?.ones() {
                coords[c][i].set(t, true);
            }
        }
    }
    Ok(coords)
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];

/// The form governing `side`: triple products on `H¹(B, R¹)` of the other
/// side, computed with Alexander–Whitney products on the cone complex and
/// evaluated on the fundamental class. Values are reduced mod 2.
pub fn mirror_form_from_base(base: &BaseComplex, side: Side) -> Result<DerivedForm, MirrorError> {
    let mirror = side.other();
    let cells = Arc::new(cone_complex(base));
    let r1 = CellularSheaf::build(Arc::clone(&cells), &build_local_system(base, SheafLabel::r1(mirror))?)?;
    let r2 = CellularSheaf::build(Arc::clone(&cells), &build_local_system(base, SheafLabel::r2(mirror))?)?;
    let h1 = ComplexWithBases::new(&r1)?.bases.swap_remove(1);
    let h2 = ComplexWithBases::new(&r2)?.bases.swap_remove(2);
    if h1.dim() != h2.dim() {
        return Err(MirrorError::DegeneratePairing);
    }
    let r = h1.dim();
    let d = h1.representatives();
    let e = h2.representatives();
    let a = edge_values(&r1, &d, |v| [v[0], v[1]])?;
    let b = edge_values(&r1, &d, |v| [v[1], v[2]])?;
    let c = edge_values(&r1, &d, |v| [v[2], v[3]])?;
    let back = face_values(&r2, &e)?;

    let mut pairing = GF2Matrix::zeros(r, r);
    for i in 0..r {
        for l in 0..r {
            let s = (0..3).fold(false, |acc, x| acc ^ a.coords[x][i].dot(&back[x][l]));
            pairing.set(i, l, s);
        }
    }
    if pairing.rank() != r {
        return Err(MirrorError::DegeneratePairing);
    }

    // t(i,j,k) = Σ_τ det(a_i, b_j, c_k)
    let t: Vec<Vec<Vec<bool>>> = (0..r)
        .into_par_iter()
        .map(|i| {
            (0..r)
                .map(|j| {
                    let ab: Vec<BitVec> = PERMS.iter().map(|p| a.coords[p[0]][i].and(&b.coords[p[1]][j])).collect();
                    (0..r).map(|k| PERMS.iter().zip(&ab).fold(false, |acc, (p, x)| acc ^ x.dot(&c.coords[p[2]][k]))).collect()
                })
                .collect()
        })
        .collect();
    let mut entries = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let v = t[i][j][k];
                if v != t[j][i][k] || v != t[i][k][j] {
                    return Err(MirrorError::Asymmetric(i + 1, j + 1, k + 1));
                }
                if i <= j && j <= k && v {
                    entries.push((i, j, k, 1));
                }
            }
        }
    }
    let form = IntersectionForm::from_entries(r, entries)?.with_provenance(format!(
        "mod-2 triple cup products on H^1(B, {}) of the base refinement",
        SheafLabel::r1(mirror).name()
    ));
    Ok(DerivedForm { form, pairing, cells })
}
