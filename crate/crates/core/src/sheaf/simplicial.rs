use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;

use super::{CellularSheaf, LocalSystem, SheafError};
use crate::affine_base::{BaseComplex, CellComplex};
use crate::gf2::GF2ChainComplex;

/// Builds a simplicial cell complex from vertex sets and charts. Vertex
/// labels may be arbitrary; 0-cells are numbered in label order, so the
/// vertex order of every simplex is preserved.
pub fn complex_from_simplices(mut simplices: Vec<(Vec<u32>, Option<u32>)>) -> CellComplex {
    for (v, _) in &mut simplices {
        v.sort_unstable();
    }
    simplices.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    simplices.dedup_by(|a, b| a.0 == b.0);
    let mut relabel: HashMap<u32, u32> = HashMap::new();
    for (v, _) in simplices.iter().take_while(|s| s.0.len() == 1) {
        let next = relabel.len() as u32;
        relabel.insert(v[0], next);
    }
    let verts: Vec<Vec<u32>> = simplices.iter().map(|(v, _)| v.iter().map(|x| relabel[x]).collect()).collect();
    let index: HashMap<&[u32], u32> = verts.iter().enumerate().map(|(i, v)| (v.as_slice(), i as u32)).collect();
    let mut dims = Vec::with_capacity(verts.len());
    let mut faces = Vec::with_capacity(verts.len());
    for v in &verts {
        dims.push((v.len() - 1) as u8);
        let fs = if v.len() == 1 {
            Vec::new()
        } else {
            (0..v.len())
                .map(|skip| {
                    let f: Vec<u32> = v.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                    *index.get(f.as_slice()).expect("simplex list is closed under faces")
                })
                .collect()
        };
        faces.push(fs);
    }
    let charts = simplices.iter().map(|s| s.1).collect();
    CellComplex::new(dims, faces, charts, verts.into_iter().map(Some).collect())
}

fn simplices_of(cells: &CellComplex) -> Result<Vec<(Vec<u32>, Option<u32>)>, SheafError> {
    (0..cells.len())
        .map(|c| Ok((cells.vertices(c).ok_or(SheafError::NotSimplicial(c))?.to_vec(), cells.chart(c))))
        .collect()
}

/// The refinement with every solid replaced by the cone over its boundary.
/// Its vertex stars form the cover used for Čech computations.
pub fn cone_complex(base: &BaseComplex) -> CellComplex {
    let cells = base.cells();
    let mut simplices = Vec::new();
    let mut next = cells.count(0) as u32;
    for c in 0..cells.len() {
        match cells.vertices(c) {
            Some(v) => simplices.push((v.to_vec(), cells.chart(c))),
            None => {
                let apex = next;
                next += 1;
                let chart = cells.chart(c);
                simplices.push((vec![apex], chart));
                let mut boundary: Vec<usize> = Vec::new();
                let mut stack: Vec<usize> = cells.faces(c).iter().map(|&f| f as usize).collect();
                while let Some(f) = stack.pop() {
                    if !boundary.contains(&f) {
                        boundary.push(f);
                        stack.extend(cells.faces(f).iter().map(|&g| g as usize));
                    }
                }
                for f in boundary {
                    let mut v = cells.vertices(f).expect("solid boundaries are simplicial").to_vec();
                    v.push(apex);
                    simplices.push((v, chart));
                }
            }
        }
    }
    complex_from_simplices(simplices)
}

/// First barycentric subdivision of a regular cell complex: simplices are
/// chains of cells, lying in the top cell of the chain.
pub fn barycentric_subdivision(cells: &CellComplex) -> CellComplex {
    let n = cells.len();
    let above: Vec<Vec<usize>> = (0..n).map(|c| cells.up_set(c).into_iter().filter(|&x| x != c).collect()).collect();
    let mut simplices = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|c| vec![c]).collect();
    while let Some(chain) = stack.pop() {
        let top = *chain.last().unwrap();
        for &next in &above[top] {
            let mut longer = chain.clone();
            longer.push(next);
            stack.push(longer);
        }
        simplices.push((chain.iter().map(|&c| c as u32).collect(), cells.chart(top)));
    }
    complex_from_simplices(simplices)
}

/// Stellar subdivision at the barycentre of `simplex`.
pub fn stellar_subdivision(cells: &CellComplex, simplex: usize) -> Result<CellComplex, SheafError> {
    let sigma = cells.vertices(simplex).ok_or(SheafError::NotSimplicial(simplex))?.to_vec();
    let star = cells.up_set(simplex);
    let mut simplices: Vec<_> = simplices_of(cells)?.into_iter().enumerate().filter(|(c, _)| !star.contains(c)).map(|(_, s)| s).collect();
    let x = cells.count(0) as u32;
    for &tau in &star {
        let tv = cells.vertices(tau).ok_or(SheafError::NotSimplicial(tau))?;
        let rest: Vec<u32> = tv.iter().copied().filter(|v| !sigma.contains(v)).collect();
        for mask in 0..(1u32 << sigma.len()) - 1 {
            let mut s: Vec<u32> = sigma.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            s.extend(&rest);
            s.push(x);
            simplices.push((s, cells.chart(tau)));
        }
    }
    Ok(complex_from_simplices(simplices))
}

/// `count` stellar subdivisions at randomly chosen simplices of positive dimension.
pub fn random_stellar_subdivisions<R: Rng>(cells: &CellComplex, count: usize, rng: &mut R) -> Result<CellComplex, SheafError> {
    let mut current = cells.clone();
    for _ in 0..count {
        let candidates: Vec<usize> = (0..current.len()).filter(|&c| current.dim(c) > 0).collect();
        let pick = candidates[rng.gen_range(0..candidates.len())];
        current = stellar_subdivision(&current, pick)?;
    }
    Ok(current)
}

/// Checks that the vertex-star cover of a simplicial complex has every
/// triple intersection disjoint from Δ.
pub fn check_leray_cover(cells: &CellComplex) -> Result<(), SheafError> {
    for c in 0..cells.len() {
        if cells.vertices(c).is_none() {
            return Err(SheafError::NotSimplicial(c));
        }
        if cells.dim(c) >= 2 && cells.in_discriminant(c) {
            return Err(SheafError::LerayCondition(c));
        }
    }
    Ok(())
}

/// Čech complex of the vertex-star cover of a simplicial complex: the nerve
/// is the complex itself, and sections over an intersection are the
/// monodromy invariants over the open star of the corresponding simplex.
pub fn cech_complex(cells: Arc<CellComplex>, system: &LocalSystem) -> Result<GF2ChainComplex, SheafError> {
    check_leray_cover(&cells)?;
    CellularSheaf::build(cells, system)?.cochain_complex()
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn closure(top: &[&[u32]], chart: Option<u32>) -> Vec<(Vec<u32>, Option<u32>)> {
        let mut out = Vec::new();
        for t in top {
            for mask in 1..(1u32 << t.len()) {
                out.push((t.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect(), chart));
            }
        }
        out
    }

    fn sphere() -> CellComplex {
        complex_from_simplices(closure(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]], Some(0)))
    }

    #[test]
    fn boundary_of_tetrahedron() {
        let s = sphere();
        assert_eq!((s.count(0), s.count(1), s.count(2)), (4, 6, 4));
        assert_eq!(s.constant_cochains().unwrap().cohomology_dims(), vec![1, 0, 1]);
    }

    #[test]
    fn vertex_labels_keep_their_order() {
        let c = complex_from_simplices(closure(&[&[10, 30, 20]], None));
        assert_eq!(c.vertices(c.cells_of_dim(2)[0] as usize), Some(&[0, 1, 2][..]));
    }

    #[test]
    fn subdivisions_preserve_cohomology() {
        let s = sphere();
        let b = barycentric_subdivision(&s);
        assert_eq!((b.count(0), b.count(1), b.count(2)), (14, 36, 24));
        assert_eq!(b.constant_cochains().unwrap().cohomology_dims(), vec![1, 0, 1]);
        let tri = s.simplex(&[0, 1, 2]).unwrap();
        let st = stellar_subdivision(&s, tri).unwrap();
        assert_eq!((st.count(0), st.count(2)), (5, 6));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = random_stellar_subdivisions(&s, 10, &mut rng).unwrap();
        assert_eq!(r.euler_characteristic(), 2);
        assert_eq!(r.constant_cochains().unwrap().cohomology_dims(), vec![1, 0, 1]);
    }

    #[test]
    fn leray_condition() {
        let mut simplices = closure(&[&[0, 1, 2]], Some(0));
        assert!(check_leray_cover(&complex_from_simplices(simplices.clone())).is_ok());
        simplices.last_mut().unwrap().1 = None;
        assert!(matches!(check_leray_cover(&complex_from_simplices(simplices)), Err(SheafError::LerayCondition(_))));
    }
}
