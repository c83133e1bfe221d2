use serde::Serialize;

use super::{torsion_action, transvection, MonodromyError, Perm8, PermRep, Side};
use crate::affine_base::{BaseComplex, DeltaEdge, RefinementCell};
use crate::lattice::{cross3, gcd, mul3, sub4, IntMatrix3, Vec3, IDENTITY3};

/// Monodromy of a closed path of cells avoiding Δ, in the chart of its
/// first cell. Consecutive cells must be incident (one a face of the other).
/// The result maps a vector at the start to its parallel transport around
/// the loop.
pub fn loop_monodromy(base: &BaseComplex, path: &[usize]) -> Result<IntMatrix3, MonodromyError> {
    let cells = base.cells();
    let atlas = base.atlas();
    if path.is_empty() || path.first() != path.last() {
        return Err(MonodromyError::NotClosed);
    }
    let mut m = IDENTITY3;
    for w in path.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (Some(ca), Some(cb)) = (cells.chart(a), cells.chart(b)) else {
            let hit = if cells.in_discriminant(a) { a } else { b };
            return Err(MonodromyError::TouchesDelta(hit));
        };
        let incident = a == b || cells.faces(a).contains(&(b as u32)) || cells.faces(b).contains(&(a as u32));
        if !incident {
            return Err(MonodromyError::NotIncident(a, b));
        }
        let step = atlas.transport_between(atlas.decode(ca), atlas.decode(cb)).ok_or(MonodromyError::NoTransport(a, b))?;
        m = mul3(&step, &m);
    }
    if let Some(&c) = path.iter().find(|&&c| cells.in_discriminant(c)) {
        return Err(MonodromyError::TouchesDelta(c));
    }
    Ok(m)
}

/// A loop based at the lower endpoint of the leg's triangulation edge that
/// links the leg once, passing through `first_facet` before the other facet.
pub fn leg_loop(base: &BaseComplex, leg: &DeltaEdge, first_facet: usize) -> Vec<usize> {
    let [w1, w2] = base.edges()[leg.edge].ends;
    let (e, t) = (leg.edge, leg.triangle);
    let second = if leg.facets[0] == first_facet { leg.facets[1] } else { leg.facets[0] };
    let id = |k| base.cell_id(k).expect("cell exists");
    let v = id(RefinementCell::Lattice(w1));
    let ve = id(RefinementCell::LatticeEdge(w1, e));
    let f1 = id(RefinementCell::Flag(w1, e, t));
    let f2 = id(RefinementCell::Flag(w2, e, t));
    let sa = id(RefinementCell::Solid(first_facet));
    let sb = id(RefinementCell::Solid(second));
    vec![v, ve, f1, sa, f2, sb, f1, ve, v]
}

/// One of the twelve loops `γ_{ij,k}` at a polytope vertex.
#[derive(Clone, Debug, Serialize)]
pub struct VertexGenerator {
    pub label: String,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub n: Vec3,
    pub d: Vec3,
    pub loop_cells: Vec<usize>,
    pub matrix: IntMatrix3,
}

fn primitive3(v: Vec3) -> Vec3 {
    let g = gcd(gcd(v[0], v[1]), v[2]);
    [v[0] / g, v[1] / g, v[2] / g]
}

/// The loops `γ_{ij,k}` (`1 <= i < j <= 4`, `k ∈ {i, j}`) at polytope vertex
/// `vertex`, with `d_1..d_4` the edge directions in the vertex chart. Each
/// loop is oriented so that its crossing of `σ_ij` pairs positively with
/// `n_ij`, the primitive covector vanishing on `σ_ij` with `n_ij(x) > 0`
/// when `(d_i, d_j, x)` is positively oriented. The returned matrix is the
/// monodromy computed from the charts along the loop.
pub fn vertex_generators(base: &BaseComplex, vertex: usize) -> Result<Vec<VertexGenerator>, MonodromyError> {
    let atlas = base.atlas();
    let pts = base.points();
    let others: Vec<usize> = (0..5).filter(|&x| x != vertex).collect();
    // First lattice point along each polytope edge from the vertex.
    let mut first_step = Vec::new();
    let mut dirs = Vec::new();
    for &o in &others {
        let delta = sub4(&pts[o], &pts[vertex]);
        let g = crate::lattice::content4(&delta);
        let step = [delta[0] / g, delta[1] / g, delta[2] / g, delta[3] / g];
        let q = crate::lattice::add4(&pts[vertex], &step);
        let qi = pts.iter().position(|p| *p == q).ok_or_else(|| MonodromyError::Convention("edge point missing".into()))?;
        first_step.push(qi);
        dirs.push(atlas.point_coords(vertex, &q));
    }
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let n_ij = primitive3(cross3(&dirs[i], &dirs[j]));
            let face_vertices = {
                let mut f = [vertex, others[i], others[j]];
                f.sort_unstable();
                f
            };
            let face = base.faces().iter().position(|f| *f == face_vertices).expect("face exists");
            for k in [i, j] {
                let e = base.edge_between(vertex, first_step[k]).expect("edge segment exists");
                let leg = base
                    .discriminant()
                    .edges
                    .iter()
                    .find(|l| l.edge == e && base.triangles()[l.triangle].face == face)
                    .ok_or_else(|| MonodromyError::Convention("no Δ segment meets the ray".into()))?;
                let n0 = atlas.covector_coords(vertex, &leg.n);
                let first = if n0 == n_ij {
                    leg.facets[0]
                } else if n0 == [-n_ij[0], -n_ij[1], -n_ij[2]] {
                    leg.facets[1]
                } else {
                    return Err(MonodromyError::Convention(format!("leg covector {n0:?} is not ±{n_ij:?}")));
                };
                let loop_cells = leg_loop(base, leg, first);
                let matrix = loop_monodromy(base, &loop_cells)?;
                out.push(VertexGenerator {
                    label: format!("{}{},{}", i + 1, j + 1, k + 1),
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    n: n_ij,
                    d: dirs[k],
                    loop_cells,
                    matrix,
                });
            }
        }
    }
    Ok(out)
}

/// The twelve loops at a polytope vertex acting on the 2-torsion of `side`.
pub fn vertex_rep(base: &BaseComplex, vertex: usize, side: Side) -> Result<PermRep, MonodromyError> {
    let mut generators = Vec::new();
    for g in vertex_generators(base, vertex)? {
        generators.push((g.label, torsion_action(&g.matrix, side)?));
    }
    Ok(PermRep { side, generators })
}

/// Monodromies around the four points where a small sphere about the
/// midpoint of an interior edge meets Δ (the outer legs of the two adjacent
/// negative vertices), as a permutation representation.
pub fn negative_edge_rep(base: &BaseComplex, edge: usize, side: Side) -> Result<PermRep, MonodromyError> {
    let g = base.discriminant();
    if !g.crossing_is_negative_pair(edge) {
        return Err(MonodromyError::PatternMismatch(format!("edge {edge} is not crossed between two negative vertices")));
    }
    let atlas = base.atlas();
    let p = base.edges()[edge].ends[0];
    let mid = g.midpoint_vertex(edge).expect("midpoint vertex");
    let mut gens = Vec::new();
    for &inner in &g.vertices[mid].edges {
        let bary = g.edges[inner].ends[1];
        for &l in &g.vertices[bary].edges {
            if l == inner {
                continue;
            }
            let leg = &g.edges[l];
            let t = transvection(atlas.covector_coords(p, &leg.n), atlas.point_coords(p, &leg.d))?;
            gens.push(torsion_action(&t.matrix, side)?);
        }
    }
    // Around the sphere the punctures alternate between the two triangles.
    let order = [0, 2, 1, 3];
    Ok(PermRep {
        side,
        generators: order.iter().enumerate().map(|(i, &k)| (format!("y{}", i + 1), gens[k])).collect::<Vec<(String, Perm8)>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_base::build_quintic_base;
    use crate::monodromy::{dual_rep, local_negative_edge_analysis};

    #[test]
    fn trivial_loop_is_identity() {
        let b = build_quintic_base();
        let v = b.cell_id(RefinementCell::Lattice(7)).unwrap();
        let c = b.cells().cofaces(v)[0] as usize;
        assert_eq!(loop_monodromy(&b, &[v, c, v]).unwrap(), IDENTITY3);
        let mid = b.cell_id(RefinementCell::Midpoint(0)).unwrap();
        assert!(matches!(loop_monodromy(&b, &[mid, mid]), Err(MonodromyError::TouchesDelta(_))));
    }

    #[test]
    fn every_leg_matches_transvection_formula() {
        let b = build_quintic_base();
        for leg in &b.discriminant().edges {
            let l = leg_loop(&b, leg, leg.facets[0]);
            assert_eq!(loop_monodromy(&b, &l).unwrap(), leg.transvection());
            let mut rev = l.clone();
            rev.reverse();
            let back = loop_monodromy(&b, &rev).unwrap();
            assert_eq!(mul3(&back, &leg.transvection()), IDENTITY3);
        }
    }

    #[test]
    fn gamma_12_1() {
        let b = build_quintic_base();
        let gens = vertex_generators(&b, 0).unwrap();
        assert_eq!(gens.len(), 12);
        assert_eq!(gens[0].label, "12,1");
        assert_eq!(gens[0].matrix, [[1, 0, 1], [0, 1, 0], [0, 0, 1]]);
        for g in &gens {
            assert_eq!(g.matrix, transvection(g.n, g.d).unwrap().matrix, "{}", g.label);
        }
        assert_eq!(dual_rep(&gens[0].matrix).unwrap(), [[1, 0, 0], [0, 1, 0], [-1, 0, 1]]);
    }

    #[test]
    fn negative_edge_local_model() {
        let b = build_quintic_base();
        let e = (0..b.edges().len()).find(|&e| b.edges()[e].polytope_edge.is_none()).unwrap();
        let rep = negative_edge_rep(&b, e, Side::FDual).unwrap();
        let r = local_negative_edge_analysis(&rep).unwrap();
        assert_eq!(r.count(), 5);
        assert_eq!(r.components.iter().filter(|c| c.boundary_euler == Some(0)).count(), 1);
    }
}

