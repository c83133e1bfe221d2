use serde::Serialize;

use super::base::{BaseComplex, RefinementCell};
use super::BaseError;
use crate::lattice::{dot4, sub4, IntMatrix3, Vec3, Vec4};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VertexSign {
    Positive,
    Negative,
    Bivalent,
}

/// Where a Δ-vertex sits: the barycenter of a unit triangle or the midpoint
/// of a triangulation edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DeltaVertexKind {
    Barycenter { triangle: usize },
    Midpoint { edge: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaVertex {
    pub kind: DeltaVertexKind,
    pub cell: usize,
    pub sign: VertexSign,
    pub edges: Vec<usize>,
}

/// A segment of Δ from an edge midpoint to a triangle barycenter.
///
/// The monodromy of the loop based in the chart of `chart_point` that
/// passes through facet `facets[0]` first is `u ↦ u + ⟨n, u⟩ d`; `n` and
/// `d` are given both in `Z^4` and in chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaEdge {
    pub ends: [usize; 2],
    pub cell: usize,
    pub triangle: usize,
    pub edge: usize,
    pub chart_point: usize,
    pub facets: [usize; 2],
    pub n: Vec4,
    pub d: Vec4,
    pub n_chart: Vec3,
    pub d_chart: Vec3,
}

impl DeltaEdge {
    pub fn transvection(&self) -> IntMatrix3 {
        let mut m = crate::lattice::IDENTITY3;
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += self.d_chart[i] * self.n_chart[j];
            }
        }
        m
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiscriminantGraph {
    pub vertices: Vec<DeltaVertex>,
    pub edges: Vec<DeltaEdge>,
}

impl DiscriminantGraph {
    pub fn count(&self, sign: VertexSign) -> usize {
        self.vertices.iter().filter(|v| v.sign == sign).count()
    }

    /// Index of the vertex at the midpoint of a triangulation edge.
    pub fn midpoint_vertex(&self, edge: usize) -> Option<usize> {
        self.vertices.iter().position(|v| v.kind == DeltaVertexKind::Midpoint { edge })
    }

    /// True if Δ crosses the edge in a bivalent point between two negative vertices.
    pub fn crossing_is_negative_pair(&self, edge: usize) -> bool {
        let Some(v) = self.midpoint_vertex(edge) else { return false };
        let vert = &self.vertices[v];
        vert.sign == VertexSign::Bivalent
            && vert.edges.iter().all(|&e| {
                let other = self.edges[e].ends[1];
                self.vertices[other].sign == VertexSign::Negative
            })
    }
}

fn same_up_to_sign(a: &Vec4, b: &Vec4) -> bool {
    a == b || *a == [-b[0], -b[1], -b[2], -b[3]]
}

/// Shared-covector / shared-vector rule for trivalent vertices.
fn classify(legs: &[&DeltaEdge]) -> Option<VertexSign> {
    match legs.len() {
        2 => Some(VertexSign::Bivalent),
        3 => {
            let share_n = legs.iter().all(|l| same_up_to_sign(&l.n, &legs[0].n));
            let share_d = legs.iter().all(|l| same_up_to_sign(&l.d, &legs[0].d));
            match (share_n, share_d) {
                (true, false) => Some(VertexSign::Negative),
                (false, true) => Some(VertexSign::Positive),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Assembles Δ from the face triangulations: one leg from each triangle
/// barycenter to the midpoint of each of its edges.
pub fn build_discriminant(base: &BaseComplex) -> Result<DiscriminantGraph, BaseError> {
    let atlas = base.atlas();
    let points = base.points();
    let tris = base.triangles();
    let edges = base.edges();
    let mut vertices = Vec::with_capacity(tris.len() + edges.len());
    for t in 0..tris.len() {
        let cell = base.cell_id(RefinementCell::Barycenter(t)).expect("barycenter cell");
        vertices.push(DeltaVertex { kind: DeltaVertexKind::Barycenter { triangle: t }, cell, sign: VertexSign::Negative, edges: vec![] });
    }
    let mid0 = tris.len();
    for e in 0..edges.len() {
        let cell = base.cell_id(RefinementCell::Midpoint(e)).expect("midpoint cell");
        vertices.push(DeltaVertex { kind: DeltaVertexKind::Midpoint { edge: e }, cell, sign: VertexSign::Bivalent, edges: vec![] });
    }
    let mut legs = Vec::with_capacity(3 * tris.len());
    for (t, tri) in tris.iter().enumerate() {
        let facets = base.facets_of_face(tri.face);
        let n = sub4(&atlas.facet_normal(facets[0]), &atlas.facet_normal(facets[1]));
        for &e in &tri.edges {
            let [w1, w2] = edges[e].ends;
            let d = sub4(&points[w2], &points[w1]);
            let cell = base.cell_id(RefinementCell::EdgeTriangle(e, t)).expect("leg cell");
            let id = legs.len();
            legs.push(DeltaEdge {
                ends: [mid0 + e, t],
                cell,
                triangle: t,
                edge: e,
                chart_point: w1,
                facets,
                n,
                d,
                n_chart: atlas.covector_coords(w1, &n),
                d_chart: atlas.point_coords(w1, &points[w2]),
            });
            vertices[t].edges.push(id);
            vertices[mid0 + e].edges.push(id);
        }
    }
    for (i, v) in vertices.iter_mut().enumerate() {
        let incident: Vec<&DeltaEdge> = v.edges.iter().map(|&e| &legs[e]).collect();
        v.sign = classify(&incident).ok_or(BaseError::NonTrivalent { vertex: i, degree: incident.len() })?;
    }
    debug_assert!(legs.iter().all(|l| dot4(&l.n, &l.d) == 0));
    Ok(DiscriminantGraph { vertices, edges: legs })
}
