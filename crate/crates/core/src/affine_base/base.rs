use std::collections::HashMap;
use std::sync::Arc;

use super::cells::CellComplex;
use super::discriminant::{build_discriminant, DiscriminantGraph};
use super::polytope::{minors_gcd, Facet, LatticePolytope4};
use super::triangulation::{standard_maximal_triangulation, FaceTriangulation};
use super::BaseError;
use crate::lattice::{
    add4, content4, coords4, det4, dot4, inverse3_unimodular, inverse4_unimodular, scale4, sub4, IntMatrix3, Vec3,
    Vec4, IDENTITY3,
};

/// An affine chart: the tangent lattice at a lattice point of the
/// 2-skeleton (`Z^4 / Z p`) or at the interior of a facet (`ker ñ_F`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chart {
    Point(usize),
    Facet(usize),
}

/// Bases of all chart lattices and the integral transports between them.
#[derive(Clone, Debug)]
pub struct ChartAtlas {
    num_points: usize,
    point_frames: Vec<[Vec4; 4]>,
    point_inv: Vec<[Vec4; 4]>,
    facet_frames: [[Vec4; 4]; 5],
    facet_inv: [[Vec4; 4]; 5],
    normals: [Vec4; 5],
    transports: HashMap<(usize, usize), IntMatrix3>,
}

impl ChartAtlas {
    pub fn num_charts(&self) -> usize {
        self.num_points + 5
    }

    pub fn chart_id(&self, c: Chart) -> u32 {
        match c {
            Chart::Point(p) => p as u32,
            Chart::Facet(f) => (self.num_points + f) as u32,
        }
    }

    pub fn decode(&self, id: u32) -> Chart {
        let id = id as usize;
        if id < self.num_points {
            Chart::Point(id)
        } else {
            Chart::Facet(id - self.num_points)
        }
    }

    /// Representatives in `Z^4` of the chosen basis of `Z^4 / Z p`.
    pub fn point_basis(&self, p: usize) -> [Vec4; 3] {
        let f = &self.point_frames[p];
        [f[1], f[2], f[3]]
    }

    pub fn facet_basis(&self, f: usize) -> [Vec4; 3] {
        let fr = &self.facet_frames[f];
        [fr[1], fr[2], fr[3]]
    }

    /// Coordinates of the class of `m` in `Z^4 / Z p`.
    pub fn point_coords(&self, p: usize, m: &Vec4) -> Vec3 {
        let x = coords4(&self.point_inv[p], m);
        [x[1], x[2], x[3]]
    }

    /// Coordinates of `m` in the facet lattice, if `m` lies in it.
    pub fn facet_coords(&self, f: usize, m: &Vec4) -> Option<Vec3> {
        let x = coords4(&self.facet_inv[f], m);
        (x[0] == 0).then_some([x[1], x[2], x[3]])
    }

    /// Values of a covector on the basis of the chart at `p`.
    pub fn covector_coords(&self, p: usize, n: &Vec4) -> Vec3 {
        let b = self.point_basis(p);
        [dot4(n, &b[0]), dot4(n, &b[1]), dot4(n, &b[2])]
    }

    /// Transport `Z^4/Zp -> ker ñ_F` for a point `p` on the facet `f`.
    pub fn transport(&self, p: usize, f: usize) -> Option<IntMatrix3> {
        self.transports.get(&(p, f)).copied()
    }

    /// Transport between two charts sharing a cell incidence.
    pub fn transport_between(&self, from: Chart, to: Chart) -> Option<IntMatrix3> {
        match (from, to) {
            _ if from == to => Some(IDENTITY3),
            (Chart::Point(p), Chart::Facet(f)) => self.transport(p, f),
            (Chart::Facet(f), Chart::Point(p)) => self.transport(p, f).and_then(|a| inverse3_unimodular(&a)),
            _ => None,
        }
    }

    pub fn facet_normal(&self, f: usize) -> Vec4 {
        self.normals[f]
    }
}

/// An edge of the global triangulation of the 2-skeleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalEdge {
    pub ends: [usize; 2],
    pub faces: Vec<usize>,
    pub polytope_edge: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalTriangle {
    pub face: usize,
    pub vertices: [usize; 3],
    pub edges: [usize; 3],
}

/// Cells of the refinement: the first barycentric subdivision of the face
/// triangulations, plus one 3-cell per facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RefinementCell {
    Lattice(usize),
    Midpoint(usize),
    Barycenter(usize),
    LatticeEdge(usize, usize),
    LatticeTriangle(usize, usize),
    EdgeTriangle(usize, usize),
    Flag(usize, usize, usize),
    Solid(usize),
}

/// The affine 3-sphere with its triangulations, charts and discriminant.
#[derive(Clone, Debug)]
pub struct BaseComplex {
    polytope: LatticePolytope4,
    facets: [Facet; 5],
    faces: Vec<[usize; 3]>,
    polytope_edges: Vec<[usize; 2]>,
    face_frames: Vec<(Vec4, Vec4)>,
    triangulations: Vec<FaceTriangulation>,
    solids: [bool; 5],
    points: Vec<Vec4>,
    local_to_global: Vec<Vec<usize>>,
    edges: Vec<GlobalEdge>,
    edge_index: HashMap<[usize; 2], usize>,
    triangles: Vec<GlobalTriangle>,
    atlas: ChartAtlas,
    cells: Arc<CellComplex>,
    cell_kinds: Vec<RefinementCell>,
    cell_lookup: HashMap<RefinementCell, usize>,
    discriminant: DiscriminantGraph,
}

/// The quintic base: boundary of the simplex with vertices `P_1..P_5`, each
/// 2-face carrying the standard triangulation.
pub fn build_quintic_base() -> BaseComplex {
    BaseComplex::with_standard_triangulations(LatticePolytope4::quintic()).expect("quintic base is valid")
}

/// Flips the interior edge `edge` (face-local point indices) of a face.
pub fn flip(base: &BaseComplex, face: usize, edge: [usize; 2]) -> Result<BaseComplex, BaseError> {
    base.flip(face, edge)
}

fn polytope_faces() -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                out.push([i, j, k]);
            }
        }
    }
    out
}

fn polytope_edges() -> Vec<[usize; 2]> {
    let mut out = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            out.push([i, j]);
        }
    }
    out
}

fn primitive(v: &Vec4) -> Vec4 {
    let g = content4(v);
    [v[0] / g, v[1] / g, v[2] / g, v[3] / g]
}

impl BaseComplex {
    pub fn with_standard_triangulations(polytope: LatticePolytope4) -> Result<Self, BaseError> {
        let faces = polytope_faces();
        let mut tris = Vec::new();
        for (f, &[i, j, _]) in faces.iter().enumerate() {
            let side = content4(&sub4(&polytope.vertices()[j], &polytope.vertices()[i]));
            tris.push(standard_maximal_triangulation(f, side));
        }
        Self::from_parts(polytope, tris, [true; 5])
    }

    /// Assembles the base from a polytope and one triangulation per 2-face
    /// (faces ordered lexicographically by vertex triple). `solids` selects
    /// which facets contribute a 3-cell; all five are present on a sphere.
    pub fn from_parts(
        polytope: LatticePolytope4,
        triangulations: Vec<FaceTriangulation>,
        solids: [bool; 5],
    ) -> Result<Self, BaseError> {
        let faces = polytope_faces();
        let facets = polytope.facets();
        let verts = *polytope.vertices();
        let mut face_frames = Vec::new();
        for (f, &[i, j, k]) in faces.iter().enumerate() {
            let a = sub4(&verts[j], &verts[i]);
            let b = sub4(&verts[k], &verts[i]);
            let s = content4(&a);
            if content4(&b) != s || content4(&sub4(&verts[k], &verts[j])) != s {
                return Err(BaseError::UnsupportedFace { face: f });
            }
            let (u, w) = (primitive(&a), primitive(&b));
            if minors_gcd(&u, &w) != 1 {
                return Err(BaseError::UnsupportedFace { face: f });
            }
            face_frames.push((u, w));
        }
        let mut tri_by_face: Vec<Option<FaceTriangulation>> = vec![None; faces.len()];
        for t in triangulations {
            let f = t.face();
            if f >= faces.len() {
                return Err(BaseError::UnknownFace(f));
            }
            let s = content4(&sub4(&verts[faces[f][1]], &verts[faces[f][0]]));
            if t.side() != s {
                return Err(BaseError::InvalidTriangulation { face: f, reason: format!("side {} but face has side {s}", t.side()) });
            }
            t.validate()?;
            tri_by_face[f] = Some(t);
        }
        let triangulations: Vec<FaceTriangulation> = tri_by_face
            .into_iter()
            .enumerate()
            .map(|(f, t)| t.ok_or(BaseError::MissingTriangulation { face: f }))
            .collect::<Result<_, _>>()?;

        // Global lattice points, edges and triangles.
        let mut points: Vec<Vec4> = verts.to_vec();
        let mut point_index: HashMap<Vec4, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut local_to_global = Vec::new();
        for (f, t) in triangulations.iter().enumerate() {
            let (u, w) = face_frames[f];
            let origin = verts[faces[f][0]];
            let map: Vec<usize> = t
                .points()
                .iter()
                .map(|&[a, b]| {
                    let m = add4(&origin, &add4(&scale4(&u, a), &scale4(&w, b)));
                    *point_index.entry(m).or_insert_with(|| {
                        points.push(m);
                        points.len() - 1
                    })
                })
                .collect();
            local_to_global.push(map);
        }
        let pedges = polytope_edges();
        let mut edges: Vec<GlobalEdge> = Vec::new();
        let mut edge_index: HashMap<[usize; 2], usize> = HashMap::new();
        let mut triangles = Vec::new();
        for (f, t) in triangulations.iter().enumerate() {
            let map = &local_to_global[f];
            for tri in t.triangles() {
                let mut v = tri.map(|i| map[i]);
                v.sort_unstable();
                let mut es = [0; 3];
                for (slot, (a, b)) in [(0, 1), (1, 2), (0, 2)].into_iter().enumerate() {
                    let key = [v[a], v[b]];
                    let e = *edge_index.entry(key).or_insert_with(|| {
                        edges.push(GlobalEdge { ends: key, faces: Vec::new(), polytope_edge: None });
                        edges.len() - 1
                    });
                    if !edges[e].faces.contains(&f) {
                        edges[e].faces.push(f);
                    }
                    es[slot] = e;
                }
                triangles.push(GlobalTriangle { face: f, vertices: v, edges: es });
            }
        }
        for e in &mut edges {
            if e.faces.len() >= 2 {
                let a = faces[e.faces[0]];
                let b = faces[e.faces[1]];
                let common: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
                e.polytope_edge = pedges.iter().position(|pe| pe[..] == common[..]);
            }
        }

        let atlas = build_atlas(&polytope, &facets, &points)?;
        let mut base = Self {
            polytope,
            facets,
            faces,
            polytope_edges: pedges,
            face_frames,
            triangulations,
            solids,
            points,
            local_to_global,
            edges,
            edge_index,
            triangles,
            atlas,
            cells: Arc::new(CellComplex::default()),
            cell_kinds: Vec::new(),
            cell_lookup: HashMap::new(),
            discriminant: DiscriminantGraph::default(),
        };
        base.build_refinement();
        base.discriminant = build_discriminant(&base)?;
        Ok(base)
    }

    fn build_refinement(&mut self) {
        let np = self.points.len();
        let mut kinds: Vec<RefinementCell> = Vec::new();
        let mut dims: Vec<u8> = Vec::new();
        let mut faces: Vec<Vec<u32>> = Vec::new();
        let mut charts: Vec<Option<u32>> = Vec::new();
        let mut verts: Vec<Option<Vec<u32>>> = Vec::new();
        let mut lookup: HashMap<RefinementCell, usize> = HashMap::new();
        let mut push = |kind: RefinementCell, dim: u8, fs: Vec<u32>, chart: Option<u32>, v: Option<Vec<u32>>| {
            lookup.insert(kind, kinds.len());
            kinds.push(kind);
            dims.push(dim);
            faces.push(fs);
            charts.push(chart);
            verts.push(v.map(|mut v| {
                v.sort_unstable();
                v
            }));
            kinds.len() - 1
        };
        let pt = |p: usize| Some(p as u32);
        for p in 0..np {
            push(RefinementCell::Lattice(p), 0, vec![], pt(p), Some(vec![p as u32]));
        }
        let mid0 = np;
        for e in 0..self.edges.len() {
            push(RefinementCell::Midpoint(e), 0, vec![], None, Some(vec![(mid0 + e) as u32]));
        }
        let bary0 = mid0 + self.edges.len();
        for t in 0..self.triangles.len() {
            push(RefinementCell::Barycenter(t), 0, vec![], None, Some(vec![(bary0 + t) as u32]));
        }
        let mut pe = HashMap::new();
        for (e, edge) in self.edges.iter().enumerate() {
            for &p in &edge.ends {
                let fs = vec![p as u32, (mid0 + e) as u32];
                let c = push(RefinementCell::LatticeEdge(p, e), 1, fs.clone(), pt(p), Some(fs));
                pe.insert((p, e), c);
            }
        }
        let mut ptc = HashMap::new();
        let mut etc = HashMap::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for &p in &tri.vertices {
                let fs = vec![p as u32, (bary0 + t) as u32];
                let c = push(RefinementCell::LatticeTriangle(p, t), 1, fs.clone(), pt(p), Some(fs));
                ptc.insert((p, t), c);
            }
            for &e in &tri.edges {
                let fs = vec![(mid0 + e) as u32, (bary0 + t) as u32];
                let c = push(RefinementCell::EdgeTriangle(e, t), 1, fs.clone(), None, Some(fs));
                etc.insert((e, t), c);
            }
        }
        let mut flags_by_face: Vec<Vec<u32>> = vec![Vec::new(); self.faces.len()];
        for (t, tri) in self.triangles.iter().enumerate() {
            for &e in &tri.edges {
                for &p in &self.edges[e].ends {
                    let fs = vec![pe[&(p, e)] as u32, ptc[&(p, t)] as u32, etc[&(e, t)] as u32];
                    let v = vec![p as u32, (mid0 + e) as u32, (bary0 + t) as u32];
                    let c = push(RefinementCell::Flag(p, e, t), 2, fs, pt(p), Some(v));
                    flags_by_face[tri.face].push(c as u32);
                }
            }
        }
        for f in 0..5 {
            if !self.solids[f] {
                continue;
            }
            let mut fs = Vec::new();
            for (fi, face) in self.faces.iter().enumerate() {
                if !face.contains(&f) {
                    fs.extend_from_slice(&flags_by_face[fi]);
                }
            }
            push(RefinementCell::Solid(f), 3, fs, Some((np + f) as u32), None);
        }
        self.cells = Arc::new(CellComplex::new(dims, faces, charts, verts));
        self.cell_kinds = kinds;
        self.cell_lookup = lookup;
    }

    /// Flips an interior edge of a face triangulation; `edge` holds
    /// face-local point indices.
    pub fn flip(&self, face: usize, edge: [usize; 2]) -> Result<BaseComplex, BaseError> {
        let t = self.triangulations.get(face).ok_or(BaseError::UnknownFace(face))?;
        let n = t.points().len();
        if edge[0] >= n || edge[1] >= n || edge[0] == edge[1] {
            return Err(BaseError::EdgeNotFound(edge[0], edge[1]));
        }
        if t.is_boundary_edge(edge) {
            return Err(BaseError::BoundaryEdge(edge[0], edge[1]));
        }
        let g = [self.local_to_global[face][edge[0]], self.local_to_global[face][edge[1]]];
        let key = [g[0].min(g[1]), g[0].max(g[1])];
        let e = *self.edge_index.get(&key).ok_or(BaseError::EdgeNotFound(edge[0], edge[1]))?;
        if !self.discriminant.crossing_is_negative_pair(e) {
            return Err(BaseError::DeltaPattern(edge[0], edge[1]));
        }
        let flipped = t.flip(edge)?;
        let mut tris = self.triangulations.clone();
        tris[face] = flipped;
        Self::from_parts(self.polytope.clone(), tris, self.solids)
    }

    /// A copy of this base with the 3-cell of one facet removed.
    pub fn without_solid(&self, facet: usize) -> BaseComplex {
        let mut solids = self.solids;
        solids[facet] = false;
        Self::from_parts(self.polytope.clone(), self.triangulations.clone(), solids).expect("same data as self")
    }

    pub fn polytope(&self) -> &LatticePolytope4 {
        &self.polytope
    }

    pub fn facets(&self) -> &[Facet; 5] {
        &self.facets
    }

    /// Vertex triples of the 2-faces.
    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn polytope_edges(&self) -> &[[usize; 2]] {
        &self.polytope_edges
    }

    /// Facets containing a 2-face, by increasing omitted vertex.
    pub fn facets_of_face(&self, face: usize) -> [usize; 2] {
        let fv = self.faces[face];
        let others: Vec<usize> = (0..5).filter(|v| !fv.contains(v)).collect();
        [others[0], others[1]]
    }

    pub fn face_frame(&self, face: usize) -> (Vec4, Vec4) {
        self.face_frames[face]
    }

    pub fn triangulations(&self) -> &[FaceTriangulation] {
        &self.triangulations
    }

    pub fn triangulation(&self, face: usize) -> &FaceTriangulation {
        &self.triangulations[face]
    }

    pub fn solids(&self) -> [bool; 5] {
        self.solids
    }

    pub fn points(&self) -> &[Vec4] {
        &self.points
    }

    pub fn global_point(&self, face: usize, local: usize) -> usize {
        self.local_to_global[face][local]
    }

    pub fn edges(&self) -> &[GlobalEdge] {
        &self.edges
    }

    pub fn edge_between(&self, p: usize, q: usize) -> Option<usize> {
        self.edge_index.get(&[p.min(q), p.max(q)]).copied()
    }

    pub fn triangles(&self) -> &[GlobalTriangle] {
        &self.triangles
    }

    pub fn atlas(&self) -> &ChartAtlas {
        &self.atlas
    }

    /// The refinement cell complex.
    pub fn cells(&self) -> &CellComplex {
        &self.cells
    }

    pub fn shared_cells(&self) -> Arc<CellComplex> {
        Arc::clone(&self.cells)
    }

    pub fn cell_kind(&self, cell: usize) -> RefinementCell {
        self.cell_kinds[cell]
    }

    pub fn cell_id(&self, kind: RefinementCell) -> Option<usize> {
        self.cell_lookup.get(&kind).copied()
    }

    pub fn discriminant(&self) -> &DiscriminantGraph {
        &self.discriminant
    }

    /// Mutable access to the discriminant data, for diagnostics experiments.
    pub fn discriminant_mut(&mut self) -> &mut DiscriminantGraph {
        &mut self.discriminant
    }

    /// Interior edges of all faces whose flip is valid, as `(face, local edge)`.
    pub fn flippable_edges(&self) -> Vec<(usize, [usize; 2])> {
        let mut out = Vec::new();
        for (f, t) in self.triangulations.iter().enumerate() {
            for e in t.edges() {
                if !t.is_boundary_edge(e) && t.is_flippable(e) {
                    out.push((f, e));
                }
            }
        }
        out
    }
}

fn build_atlas(polytope: &LatticePolytope4, facets: &[Facet; 5], points: &[Vec4]) -> Result<ChartAtlas, BaseError> {
    let verts = polytope.vertices();
    let mut facet_frames = [[[0; 4]; 4]; 5];
    let mut facet_inv = [[[0; 4]; 4]; 5];
    for f in 0..5 {
        let q: Vec<Vec4> = (0..5).filter(|&i| i != f).map(|i| verts[i]).collect();
        let frame = [q[0], primitive(&sub4(&q[1], &q[0])), primitive(&sub4(&q[2], &q[0])), primitive(&sub4(&q[3], &q[0]))];
        facet_inv[f] = inverse4_unimodular(&frame).ok_or_else(|| BaseError::ChartBasis(format!("facet {f}")))?;
        facet_frames[f] = frame;
    }
    let mut point_frames = Vec::with_capacity(points.len());
    let mut point_inv = Vec::with_capacity(points.len());
    for (p, m) in points.iter().enumerate() {
        let frame = if p < 5 {
            let dirs: Vec<Vec4> = (0..5).filter(|&j| j != p).map(|j| primitive(&sub4(&verts[j], &verts[p]))).collect();
            [*m, dirs[0], dirs[1], dirs[2]]
        } else {
            let f = (0..5).find(|&f| dot4(&facets[f].normal, m) == 1).expect("lattice point lies on a facet");
            let fr = facet_frames[f];
            [*m, fr[1], fr[2], fr[3]]
        };
        if det4(&frame).abs() != 1 {
            return Err(BaseError::ChartBasis(format!("lattice point {m:?}")));
        }
        point_inv.push(inverse4_unimodular(&frame).unwrap());
        point_frames.push(frame);
    }
    let normals = facets.map(|f| f.normal);
    let mut atlas = ChartAtlas {
        num_points: points.len(),
        point_frames,
        point_inv,
        facet_frames,
        facet_inv,
        normals,
        transports: HashMap::new(),
    };
    for (p, m) in points.iter().enumerate() {
        for f in 0..5 {
            if dot4(&normals[f], m) != 1 {
                continue;
            }
            let basis = atlas.point_basis(p);
            let mut a = [[0; 3]; 3];
            for (j, b) in basis.iter().enumerate() {
                let lift = sub4(b, &scale4(m, dot4(&normals[f], b)));
                let c = atlas.facet_coords(f, &lift).expect("lift lies in the facet lattice");
                for i in 0..3 {
                    a[i][j] = c[i];
                }
            }
            atlas.transports.insert((p, f), a);
        }
    }
    Ok(atlas)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quintic_counts() {
        let b = build_quintic_base();
        assert_eq!(b.points().len(), 105);
        assert_eq!(b.edges().len(), 350);
        assert_eq!(b.edges().iter().filter(|e| e.polytope_edge.is_some()).count(), 50);
        assert_eq!(b.triangles().len(), 250);
        let c = b.cells();
        assert_eq!([c.count(0), c.count(1), c.count(2), c.count(3)], [705, 2200, 1500, 5]);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn vertex_chart_at_p1_is_standard() {
        let b = build_quintic_base();
        assert_eq!(b.atlas().point_basis(0), [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]);
        assert_eq!(b.atlas().point_coords(0, &[0, 0, 0, 1]), [-1, -1, -1]);
    }

    #[test]
    fn transports_are_unimodular() {
        let b = build_quintic_base();
        for p in 0..b.points().len() {
            for f in 0..5 {
                if let Some(a) = b.atlas().transport(p, f) {
                    assert_eq!(crate::lattice::det3(&a).abs(), 1);
                }
            }
        }
    }
}
