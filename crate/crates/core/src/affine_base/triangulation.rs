use std::collections::{BTreeMap, HashMap};

use super::BaseError;

/// Triangulation of a lattice triangle of side `side`, in face-intrinsic
/// coordinates `(a, b)` with `a, b >= 0`, `a + b <= side`.
///
/// Points are ordered row by row: `b` outer, `a` inner. Triangles are point
/// index triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTriangulation {
    face: usize,
    side: i64,
    points: Vec<[i64; 2]>,
    index: HashMap<[i64; 2], usize>,
    triangles: Vec<[usize; 3]>,
}

/// Uniform unimodular triangulation by upward and downward unit triangles.
pub fn standard_maximal_triangulation(face: usize, side: i64) -> FaceTriangulation {
    let mut t = FaceTriangulation::empty(face, side);
    let at = |t: &FaceTriangulation, a: i64, b: i64| t.index[&[a, b]];
    let mut tris = Vec::new();
    for b in 0..side {
        for a in 0..side - b {
            tris.push([at(&t, a, b), at(&t, a + 1, b), at(&t, a, b + 1)]);
            if a + b + 2 <= side {
                tris.push([at(&t, a + 1, b), at(&t, a, b + 1), at(&t, a + 1, b + 1)]);
            }
        }
    }
    t.triangles = tris;
    t
}

fn cross(o: [i64; 2], p: [i64; 2], q: [i64; 2]) -> i64 {
    (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])
}

impl FaceTriangulation {
    fn empty(face: usize, side: i64) -> Self {
        let mut points = Vec::new();
        let mut index = HashMap::new();
        for b in 0..=side {
            for a in 0..=side - b {
                index.insert([a, b], points.len());
                points.push([a, b]);
            }
        }
        Self { face, side, points, index, triangles: Vec::new() }
    }

    /// Builds from triangles given by point coordinates and validates it.
    pub fn from_triangles(face: usize, side: i64, triangles: &[[[i64; 2]; 3]]) -> Result<Self, BaseError> {
        let mut t = Self::empty(face, side);
        let mut tris = Vec::with_capacity(triangles.len());
        for tri in triangles {
            let mut idx = [0; 3];
            for (k, p) in tri.iter().enumerate() {
                idx[k] = *t.index.get(p).ok_or_else(|| BaseError::InvalidTriangulation {
                    face,
                    reason: format!("point {p:?} outside the face"),
                })?;
            }
            tris.push(idx);
        }
        t.triangles = tris;
        t.validate()?;
        Ok(t)
    }

    pub fn face(&self) -> usize {
        self.face
    }

    pub fn side(&self) -> i64 {
        self.side
    }

    pub fn points(&self) -> &[[i64; 2]] {
        &self.points
    }

    pub fn point_index(&self, p: [i64; 2]) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Sorted list of edges, each as a sorted point pair.
    pub fn edges(&self) -> Vec<[usize; 2]> {
        let mut e: Vec<[usize; 2]> = self.edge_triangles().into_keys().collect();
        e.sort_unstable();
        e
    }

    fn edge_triangles(&self) -> BTreeMap<[usize; 2], Vec<usize>> {
        let mut map: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
        for (ti, t) in self.triangles.iter().enumerate() {
            for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                let (p, q) = (t[i].min(t[j]), t[i].max(t[j]));
                map.entry([p, q]).or_default().push(ti);
            }
        }
        map
    }

    /// True if both endpoints lie on a common side of the face.
    pub fn is_boundary_edge(&self, edge: [usize; 2]) -> bool {
        let [p, q] = [self.points[edge[0]], self.points[edge[1]]];
        let s = self.side;
        (p[0] == 0 && q[0] == 0) || (p[1] == 0 && q[1] == 0) || (p[0] + p[1] == s && q[0] + q[1] == s)
    }

    /// Checks maximality, unimodularity and that the triangles tile the face.
    pub fn validate(&self) -> Result<(), BaseError> {
        let bad = |reason: String| BaseError::InvalidTriangulation { face: self.face, reason };
        let mut used = vec![false; self.points.len()];
        for t in &self.triangles {
            let [a, b, c] = t.map(|i| self.points[i]);
            if cross(a, b, c).abs() != 1 {
                return Err(bad(format!("triangle {t:?} is not unimodular")));
            }
            for &i in t {
                used[i] = true;
            }
        }
        if let Some(p) = used.iter().position(|u| !u) {
            return Err(bad(format!("lattice point {:?} is not a vertex", self.points[p])));
        }
        if self.triangles.len() as i64 != self.side * self.side {
            return Err(bad(format!("{} triangles, expected {}", self.triangles.len(), self.side * self.side)));
        }
        for (e, ts) in self.edge_triangles() {
            let expected = if self.is_boundary_edge(e) { 1 } else { 2 };
            if ts.len() != expected {
                return Err(bad(format!("edge {e:?} lies in {} triangles", ts.len())));
            }
            if expected == 2 {
                let (p, q) = (self.points[e[0]], self.points[e[1]]);
                let third = |t: usize| {
                    let i = self.triangles[t].iter().copied().find(|&i| i != e[0] && i != e[1]).unwrap();
                    self.points[i]
                };
                if cross(p, q, third(ts[0])).signum() == cross(p, q, third(ts[1])).signum() {
                    return Err(bad(format!("triangles overlap along edge {e:?}")));
                }
            }
        }
        Ok(())
    }

    /// The two triangles on either side of an interior edge, together with
    /// their vertices opposite the edge.
    fn quad(&self, edge: [usize; 2]) -> Result<([usize; 2], [usize; 2]), BaseError> {
        let e = [edge[0].min(edge[1]), edge[0].max(edge[1])];
        if e[1] >= self.points.len() {
            return Err(BaseError::EdgeNotFound(edge[0], edge[1]));
        }
        let map = self.edge_triangles();
        let ts = map.get(&e).ok_or(BaseError::EdgeNotFound(edge[0], edge[1]))?;
        if self.is_boundary_edge(e) || ts.len() != 2 {
            return Err(BaseError::BoundaryEdge(edge[0], edge[1]));
        }
        let opp = |t: usize| self.triangles[t].iter().copied().find(|&i| i != e[0] && i != e[1]).unwrap();
        Ok(([ts[0], ts[1]], [opp(ts[0]), opp(ts[1])]))
    }

    /// Replaces an interior edge by the other diagonal of its quadrilateral.
    pub fn flip(&self, edge: [usize; 2]) -> Result<Self, BaseError> {
        let (ts, [r, s]) = self.quad(edge)?;
        let [p, q] = edge;
        let (pp, pq, pr, ps) = (self.points[p], self.points[q], self.points[r], self.points[s]);
        // r, s lie on opposite sides of pq by validity; convexity needs p, q
        // strictly on opposite sides of rs as well.
        let side_p = cross(pr, ps, pp);
        let side_q = cross(pr, ps, pq);
        if side_p == 0 || side_q == 0 || side_p.signum() == side_q.signum() {
            return Err(BaseError::NotStrictlyConvex(p, q));
        }
        let mut out = self.clone();
        out.triangles[ts[0]] = [r, s, p];
        out.triangles[ts[1]] = [r, s, q];
        out.validate()?;
        Ok(out)
    }

    /// Whether `edge` is an interior edge whose quadrilateral is strictly convex.
    pub fn is_flippable(&self, edge: [usize; 2]) -> bool {
        self.flip(edge).is_ok()
    }
}
