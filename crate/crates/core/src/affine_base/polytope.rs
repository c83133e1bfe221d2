use serde::{Deserialize, Serialize};

use super::BaseError;
use crate::lattice::{det4, dot4, Vec4};

/// A lattice 4-simplex containing the origin in its interior.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePolytope4 {
    vertices: [Vec4; 5],
}

/// Facet of the simplex, named by the vertex it omits. `normal` is the
/// integral covector taking the value 1 on the facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Facet {
    pub omitted: usize,
    pub normal: Vec4,
}

impl Facet {
    pub fn contains_vertex(&self, v: usize) -> bool {
        v != self.omitted
    }
}

pub const QUINTIC_VERTICES: [Vec4; 5] =
    [[-1, -1, -1, -1], [4, -1, -1, -1], [-1, 4, -1, -1], [-1, -1, 4, -1], [-1, -1, -1, 4]];

impl LatticePolytope4 {
    pub fn quintic() -> Self {
        Self { vertices: QUINTIC_VERTICES }
    }

    pub fn new(vertices: [Vec4; 5]) -> Result<Self, BaseError> {
        let p = Self { vertices };
        let rows = [1, 2, 3, 4].map(|i| crate::lattice::sub4(&vertices[i], &vertices[0]));
        if det4(&rows) == 0 {
            return Err(BaseError::Degenerate);
        }
        for f in 0..5 {
            p.compute_facet(f)?;
        }
        Ok(p)
    }

    pub fn vertices(&self) -> &[Vec4; 5] {
        &self.vertices
    }

    pub fn is_quintic(&self) -> bool {
        self.vertices == QUINTIC_VERTICES
    }

    pub fn facet(&self, omitted: usize) -> Facet {
        self.compute_facet(omitted).expect("validated at construction")
    }

    pub fn facets(&self) -> [Facet; 5] {
        [0, 1, 2, 3, 4].map(|f| self.facet(f))
    }

    fn compute_facet(&self, omitted: usize) -> Result<Facet, BaseError> {
        let q: Vec<Vec4> = (0..5).filter(|&i| i != omitted).map(|i| self.vertices[i]).collect();
        let m = [q[0], q[1], q[2], q[3]];
        let det = det4(&m);
        if det == 0 {
            return Err(BaseError::NotReflexive { omitted });
        }
        // Solve m n = (1,1,1,1) by Cramer's rule.
        let mut normal = [0; 4];
        for (c, entry) in normal.iter_mut().enumerate() {
            let mut mc = m;
            for row in mc.iter_mut() {
                row[c] = 1;
            }
            let num = det4(&mc);
            if num % det != 0 {
                return Err(BaseError::NotReflexive { omitted });
            }
            *entry = num / det;
        }
        if dot4(&normal, &self.vertices[omitted]) >= 1 {
            return Err(BaseError::NotReflexive { omitted });
        }
        Ok(Facet { omitted, normal })
    }
}

/// Gcd of the 2x2 minors of the 2x4 matrix with rows `u`, `w`; equal to 1
/// iff `u, w` is a basis of the saturated rank-2 lattice they span.
pub(crate) fn minors_gcd(u: &Vec4, w: &Vec4) -> i64 {
    let mut g = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            g = crate::lattice::gcd(g, u[i] * w[j] - u[j] * w[i]);
        }
    }
    g
}
