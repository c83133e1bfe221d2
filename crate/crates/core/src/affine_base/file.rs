use serde::{Deserialize, Serialize};

use super::base::BaseComplex;
use super::polytope::LatticePolytope4;
use super::triangulation::FaceTriangulation;
use super::BaseError;

/// On-disk form of a base: polytope vertices and, per 2-face, its triangles
/// in face coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseFile {
    pub vertices: Vec<[i64; 4]>,
    pub faces: Vec<FaceFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceFile {
    /// Polytope vertex indices spanning the face, ascending.
    pub corners: [usize; 3],
    pub side: i64,
    pub triangles: Vec<[[i64; 2]; 3]>,
}

impl BaseComplex {
    pub fn to_file(&self) -> BaseFile {
        let faces = self
            .triangulations()
            .iter()
            .map(|t| FaceFile {
                corners: self.faces()[t.face()],
                side: t.side(),
                triangles: t.triangles().iter().map(|tri| tri.map(|i| t.points()[i])).collect(),
            })
            .collect();
        BaseFile { vertices: self.polytope().vertices().to_vec(), faces }
    }

    pub fn from_file(file: &BaseFile) -> Result<Self, BaseError> {
        let vertices: [[i64; 4]; 5] = file
            .vertices
            .clone()
            .try_into()
            .map_err(|_| BaseError::File(format!("expected 5 vertices, found {}", file.vertices.len())))?;
        let polytope = LatticePolytope4::new(vertices)?;
        let mut order = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                for k in j + 1..5 {
                    order.push([i, j, k]);
                }
            }
        }
        let mut tris = Vec::new();
        for ff in &file.faces {
            let face = order
                .iter()
                .position(|c| *c == ff.corners)
                .ok_or_else(|| BaseError::File(format!("unknown face corners {:?}", ff.corners)))?;
            tris.push(FaceTriangulation::from_triangles(face, ff.side, &ff.triangles)?);
        }
        BaseComplex::from_parts(polytope, tris, [true; 5])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("base file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, BaseError> {
        let file: BaseFile = serde_json::from_str(text).map_err(|e| BaseError::File(e.to_string()))?;
        Self::from_file(&file)
    }
}
