//! The integral affine 3-sphere `B = ∂Δ` of a reflexive lattice 4-simplex,
//! the triangulations of its 2-faces, the refinement cell complex carrying
//! the chart atlas, and the discriminant graph.

mod base;
mod cells;
mod discriminant;
mod file;
mod polytope;
mod triangulation;
mod validate;

pub use base::{build_quintic_base, flip, BaseComplex, Chart, ChartAtlas, GlobalEdge, GlobalTriangle, RefinementCell};
pub use cells::CellComplex;
pub use discriminant::{build_discriminant, DeltaEdge, DeltaVertex, DeltaVertexKind, DiscriminantGraph, VertexSign};
pub use file::{BaseFile, FaceFile};
pub use polytope::{Facet, LatticePolytope4};
pub use triangulation::{standard_maximal_triangulation, FaceTriangulation};
pub use validate::{validate_base, BaseDiagnostics};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BaseError {
    #[error("polytope vertices do not affinely span 4-space")]
    Degenerate,
    #[error("facet opposite vertex {omitted} has no integral normal with value 1")]
    NotReflexive { omitted: usize },
    #[error("2-face {face} is not a dilated unimodular lattice triangle")]
    UnsupportedFace { face: usize },
    #[error("no triangulation given for 2-face {face}")]
    MissingTriangulation { face: usize },
    #[error("invalid triangulation of 2-face {face}: {reason}")]
    InvalidTriangulation { face: usize, reason: String },
    #[error("Δ vertex {vertex} has {degree} incident edges and no sign")]
    NonTrivalent { vertex: usize, degree: usize },
    #[error("2-face {0} does not exist")]
    UnknownFace(usize),
    #[error("edge ({0}, {1}) is not an edge of the face triangulation")]
    EdgeNotFound(usize, usize),
    #[error("edge ({0}, {1}) lies on the boundary of the face")]
    BoundaryEdge(usize, usize),
    #[error("quadrilateral around edge ({0}, {1}) is not strictly convex")]
    NotStrictlyConvex(usize, usize),
    #[error("Δ does not cross edge ({0}, {1}) between two negative vertices")]
    DeltaPattern(usize, usize),
    #[error("chart basis at {0} is not unimodular")]
    ChartBasis(String),
    #[error("base file: {0}")]
    File(String),
}
