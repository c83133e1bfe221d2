//! Integral monodromy, its mod-2 action on the eight fibre 2-torsion points,
//! orbit counts of the real locus, and Euler characteristic bookkeeping.

mod loops;
mod perm;

use serde::{Deserialize, Serialize};

pub use loops::{leg_loop, loop_monodromy, negative_edge_rep, vertex_generators, vertex_rep, VertexGenerator};
pub use perm::{component_orbits, local_negative_edge_analysis, ComponentInfo, ComponentReport, Perm8, PermRep, TORSION_POINTS};

use crate::affine_base::{DiscriminantGraph, VertexSign};
use crate::lattice::{dot3, inverse3_unimodular, transpose3, IntMatrix3, Vec3, IDENTITY3};

/// Which of the two dual torus fibrations a computation refers to: `F`
/// has fibres `T*B/Λ̌`, `FDual` has fibres `TB/Λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "f")]
    F,
    #[serde(rename = "fdual")]
    FDual,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::F => "f",
            Side::FDual => "fdual",
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::F => Side::FDual,
            Side::FDual => Side::F,
        }
    }
}

impl std::str::FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "f" => Ok(Side::F),
            "fdual" | "fcheck" => Ok(Side::FDual),
            _ => Err(format!("unknown side {s:?}, expected f or fdual")),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MonodromyError {
    #[error("⟨n, d⟩ = {0}, a transvection needs 0")]
    NotTransvection(i64),
    #[error("matrix is not invertible over the integers")]
    NotUnimodular,
    #[error("loop is empty or not closed")]
    NotClosed,
    #[error("loop meets Δ at cell {0}")]
    TouchesDelta(usize),
    #[error("consecutive loop cells {0} and {1} are not incident")]
    NotIncident(usize, usize),
    #[error("no transport between the charts of cells {0} and {1}")]
    NoTransport(usize, usize),
    #[error("monodromy pattern does not match the negative-negative edge model: {0}")]
    PatternMismatch(String),
    #[error("Δ vertex {0} is trivalent but carries no sign")]
    UnsignedVertex(usize),
    #[error("{0}")]
    Convention(String),
}

/// The unipotent map `v ↦ v + ⟨n, v⟩ d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Transvection {
    pub n: Vec3,
    pub d: Vec3,
    pub matrix: IntMatrix3,
}

pub fn transvection(n: Vec3, d: Vec3) -> Result<Transvection, MonodromyError> {
    let p = dot3(&n, &d);
    if p != 0 {
        return Err(MonodromyError::NotTransvection(p));
    }
    let mut matrix = IDENTITY3;
    for i in 0..3 {
        for j in 0..3 {
            matrix[i][j] += d[i] * n[j];
        }
    }
    Ok(Transvection { n, d, matrix })
}

impl Transvection {
    pub fn inverse(&self) -> Transvection {
        let d = [-self.d[0], -self.d[1], -self.d[2]];
        transvection(self.n, d).expect("same pairing")
    }
}

/// `(Tᵗ)⁻¹`, the action on the dual lattice.
pub fn dual_rep(t: &IntMatrix3) -> Result<IntMatrix3, MonodromyError> {
    inverse3_unimodular(&transpose3(t)).ok_or(MonodromyError::NotUnimodular)
}

/// Permutation of `u_0..u_7` induced by the tangent monodromy `t` on the
/// 2-torsion of the fibre of the given side: through `(tᵗ)⁻¹` for `F`,
/// through `t` itself for `FDual`.
pub fn torsion_action(t: &IntMatrix3, side: Side) -> Result<Perm8, MonodromyError> {
    let m = match side {
        Side::F => dual_rep(t)?,
        Side::FDual => {
            inverse3_unimodular(t).ok_or(MonodromyError::NotUnimodular)?;
            *t
        }
    };
    Ok(Perm8::from_matrix_mod2(&m))
}

/// Sum of fibre Euler characteristics: +1 per positive vertex, −1 per
/// negative vertex.
pub fn euler_characteristic(delta: &DiscriminantGraph) -> Result<i64, MonodromyError> {
    let mut chi = 0;
    for (i, v) in delta.vertices.iter().enumerate() {
        match v.sign {
            VertexSign::Positive => chi += 1,
            VertexSign::Negative => chi -= 1,
            VertexSign::Bivalent if v.edges.len() == 3 => return Err(MonodromyError::UnsignedVertex(i)),
            VertexSign::Bivalent => {}
        }
    }
    Ok(chi)
}
