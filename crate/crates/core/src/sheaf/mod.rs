//! Constructible sheaves on the refined base, their cohomology, cup
//! products and the long exact sequence of the real-point count.

mod cellular;
mod cup;
mod les;
mod local_system;
mod morphism;
mod simplicial;

pub use cellular::{cohomology_basis, pushforward_sheaf, sheaf_cohomology, Cochain, CellularSheaf};
pub use cup::{beta_cocycle, cup_product, mu_dualize, restriction_to_fibre, CupRule, StalkProduct};
pub use les::{
    assemble_les, assemble_les_on, functional_inclusion, les_report, indicator_class, point_sum, ComplexWithBases, ExactnessAudit,
    LESReport, NodeCheck, ShortExactSequence,
};
pub use local_system::{build_local_system, cover_matrix, fibre_from_torsion_action, quotient_inclusion, torsion_point, LocalSystem, SheafLabel};
pub use morphism::{stalkwise_exact, SheafMorphism};
pub use simplicial::{
    barycentric_subdivision, cech_complex, check_leray_cover, complex_from_simplices, cone_complex,
    random_stellar_subdivisions, stellar_subdivision,
};

use crate::gf2::Gf2Error;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SheafError {
    #[error("loop passes through the discriminant at cell {0}")]
    TouchesDelta(usize),
    #[error("no transport between charts {0} and {1}")]
    MissingTransport(u32, u32),
    #[error("base has no discriminant transvections")]
    MissingTransvections,
    #[error("open star of cell {0} meets a chart in several pieces")]
    DisconnectedStar(usize),
    #[error("open star of cell {0} avoids every chart")]
    EmptyStar(usize),
    #[error("restriction from cell {0} to cell {1} is not defined")]
    Inconsistent(usize, usize),
    #[error("sheaf map is not a morphism: {0}")]
    NotEquivariant(String),
    #[error("sequence is not exact at cell {0}")]
    NotExact(usize),
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("no stalk product for {0} and {1}")]
    UndefinedProduct(&'static str, &'static str),
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("cell {0} is not a simplex")]
    NotSimplicial(usize),
    #[error("cover condition fails: simplex {0} of dimension at least two lies in Δ")]
    LerayCondition(usize),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}
