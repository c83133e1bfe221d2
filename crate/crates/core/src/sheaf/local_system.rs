use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::SheafError;
use crate::affine_base::{BaseComplex, CellComplex, Chart};
use crate::gf2::{BitVec, GF2Matrix};
use crate::lattice::{exterior_square3, mod2_3, IntMatrix3};
use crate::monodromy::{dual_rep, leg_loop, Perm8, Side, TORSION_POINTS};

/// The sheaves on `B` that the pipeline works with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SheafLabel {
    R1F,
    R2F,
    R1FDual,
    R2FDual,
    /// Pushforward of the constant sheaf along the real locus of the given side.
    Cover(Side),
    /// The complement of the constants inside the cover sheaf.
    Quotient(Side),
    Constant,
}

impl SheafLabel {
    pub fn r1(side: Side) -> Self {
        match side {
            Side::F => SheafLabel::R1F,
            Side::FDual => SheafLabel::R1FDual,
        }
    }

    pub fn r2(side: Side) -> Self {
        match side {
            Side::F => SheafLabel::R2F,
            Side::FDual => SheafLabel::R2FDual,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SheafLabel::R1F => "R1f",
            SheafLabel::R2F => "R2f",
            SheafLabel::R1FDual => "R1fdual",
            SheafLabel::R2FDual => "R2fdual",
            SheafLabel::Cover(Side::F) => "cover",
            SheafLabel::Cover(Side::FDual) => "coverdual",
            SheafLabel::Quotient(Side::F) => "quotient",
            SheafLabel::Quotient(Side::FDual) => "quotientdual",
            SheafLabel::Constant => "const",
        }
    }

    pub fn rank(self) -> usize {
        match self {
            SheafLabel::Cover(_) => 8,
            SheafLabel::Quotient(_) => 6,
            SheafLabel::Constant => 1,
            _ => 3,
        }
    }

    fn fibre(self) -> FibreRep {
        match self {
            SheafLabel::R1F => FibreRep::Vector(Lattice::Tangent),
            SheafLabel::R1FDual => FibreRep::Vector(Lattice::Cotangent),
            SheafLabel::R2F => FibreRep::Wedge2(Lattice::Tangent),
            SheafLabel::R2FDual => FibreRep::Wedge2(Lattice::Cotangent),
            SheafLabel::Cover(side) => FibreRep::Cover(torsion_lattice(side)),
            SheafLabel::Quotient(side) => FibreRep::Quotient(torsion_lattice(side)),
            SheafLabel::Constant => FibreRep::Trivial,
        }
    }
}

impl std::str::FromStr for SheafLabel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let all = [
            SheafLabel::R1F,
            SheafLabel::R2F,
            SheafLabel::R1FDual,
            SheafLabel::R2FDual,
            SheafLabel::Cover(Side::F),
            SheafLabel::Cover(Side::FDual),
            SheafLabel::Quotient(Side::F),
            SheafLabel::Quotient(Side::FDual),
            SheafLabel::Constant,
        ];
        all.into_iter().find(|l| l.name().eq_ignore_ascii_case(s)).ok_or_else(|| format!("unknown sheaf {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Lattice {
    Tangent,
    Cotangent,
}

/// The fibre 2-torsion of side `f` sits in the cotangent lattice mod 2,
/// that of `f̌` in the tangent lattice mod 2.
pub(crate) fn torsion_lattice(side: Side) -> Lattice {
    match side {
        Side::F => Lattice::Cotangent,
        Side::FDual => Lattice::Tangent,
    }
}

#[derive(Clone, Copy, Debug)]
enum FibreRep {
    Vector(Lattice),
    Wedge2(Lattice),
    Cover(Lattice),
    Quotient(Lattice),
    Trivial,
}

fn lattice_matrix(l: Lattice, a: &IntMatrix3) -> IntMatrix3 {
    match l {
        Lattice::Tangent => *a,
        Lattice::Cotangent => dual_rep(a).expect("chart transports are unimodular"),
    }
}

/// 8x8 permutation matrix of a mod-2 linear map on the labelled points.
pub fn cover_matrix(perm: &Perm8) -> GF2Matrix {
    let mut m = GF2Matrix::zeros(8, 8);
    for i in 0..8u8 {
        m.set(perm.apply(i) as usize, i as usize, true);
    }
    m
}

/// Inclusion of the 6-dimensional complement (`g(u_0) = 0`, `Σ g = 0`) into
/// functions on the eight points, in the basis `δ_{u_i} + δ_{u_7}`, `i = 1..6`.
pub fn quotient_inclusion() -> GF2Matrix {
    let mut j = GF2Matrix::zeros(8, 6);
    for i in 1..=6 {
        j.set(i, i - 1, true);
        j.set(7, i - 1, true);
    }
    j
}

fn quotient_matrix(perm: &Perm8) -> GF2Matrix {
    let j = quotient_inclusion();
    let p = cover_matrix(perm);
    let image = p.mul(&j).expect("shapes agree");
    let mut out = GF2Matrix::zeros(6, 6);
    for c in 0..6 {
        let col = image.column(c);
        // coordinates: entries 1..6 of the function
        for r in 0..6 {
            out.set(r, c, col.get(r + 1));
        }
    }
    out
}

fn fibre_matrix(rep: FibreRep, a: &IntMatrix3) -> GF2Matrix {
    match rep {
        FibreRep::Vector(l) => mod2_3(&lattice_matrix(l, a)),
        FibreRep::Wedge2(l) => mod2_3(&exterior_square3(&lattice_matrix(l, a))),
        FibreRep::Cover(l) => cover_matrix(&Perm8::from_matrix_mod2(&lattice_matrix(l, a))),
        FibreRep::Quotient(l) => quotient_matrix(&Perm8::from_matrix_mod2(&lattice_matrix(l, a))),
        FibreRep::Trivial => GF2Matrix::identity(1),
    }
}

/// A GF(2) local system on the complement of Δ, given by its transports
/// between adjacent charts.
#[derive(Clone, Debug)]
pub struct LocalSystem {
    label: SheafLabel,
    rank: usize,
    transports: HashMap<(u32, u32), GF2Matrix>,
}

impl LocalSystem {
    /// `transports[(a, b)]` maps the fibre in chart `a` to the fibre in chart
    /// `b`; both directions of every adjacent pair must be present.
    pub fn from_transports(label: SheafLabel, rank: usize, transports: HashMap<(u32, u32), GF2Matrix>) -> Self {
        Self { label, rank, transports }
    }

    pub fn label(&self) -> SheafLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn transport(&self, from: u32, to: u32) -> Option<GF2Matrix> {
        if from == to {
            return Some(GF2Matrix::identity(self.rank));
        }
        self.transports.get(&(from, to)).cloned()
    }

    /// Monodromy along a closed path of incident non-Δ cells.
    pub fn loop_monodromy(&self, cells: &CellComplex, path: &[usize]) -> Result<GF2Matrix, SheafError> {
        let mut m = GF2Matrix::identity(self.rank);
        for w in path.windows(2) {
            let ca = cells.chart(w[0]).ok_or(SheafError::TouchesDelta(w[0]))?;
            let cb = cells.chart(w[1]).ok_or(SheafError::TouchesDelta(w[1]))?;
            let t = self.transport(ca, cb).ok_or(SheafError::MissingTransport(ca, cb))?;
            m = t.mul(&m).expect("square");
        }
        Ok(m)
    }

    /// Monodromy around each Δ-edge, in the chart of the lower endpoint of
    /// its triangulation edge.
    pub fn leg_monodromies(&self, base: &BaseComplex) -> Result<Vec<GF2Matrix>, SheafError> {
        base.discriminant()
            .edges
            .iter()
            .map(|leg| self.loop_monodromy(base.cells(), &leg_loop(base, leg, leg.facets[0])))
            .collect()
    }
}

/// The local system with the given label on the smooth part of the base.
pub fn build_local_system(base: &BaseComplex, label: SheafLabel) -> Result<LocalSystem, SheafError> {
    if base.discriminant().edges.is_empty() {
        return Err(SheafError::MissingTransvections);
    }
    let atlas = base.atlas();
    let rep = label.fibre();
    let mut transports = HashMap::new();
    for p in 0..base.points().len() {
        for f in 0..5 {
            let Some(a) = atlas.transport(p, f) else { continue };
            let m = fibre_matrix(rep, &a);
            let inv = m.inverse().expect("transports are invertible");
            let (cp, cf) = (atlas.chart_id(Chart::Point(p)), atlas.chart_id(Chart::Facet(f)));
            transports.insert((cp, cf), m);
            transports.insert((cf, cp), inv);
        }
    }
    Ok(LocalSystem { label, rank: label.rank(), transports })
}

/// Transport matrix for `label` given the mod-2 action on the fibre
/// 2-torsion group of the label's side (which is also the `R²` fibre).
pub fn fibre_from_torsion_action(label: SheafLabel, action: &GF2Matrix) -> Option<GF2Matrix> {
    let mut int = [[0i64; 3]; 3];
    for (r, row) in int.iter_mut().enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            *x = i64::from(action.get(r, c));
        }
    }
    let perm = Perm8::from_matrix_mod2(&int);
    Some(match label {
        SheafLabel::R2F | SheafLabel::R2FDual => action.clone(),
        SheafLabel::R1F | SheafLabel::R1FDual => action.inverse()?.transpose(),
        SheafLabel::Cover(_) => cover_matrix(&perm),
        SheafLabel::Quotient(_) => quotient_matrix(&perm),
        SheafLabel::Constant => GF2Matrix::identity(1),
    })
}

/// Coordinates of the labelled point `u_i` as a fibre vector.
pub fn torsion_point(i: usize) -> BitVec {
    BitVec::from_bools(TORSION_POINTS[i].iter().map(|&x| x == 1))
}
