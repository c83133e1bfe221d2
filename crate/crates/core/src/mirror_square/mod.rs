//! Squaring divisor classes on the mirror: the mod-2 matrix of `D ↦ D²`
//! built from a triple intersection form, and the Betti numbers of the
//! real Lagrangian it determines.

mod derived;
mod form;

pub use derived::{mirror_form_from_base, DerivedForm};
pub use form::{load_intersection_form, FormFile, IntersectionForm};

use serde::Serialize;

use crate::gf2::GF2Matrix;
use crate::sheaf::SheafError;

#[derive(Debug, thiserror::Error)]
pub enum MirrorError {
    #[error("intersection numbers are not symmetric at ({0}, {1}, {2})")]
    Asymmetric(usize, usize, usize),
    #[error("index {index} out of range for a form of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("declared D̄³ = {declared} but the form gives {computed}")]
    CubeMismatch { declared: i64, computed: i64 },
    #[error("missing hypothesis: {0}")]
    HypothesisMissing(&'static str),
    #[error("cup pairing on the base is degenerate")]
    DegeneratePairing,
    #[error("form file: {0}")]
    File(String),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
}

/// `M[k][i] = t(i, i, k) mod 2`: column `i` is `D_i²` paired against the basis.
pub fn square_matrix(form: &IntersectionForm) -> GF2Matrix {
    let r = form.dim();
    let mut m = GF2Matrix::zeros(r, r);
    for i in 0..r {
        for k in 0..r {
            m.set(k, i, form.get(i, i, k).rem_euclid(2) == 1);
        }
    }
    m
}

/// 1 if `D̄³` is even, 0 if odd.
pub fn delta_criterion(cube: i64) -> u8 {
    u8::from(cube.rem_euclid(2) == 0)
}

/// Assumptions the Betti formulas rest on; the caller declares them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    /// `H¹(X̌, Z₂) = 0`.
    pub simply_connected_mirror: bool,
    /// `H²(X̌, Z)` has rank one and `H³(X̌, Z)` has no 2-torsion.
    pub rank_one_torsion_free: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    SquareRoute,
    DirectSheafRoute,
    LesRoute,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    pub route: Route,
    pub h: [usize; 4],
    pub h1_base: usize,
    pub square_kernel: Option<usize>,
    pub delta: Option<u8>,
    pub hypotheses: Hypotheses,
}

impl BettiReport {
    /// Poincaré duality and `h⁰ = h³`.
    pub fn is_consistent(&self) -> bool {
        self.h[0] == self.h[3] && self.h[1] == self.h[2]
    }
}

/// `h¹ = h¹(B, R¹f⋆Z₂) + dim ker Square`; in the rank-one case the kernel
/// dimension is the δ criterion of the distinguished class.
pub fn betti_via_square(h1_base: usize, form: &IntersectionForm, hypotheses: Hypotheses, components: usize) -> Result<BettiReport, MirrorError> {
    if !hypotheses.simply_connected_mirror {
        return Err(MirrorError::HypothesisMissing("H¹(X̌, Z₂) = 0"));
    }
    let (square_kernel, delta, extra) = if hypotheses.rank_one_torsion_free {
        if form.dim() != 1 {
            return Err(MirrorError::DimensionMismatch(format!("rank-one formula applied to a form of dimension {}", form.dim())));
        }
        let cube = form.distinguished_cube().unwrap_or_else(|| form.get(0, 0, 0));
        let delta = delta_criterion(cube);
        (None, Some(delta), delta as usize)
    } else {
        let m = square_matrix(form);
        let kernel = form.dim() - m.rank();
        (Some(kernel), None, kernel)
    };
    let h1 = h1_base + extra;
    Ok(BettiReport { route: Route::SquareRoute, h: [components, h1, h1, components], h1_base, square_kernel, delta, hypotheses })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BOTH: Hypotheses = Hypotheses { simply_connected_mirror: true, rank_one_torsion_free: false };

    #[test]
    fn rank_one_presets() {
        let odd = IntersectionForm::rank_one(5);
        assert_eq!(square_matrix(&odd).rank(), 1);
        let even = IntersectionForm::rank_one(4);
        assert_eq!(square_matrix(&even).rank(), 0);
        assert_eq!((delta_criterion(5), delta_criterion(4), delta_criterion(0)), (0, 1, 1));
        let rank_one = Hypotheses { rank_one_torsion_free: true, ..BOTH };
        let r = betti_via_square(101, &odd, rank_one, 2).unwrap();
        assert_eq!((r.h, r.delta), ([2, 101, 101, 2], Some(0)));
        assert_eq!(betti_via_square(101, &even, rank_one, 2).unwrap().h[1], 102);
        assert_eq!(betti_via_square(101, &odd, BOTH, 2).unwrap().h[1], 101);
    }

    #[test]
    fn zero_form_kernel_is_everything() {
        let zero = IntersectionForm::zero(7);
        assert_eq!(betti_via_square(0, &zero, BOTH, 1).unwrap().h[1], 7);
    }

    #[test]
    fn hypotheses_are_required() {
        let f = IntersectionForm::rank_one(5);
        assert!(matches!(betti_via_square(1, &f, Hypotheses::default(), 2), Err(MirrorError::HypothesisMissing(_))));
    }
}
