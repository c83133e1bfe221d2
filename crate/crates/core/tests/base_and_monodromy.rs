mod common;

use common::quintic;
use real_lagrangian::affine_base::{validate_base, BaseComplex, BaseError, VertexSign};
use real_lagrangian::lattice::{det3, dot3, IntMatrix3};
use real_lagrangian::monodromy::{
    component_orbits, euler_characteristic, local_negative_edge_analysis, negative_edge_rep, torsion_action, vertex_generators, vertex_rep, Perm8,
    Side, TORSION_POINTS,
};

const GOLDEN: [(&str, &str); 12] = [
    ("12,1", "(23)(47)"),
    ("12,2", "(47)(56)"),
    ("13,1", "(27)(34)"),
    ("13,3", "(16)(27)"),
    ("14,1", "(24)(37)"),
    ("14,4", "(15)(37)"),
    ("23,2", "(45)(67)"),
    ("23,3", "(12)(67)"),
    ("24,2", "(46)(57)"),
    ("24,4", "(13)(57)"),
    ("34,3", "(17)(26)"),
    ("34,4", "(17)(35)"),
];

/// Permutation of the labelled points by brute force: for `F` the image of
/// `u` is the `w` with `tᵗ w = u`; for `FDual` it is `t u`.
fn oracle_action(t: &IntMatrix3, side: Side) -> [u8; 8] {
    let apply = |m: &IntMatrix3, u: &[u8; 3]| -> [u8; 3] { std::array::from_fn(|r| ((0..3).map(|c| m[r][c] * i64::from(u[c])).sum::<i64>().rem_euclid(2)) as u8) };
    let tt: IntMatrix3 = std::array::from_fn(|r| std::array::from_fn(|c| t[c][r]));
    let mut out = [0u8; 8];
    for (i, u) in TORSION_POINTS.iter().enumerate() {
        let image = match side {
            Side::FDual => apply(t, u),
            Side::F => *TORSION_POINTS.iter().find(|w| apply(&tt, w) == *u).expect("tᵗ is invertible mod 2"),
        };
        out[i] = TORSION_POINTS.iter().position(|p| *p == image).unwrap() as u8;
    }
    out
}

fn negative_pair_edges(base: &BaseComplex) -> Vec<usize> {
    (0..base.edges().len()).filter(|&e| base.discriminant().crossing_is_negative_pair(e)).collect()
}

#[test]
fn polytope_cells() {
    let b = quintic();
    assert_eq!(b.polytope().vertices().len(), 5);
    assert_eq!(b.polytope_edges().len(), 10);
    assert_eq!(b.faces().len(), 10);
    assert_eq!(b.facets().len(), 5);
    assert!(b.polytope().is_quintic());
}

#[test]
fn discriminant_counts_and_euler_characteristic() {
    let g = quintic().discriminant();
    assert_eq!(g.count(VertexSign::Negative), 250);
    assert_eq!(g.count(VertexSign::Positive), 50);
    assert_eq!(euler_characteristic(g).unwrap(), -200);
    for v in &g.vertices {
        let expected = if v.sign == VertexSign::Bivalent { 2 } else { 3 };
        assert_eq!(v.edges.len(), expected);
    }
}

#[test]
fn base_validates() {
    let d = validate_base(quintic());
    assert!(d.all_pass(), "{:?}", d.failures);
    assert_eq!(d.cohomology, vec![1, 0, 0, 1]);
}

#[test]
fn legs_are_transvections() {
    for leg in &quintic().discriminant().edges {
        assert_eq!(dot3(&leg.n_chart, &leg.d_chart), 0);
        let t = leg.transvection();
        assert_eq!(det3(&t), 1);
        for side in [Side::F, Side::FDual] {
            let p = torsion_action(&t, side).unwrap();
            assert_eq!(p.0, oracle_action(&t, side));
            assert!(p.is_involution());
        }
    }
}

#[test]
fn golden_permutation_table() {
    let gens = vertex_generators(quintic(), 0).unwrap();
    let table: Vec<(String, String)> = gens.iter().map(|g| (g.label.clone(), torsion_action(&g.matrix, Side::F).unwrap().to_string())).collect();
    let golden: Vec<(String, String)> = GOLDEN.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    assert_eq!(table, golden);
    for (g, (_, s)) in gens.iter().zip(GOLDEN) {
        assert_eq!(torsion_action(&g.matrix, Side::F).unwrap(), Perm8::parse(s).unwrap());
        assert_eq!(torsion_action(&g.matrix, Side::F).unwrap().0, oracle_action(&g.matrix, Side::F));
    }
}

#[test]
fn two_global_components() {
    for side in [Side::F, Side::FDual] {
        let r = component_orbits(&vertex_rep(quintic(), 0, side).unwrap());
        assert_eq!(r.count(), 2);
        assert_eq!(r.orbits, vec![vec![0], (1..8).collect::<Vec<u8>>()]);
    }
}

#[test]
fn negative_edge_local_model_on_the_mirror_side() {
    let b = quintic();
    let edges = negative_pair_edges(b);
    assert_eq!(edges.len(), 300);
    for e in edges {
        let r = local_negative_edge_analysis(&negative_edge_rep(b, e, Side::FDual).unwrap()).unwrap();
        assert_eq!(r.count(), 5);
        let tori: Vec<_> = r.components.iter().filter(|c| c.boundary_euler == Some(0)).collect();
        assert_eq!(tori.len(), 1);
        assert_eq!(tori[0].ramification_points, 8);
        assert_eq!(r.components.iter().filter(|c| c.boundary_euler == Some(2)).count(), 4);
    }
}

#[test]
fn edges_without_negative_crossing_are_rejected() {
    let b = quintic();
    let e = (0..b.edges().len()).find(|&e| !b.discriminant().crossing_is_negative_pair(e)).unwrap();
    assert!(negative_edge_rep(b, e, Side::FDual).is_err());
}

fn triangle_set(b: &BaseComplex, face: usize) -> std::collections::BTreeSet<[usize; 3]> {
    b.triangulation(face)
        .triangles()
        .iter()
        .map(|t| {
            let mut t = *t;
            t.sort_unstable();
            t
        })
        .collect()
}

#[test]
fn flips() {
    let b = quintic();
    let (face, edge) = b.flippable_edges()[0];
    let flipped = b.flip(face, edge).unwrap();
    assert!(validate_base(&flipped).all_pass());
    assert_eq!(euler_characteristic(flipped.discriminant()).unwrap(), -200);
    assert_ne!(triangle_set(&flipped, face), triangle_set(b, face));
    let t = flipped.triangulation(face);
    let new_edge = t.edges().into_iter().find(|e| !b.triangulation(face).edges().contains(e)).unwrap();
    let back = flipped.flip(face, new_edge).unwrap();
    assert_eq!(triangle_set(&back, face), triangle_set(b, face));

    let boundary = b.triangulation(0).edges().into_iter().find(|&e| b.triangulation(0).is_boundary_edge(e)).unwrap();
    assert!(matches!(b.flip(0, boundary), Err(BaseError::BoundaryEdge(..))));
    assert!(matches!(b.flip(10, edge), Err(BaseError::UnknownFace(10))));
}

#[test]
fn base_file_round_trip() {
    let b = quintic();
    let again = BaseComplex::from_json(&b.to_json()).unwrap();
    assert_eq!(again.cells().len(), b.cells().len());
    assert_eq!(again.to_json(), b.to_json());
    assert!(BaseComplex::from_json("{\"vertices\": []}").is_err());
}
