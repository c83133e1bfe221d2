use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::base::BaseComplex;
use super::cells::CellComplex;
use super::discriminant::VertexSign;
use crate::lattice::{dot3, dot4};

/// Outcome of the structural checks on a base.
#[derive(Clone, Debug, Serialize)]
pub struct BaseDiagnostics {
    pub cohomology: Vec<usize>,
    pub sphere: bool,
    pub regular: bool,
    pub delta_subcomplex: bool,
    pub transvections: bool,
    pub trivalent: bool,
    pub maximal: bool,
    pub unverified_simplicity: bool,
    pub failures: Vec<String>,
}

impl BaseDiagnostics {
    pub fn all_pass(&self) -> bool {
        self.sphere && self.regular && self.delta_subcomplex && self.transvections && self.trivalent && self.maximal
    }
}

pub fn validate_base(base: &BaseComplex) -> BaseDiagnostics {
    let cells = base.cells();
    let mut failures = Vec::new();

    let cohomology = cells.constant_cochains().map(|c| c.cohomology_dims()).unwrap_or_default();
    let sphere = cohomology == [1, 0, 0, 1];
    if !sphere {
        failures.push(format!("cohomology {cohomology:?} is not that of S^3"));
    }

    let regular = check_regular(cells, &mut failures);

    let mut delta_subcomplex = true;
    for c in 0..cells.len() {
        if cells.in_discriminant(c) && cells.faces(c).iter().any(|&f| !cells.in_discriminant(f as usize)) {
            delta_subcomplex = false;
            failures.push(format!("Δ cell {c} has a face outside Δ"));
        }
    }

    let g = base.discriminant();
    let mut transvections = true;
    for (i, l) in g.edges.iter().enumerate() {
        let ok = dot4(&l.n, &l.d) == 0
            && dot3(&l.n_chart, &l.d_chart) == 0
            && l.n_chart == base.atlas().covector_coords(l.chart_point, &l.n)
            && l.d_chart == base.atlas().point_coords(l.chart_point, &l.d)
            && cells.in_discriminant(l.cell);
        if !ok {
            transvections = false;
            failures.push(format!("Δ edge {i}: transvection data inconsistent or ⟨n,d⟩ ≠ 0"));
        }
    }

    let mut trivalent = true;
    for (i, v) in g.vertices.iter().enumerate() {
        let deg = v.edges.len();
        let ok = match v.sign {
            VertexSign::Bivalent => deg == 2,
            _ => deg == 3,
        };
        if !ok {
            trivalent = false;
            failures.push(format!("Δ vertex {i} has degree {deg} but sign {:?}", v.sign));
        }
    }

    let mut maximal = true;
    for t in base.triangulations() {
        if let Err(e) = t.validate() {
            maximal = false;
            failures.push(e.to_string());
        }
    }

    BaseDiagnostics {
        cohomology,
        sphere,
        regular,
        delta_subcomplex,
        transvections,
        trivalent,
        maximal,
        unverified_simplicity: !base.polytope().is_quintic(),
        failures,
    }
}

/// Combinatorial check that the boundary of every cell is a sphere of the
/// right dimension.
fn check_regular(cells: &CellComplex, failures: &mut Vec<String>) -> bool {
    let mut ok = true;
    for c in 0..cells.len() {
        let fs = cells.faces(c);
        let good = match cells.dim(c) {
            0 => fs.is_empty(),
            1 => fs.len() == 2 && fs[0] != fs[1],
            2 => is_circle(cells, fs),
            3 => is_closed_surface_sphere(cells, fs),
            _ => false,
        };
        if !good {
            ok = false;
            failures.push(format!("cell {c} (dim {}) has a non-spherical boundary", cells.dim(c)));
        }
    }
    ok
}

fn is_circle(cells: &CellComplex, edges: &[u32]) -> bool {
    let mut degree: HashMap<u32, usize> = HashMap::new();
    let mut adj: HashMap<u32, Vec<u32>> = HashMap::new();
    for &e in edges {
        let v = cells.faces(e as usize);
        if v.len() != 2 {
            return false;
        }
        for &x in v {
            *degree.entry(x).or_default() += 1;
        }
        adj.entry(v[0]).or_default().push(v[1]);
        adj.entry(v[1]).or_default().push(v[0]);
    }
    if edges.len() < 2 || degree.values().any(|&d| d != 2) {
        return false;
    }
    connected(&adj)
}

fn is_closed_surface_sphere(cells: &CellComplex, faces: &[u32]) -> bool {
    let mut edge_use: HashMap<u32, usize> = HashMap::new();
    let mut verts: HashSet<u32> = HashSet::new();
    let mut adj: HashMap<u32, Vec<u32>> = HashMap::new();
    for &f in faces {
        for &e in cells.faces(f as usize) {
            *edge_use.entry(e).or_default() += 1;
            for &v in cells.faces(e as usize) {
                verts.insert(v);
            }
        }
    }
    if edge_use.values().any(|&n| n != 2) {
        return false;
    }
    // faces adjacent through shared edges
    let mut by_edge: HashMap<u32, Vec<u32>> = HashMap::new();
    for &f in faces {
        for &e in cells.faces(f as usize) {
            by_edge.entry(e).or_default().push(f);
        }
    }
    for pair in by_edge.values() {
        adj.entry(pair[0]).or_default().push(pair[1]);
        adj.entry(pair[1]).or_default().push(pair[0]);
    }
    let chi = verts.len() as i64 - edge_use.len() as i64 + faces.len() as i64;
    chi == 2 && connected(&adj)
}

fn connected(adj: &HashMap<u32, Vec<u32>>) -> bool {
    let Some(&start) = adj.keys().next() else { return true };
    let mut seen: HashSet<u32> = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in &adj[&x] {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len() == adj.len()
}
