use std::fmt;

use serde::Serialize;

use super::{MonodromyError, Side};
use crate::lattice::IntMatrix3;

/// Representatives (times two) of the eight 2-torsion points `u_0..u_7`.
pub const TORSION_POINTS: [[u8; 3]; 8] =
    [[0, 0, 0], [0, 0, 1], [1, 0, 1], [1, 0, 0], [1, 1, 0], [0, 1, 0], [0, 1, 1], [1, 1, 1]];

fn label_of(p: [u8; 3]) -> u8 {
    TORSION_POINTS.iter().position(|q| *q == p).expect("all mod-2 vectors are labelled") as u8
}

/// A permutation of the labels `0..8`; `self.0[i]` is the image of `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Perm8(pub [u8; 8]);

impl Perm8 {
    pub const IDENTITY: Perm8 = Perm8([0, 1, 2, 3, 4, 5, 6, 7]);

    /// The action of an integer matrix mod 2 on the labelled points.
    pub fn from_matrix_mod2(m: &IntMatrix3) -> Perm8 {
        let mut img = [0u8; 8];
        for (i, u) in TORSION_POINTS.iter().enumerate() {
            let mut v = [0u8; 3];
            for (r, out) in v.iter_mut().enumerate() {
                let s: i64 = (0..3).map(|c| m[r][c] * u[c] as i64).sum();
                *out = s.rem_euclid(2) as u8;
            }
            img[i] = label_of(v);
        }
        Perm8(img)
    }

    /// Parses cycle notation such as `(23)(47)`; `()` is the identity.
    pub fn parse(s: &str) -> Option<Perm8> {
        let mut img = Self::IDENTITY.0;
        for cycle in s.split(')').map(str::trim).filter(|c| !c.is_empty()) {
            let digits: Vec<u8> = cycle.strip_prefix('(')?.chars().map(|c| c.to_digit(8).map(|d| d as u8)).collect::<Option<_>>()?;
            for (k, &a) in digits.iter().enumerate() {
                img[a as usize] = digits[(k + 1) % digits.len()];
            }
        }
        Some(Perm8(img))
    }

    pub fn apply(&self, i: u8) -> u8 {
        self.0[i as usize]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm8) -> Perm8 {
        Perm8(other.0.map(|i| self.0[i as usize]))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Nontrivial cycles, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let mut seen = [false; 8];
        let mut out = Vec::new();
        for start in 0..8u8 {
            if seen[start as usize] {
                continue;
            }
            let mut c = vec![start];
            seen[start as usize] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x as usize] = true;
                c.push(x);
                x = self.apply(x);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }
}

impl fmt::Display for Perm8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for x in c {
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm8{self}")
    }
}

/// Permutation representation of a set of loops on the 2-torsion labels.
#[derive(Clone, Debug, Serialize)]
pub struct PermRep {
    pub side: Side,
    pub generators: Vec<(String, Perm8)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub orbit: Vec<u8>,
    pub degree: usize,
    /// Loops whose permutation moves some point of the orbit.
    pub branch_points: Vec<String>,
    /// Number of ramification points of index 2 or more over the branch points.
    pub ramification_points: usize,
    /// Euler characteristic of the piece over a 2-sphere whose punctures are
    /// the generators, by Riemann–Hurwitz; only filled by local analyses.
    pub boundary_euler: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub orbits: Vec<Vec<u8>>,
    pub components: Vec<ComponentInfo>,
}

impl ComponentReport {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }
}

/// Orbits of the group generated by the representation.
pub fn component_orbits(rep: &PermRep) -> ComponentReport {
    let mut parent: Vec<u8> = (0..8).collect();
    fn find(p: &mut [u8], x: u8) -> u8 {
        let mut r = x;
        while p[r as usize] != r {
            r = p[r as usize];
        }
        p[x as usize] = r;
        r
    }
    for (_, g) in &rep.generators {
        for i in 0..8u8 {
            let (a, b) = (find(&mut parent, i), find(&mut parent, g.apply(i)));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Vec<u8>> = Vec::new();
    let mut slot = [usize::MAX; 8];
    for i in 0..8u8 {
        let r = find(&mut parent, i) as usize;
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(i);
    }
    let components = orbits
        .iter()
        .map(|o| {
            let mut branch_points = Vec::new();
            let mut ramification_points = 0;
            for (name, g) in &rep.generators {
                let inside: Vec<Vec<u8>> = g.cycles().into_iter().filter(|c| o.contains(&c[0])).collect();
                if !inside.is_empty() {
                    branch_points.push(name.clone());
                    ramification_points += inside.len();
                }
            }
            ComponentInfo { orbit: o.clone(), degree: o.len(), branch_points, ramification_points, boundary_euler: None }
        })
        .collect();
    ComponentReport { orbits, components }
}

/// Components of the real locus over a ball around a Δ-edge joining two
/// negative vertices, given the monodromies around the four points where
/// the boundary sphere meets Δ.
pub fn local_negative_edge_analysis(rep: &PermRep) -> Result<ComponentReport, MonodromyError> {
    let bad = |s: String| Err(MonodromyError::PatternMismatch(s));
    if rep.generators.len() != 4 {
        return bad(format!("{} boundary punctures, expected 4", rep.generators.len()));
    }
    for (name, g) in &rep.generators {
        let c = g.cycles();
        if c.len() != 2 || c.iter().any(|x| x.len() != 2) {
            return bad(format!("monodromy around {name} is {g}, not a double transposition"));
        }
    }
    let product = rep.generators.iter().fold(Perm8::IDENTITY, |acc, (_, g)| acc.compose(g));
    if !product.is_identity() {
        return bad(format!("product of the boundary monodromies is {product}"));
    }
    let mut report = component_orbits(rep);
    let sizes: Vec<usize> = report.orbits.iter().map(Vec::len).collect();
    if sizes.iter().filter(|&&s| s == 4).count() != 1 || sizes.iter().filter(|&&s| s == 1).count() != 4 {
        return bad(format!("orbit sizes {sizes:?}, expected one of size 4 and four fixed points"));
    }
    for c in &mut report.components {
        let ramification: usize = rep
            .generators
            .iter()
            .flat_map(|(_, g)| g.cycles())
            .filter(|cyc| c.orbit.contains(&cyc[0]))
            .map(|cyc| cyc.len() - 1)
            .sum();
        c.boundary_euler = Some(2 * c.degree as i64 - ramification as i64);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(gens: &[&str]) -> PermRep {
        PermRep {
            side: Side::F,
            generators: gens.iter().enumerate().map(|(i, g)| (format!("g{i}"), Perm8::parse(g).unwrap())).collect(),
        }
    }

    #[test]
    fn parse_and_display() {
        let p = Perm8::parse("(23)(47)").unwrap();
        assert_eq!(p.to_string(), "(23)(47)");
        assert!(p.is_involution());
        assert_eq!(Perm8::parse("()").unwrap(), Perm8::IDENTITY);
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(component_orbits(&rep(&[])).count(), 8);
        let r = component_orbits(&rep(&["(56)(47)", "(45)(67)"]));
        assert_eq!(r.orbits, vec![vec![0], vec![1], vec![2], vec![3], vec![4, 5, 6, 7]]);
    }

    #[test]
    fn negative_edge_model() {
        let r = local_negative_edge_analysis(&rep(&["(56)(47)", "(45)(67)", "(56)(47)", "(45)(67)"])).unwrap();
        let torus: Vec<_> = r.components.iter().filter(|c| c.boundary_euler == Some(0)).collect();
        assert_eq!(torus.len(), 1);
        assert_eq!(torus[0].ramification_points, 8);
        assert_eq!(r.components.iter().filter(|c| c.boundary_euler == Some(2)).count(), 4);
        assert!(local_negative_edge_analysis(&rep(&["(56)(47)", "(45)(67)"])).is_err());
        assert!(local_negative_edge_analysis(&rep(&["(56)(47)", "(45)(67)", "(56)(47)", "(46)(57)"])).is_err());
    }
}
