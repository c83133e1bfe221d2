#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use real_lagrangian::affine_base::{build_quintic_base, BaseComplex, CellComplex};
use real_lagrangian::gf2::{BitVec, GF2Matrix};
use real_lagrangian::monodromy::Side;
use real_lagrangian::sheaf::{
    beta_cocycle, build_local_system, complex_from_simplices, cup_product, fibre_from_torsion_action, mu_dualize, CellularSheaf, Cochain, ComplexWithBases,
    CupRule, LocalSystem, SheafLabel, ShortExactSequence,
};

pub fn quintic() -> &'static BaseComplex {
    static BASE: OnceLock<BaseComplex> = OnceLock::new();
    BASE.get_or_init(build_quintic_base)
}

pub fn sheaf_on(base: &BaseComplex, cells: &Arc<CellComplex>, label: SheafLabel) -> CellularSheaf {
    CellularSheaf::build(Arc::clone(cells), &build_local_system(base, label).unwrap()).unwrap()
}

/// Rank by plain Gaussian elimination on rows of bytes.
pub fn naive_rank(rows: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] == 1 {
                for k in 0..cols {
                    m[r][k] ^= m[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn random_rows<R: Rng>(rng: &mut R, rows: usize, cols: usize, density: f64) -> Vec<Vec<u8>> {
    (0..rows).map(|_| (0..cols).map(|_| u8::from(rng.gen_bool(density))).collect()).collect()
}

pub fn random_invertible<R: Rng>(rng: &mut R) -> GF2Matrix {
    loop {
        let m = GF2Matrix::from_rows(&random_rows(rng, 3, 3, 0.5)).unwrap();
        if m.rank() == 3 {
            return m;
        }
    }
}

/// Random `1 + u vᵀ` with `vᵀu = 0`, `u, v ≠ 0`.
pub fn random_transvection<R: Rng>(rng: &mut R) -> GF2Matrix {
    loop {
        let u: Vec<bool> = (0..3).map(|_| rng.gen_bool(0.5)).collect();
        let v: Vec<bool> = (0..3).map(|_| rng.gen_bool(0.5)).collect();
        let dot = (0..3).filter(|&i| u[i] && v[i]).count() % 2;
        if u.iter().any(|&x| x) && v.iter().any(|&x| x) && dot == 0 {
            let mut m = GF2Matrix::identity(3);
            for r in 0..3 {
                for c in 0..3 {
                    m.set(r, c, m.get(r, c) ^ (u[r] && v[c]));
                }
            }
            return m;
        }
    }
}

/// Random upper unitriangular matrix (the Sylow 2-subgroup of `GL₃(F₂)`).
pub fn random_unipotent<R: Rng>(rng: &mut R) -> GF2Matrix {
    let mut m = GF2Matrix::identity(3);
    for (r, c) in [(0, 1), (0, 2), (1, 2)] {
        m.set(r, c, rng.gen_bool(0.5));
    }
    m
}

pub fn random_bits<R: Rng>(rng: &mut R, len: usize) -> BitVec {
    BitVec::from_bools((0..len).map(|_| rng.gen_bool(0.5)))
}

/// A small simplicial complex whose cells off the discriminant are their own
/// charts, with tangent transports on face/coface pairs of charts.
pub struct SyntheticBase {
    pub cells: Arc<CellComplex>,
    /// `(chart of face, chart of coface) -> tangent transport`.
    tangent: HashMap<(u32, u32), GF2Matrix>,
}

fn power(a: &GF2Matrix, k: usize) -> GF2Matrix {
    (0..k).fold(GF2Matrix::identity(3), |t, _| t.mul(a).unwrap())
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![]];
    }
    permutations(d - 1)
        .into_iter()
        .flat_map(|p| (0..d).map(move |i| [&p[..i], &[d - 1], &p[i..]].concat()))
        .collect()
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

impl SyntheticBase {
    /// The torus `R^d / (n_i Z)` with the Freudenthal triangulation and
    /// holonomy `hol[i]` along the `i`-th circle (pairwise commuting).
    pub fn torus(periods: &[usize], hol: &[GF2Matrix]) -> Self {
        let d = periods.len();
        // shapes: all faces of the chains 0 < e_σ1 < e_σ1 + e_σ2 < ...
        let mut shapes: Vec<Vec<Vec<usize>>> = Vec::new();
        for perm in permutations(d) {
            let mut chain = vec![vec![0; d]];
            for &axis in &perm {
                let mut next = chain.last().unwrap().clone();
                next[axis] = 1;
                chain.push(next);
            }
            for mask in 1..(1u32 << chain.len()) {
                let sub: Vec<Vec<usize>> = chain.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
                let min = sub[0].clone();
                shapes.push(sub.into_iter().map(|p| p.iter().zip(&min).map(|(a, b)| a - b).collect()).collect());
            }
        }
        shapes.sort();
        shapes.dedup();
        let id = |p: &[usize]| p.iter().zip(periods).fold(0, |acc, (&x, &n)| acc * n + x % n) as u32;
        let mut anchors = vec![vec![]];
        for &n in periods {
            anchors = anchors.into_iter().flat_map(|a: Vec<usize>| (0..n).map(move |x| [a.clone(), vec![x]].concat())).collect();
        }
        let mut chart_of: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut simplices = Vec::new();
        let mut lifts = Vec::new();
        for anchor in &anchors {
            for shape in &shapes {
                let lift: Vec<Vec<usize>> = shape.iter().map(|p| p.iter().zip(anchor).map(|(a, b)| a + b).collect()).collect();
                let v = sorted(lift.iter().map(|p| id(p)).collect());
                let chart = simplices.len() as u32;
                chart_of.insert(v.clone(), chart);
                simplices.push((v, Some(chart)));
                lifts.push(lift);
            }
        }
        // every lift is a chain, so its first vertex is its minimum
        let mut tangent = HashMap::new();
        for lift in &lifts {
            let coface = chart_of[&sorted(lift.iter().map(|p| id(p)).collect())];
            for mask in 1..(1u32 << lift.len()) - 1 {
                let sub: Vec<&Vec<usize>> = lift.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p).collect();
                let face = chart_of[&sorted(sub.iter().map(|p| id(p)).collect())];
                let t = (0..d).fold(GF2Matrix::identity(3), |t, i| t.mul(&power(&hol[i], sub[0][i] / periods[i])).unwrap());
                tangent.insert((face, coface), t);
            }
        }
        Self { cells: Arc::new(complex_from_simplices(simplices)), tangent }
    }

    /// The icosahedron modulo the antipodal map, with holonomy `a` (`a² = 1`)
    /// around the nontrivial loop.
    pub fn projective_plane(a: &GF2Matrix) -> Self {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let mut pts = Vec::new();
        for (s, t) in [(1.0, phi), (1.0, -phi), (-1.0, phi), (-1.0, -phi)] {
            pts.push([0.0, s, t]);
            pts.push([s, t, 0.0]);
            pts.push([t, 0.0, s]);
        }
        let antipode = |i: usize| pts.iter().position(|p| (0..3).all(|k| (p[k] + pts[i][k]).abs() < 1e-9)).unwrap();
        let adjacent = |i: usize, j: usize| (0..3).map(|k| (pts[i][k] - pts[j][k]).powi(2)).sum::<f64>() < 4.0 + 1e-9;
        let mut class = vec![u32::MAX; 12];
        let mut next = 0;
        for i in 0..12 {
            if class[i] == u32::MAX {
                class[i] = next;
                class[antipode(i)] = next;
                next += 1;
            }
        }
        // lifts of every simplex, closed under faces
        let mut lifts: Vec<Vec<usize>> = (0..12).map(|i| vec![i]).collect();
        for i in 0..12 {
            for j in i + 1..12 {
                if adjacent(i, j) {
                    lifts.push(vec![i, j]);
                    for k in j + 1..12 {
                        if adjacent(i, k) && adjacent(j, k) {
                            lifts.push(vec![i, j, k]);
                        }
                    }
                }
            }
        }
        let key = |l: &[usize]| sorted(l.iter().map(|&v| class[v]).collect());
        let mut chart_of: HashMap<Vec<u32>, (u32, Vec<usize>)> = HashMap::new();
        let mut simplices = Vec::new();
        for l in &lifts {
            chart_of.entry(key(l)).or_insert_with(|| {
                simplices.push((key(l), Some(simplices.len() as u32)));
                (simplices.len() as u32 - 1, sorted(l.iter().map(|&v| v as u32).collect()).into_iter().map(|v| v as usize).collect())
            });
        }
        let mut tangent = HashMap::new();
        for (_, (coface, lift)) in chart_of.iter() {
            for mask in 1..(1u32 << lift.len()) - 1 {
                let sub: Vec<usize> = lift.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
                let (face, canonical) = &chart_of[&key(&sub)];
                let same = sorted(sub.iter().map(|&v| v as u32).collect()) == canonical.iter().map(|&v| v as u32).collect::<Vec<_>>();
                tangent.insert((*face, *coface), if same { GF2Matrix::identity(3) } else { a.clone() });
            }
        }
        Self { cells: Arc::new(complex_from_simplices(simplices)), tangent }
    }

    /// Surface from its triangles with a flat connection `edge[(u, v)]`
    /// (`u < v`) carrying the frame at `u` to the frame at `v`; each chart is
    /// framed at its least vertex.
    pub fn from_connection(triangles: &[[u32; 3]], edge: &HashMap<(u32, u32), GF2Matrix>) -> Self {
        let mut all: Vec<Vec<u32>> = Vec::new();
        for t in triangles {
            let t = sorted(t.to_vec());
            for mask in 1..8u32 {
                all.push(t.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
            }
        }
        all.sort_unstable();
        all.dedup();
        let chart_of: HashMap<&[u32], u32> = all.iter().enumerate().map(|(i, v)| (v.as_slice(), i as u32)).collect();
        let frame = |from: u32, to: u32| match from.cmp(&to) {
            std::cmp::Ordering::Equal => GF2Matrix::identity(3),
            std::cmp::Ordering::Less => edge[&(from, to)].clone(),
            std::cmp::Ordering::Greater => edge[&(to, from)].inverse().unwrap(),
        };
        let mut tangent = HashMap::new();
        for c in &all {
            for mask in 1..(1u32 << c.len()) - 1 {
                let f: Vec<u32> = c.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                tangent.insert((chart_of[f.as_slice()], chart_of[c.as_slice()]), frame(f[0], c[0]));
            }
        }
        let simplices = all.iter().map(|v| (v.clone(), Some(chart_of[v.as_slice()]))).collect();
        Self { cells: Arc::new(complex_from_simplices(simplices)), tangent }
    }

    /// Connected sum of two grid tori with a random flat connection whose
    /// unipotent holonomy is generally non-abelian.
    pub fn random_genus_two<R: Rng>(rng: &mut R) -> Self {
        let grid = |n: u32, m: u32, base: u32| {
            let id = move |x: u32, y: u32| base + x % n * m + y % m;
            let mut t = Vec::new();
            for x in 0..n {
                for y in 0..m {
                    t.push([id(x, y), id(x + 1, y), id(x + 1, y + 1)]);
                    t.push([id(x, y), id(x, y + 1), id(x + 1, y + 1)]);
                }
            }
            t
        };
        let (n1, m1, n2, m2) = (rng.gen_range(3..=4), rng.gen_range(3..=4), rng.gen_range(3..=4), rng.gen_range(3..=4));
        let mut first = grid(n1, m1, 0);
        let mut second = grid(n2, m2, n1 * m1);
        let hole = first.swap_remove(0);
        let other = second.swap_remove(0);
        let glue: HashMap<u32, u32> = other.iter().copied().zip(hole).collect();
        let mut triangles = first;
        triangles.extend(second.iter().map(|t| t.map(|v| glue.get(&v).copied().unwrap_or(v))));
        loop {
            if let Some(edge) = random_flat_connection(rng, &triangles) {
                return Self::from_connection(&triangles, &edge);
            }
        }
    }

    /// `S³` as the join of a `p`-gon and a `q`-gon. A circle given a
    /// monodromy lies in the discriminant and that matrix is the tangent
    /// monodromy around it.
    pub fn join_sphere(p: u32, q: u32, around_p: Option<&GF2Matrix>, around_q: Option<&GF2Matrix>) -> Self {
        // canonical lift of a circle part: vertex i -> [i], edge {i, i+1} -> [i, i+1]
        fn lifts(n: u32) -> Vec<Vec<u32>> {
            let mut out = vec![vec![]];
            out.extend((0..n).map(|i| vec![i]));
            out.extend((0..n).map(|i| vec![i, i + 1]));
            out
        }
        // deck offset of a canonical face part inside a coface part
        fn offset(n: u32, face: &[u32], coface: &[u32]) -> usize {
            match face {
                [v] => coface.iter().find(|&&x| x % n == *v).map_or(0, |&x| (x / n) as usize),
                _ => 0,
            }
        }
        fn contains(n: u32, coface: &[u32], face: &[u32]) -> bool {
            face.iter().all(|v| coface.iter().any(|x| x % n == v % n)) && face.len() <= coface.len() && (face.len() < 2 || face == coface)
        }
        let id = |a: &[u32], b: &[u32]| sorted(a.iter().map(|&x| x % p).chain(b.iter().map(|&x| p + x % q)).collect());
        let mut cells: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        for a in lifts(p) {
            for b in lifts(q) {
                if !(a.is_empty() && b.is_empty()) {
                    cells.push((a.clone(), b));
                }
            }
        }
        let in_delta = |a: &[u32], b: &[u32]| (b.is_empty() && around_p.is_some()) || (a.is_empty() && around_q.is_some());
        let chart: HashMap<Vec<u32>, Option<u32>> = cells.iter().enumerate().map(|(i, (a, b))| (id(a, b), (!in_delta(a, b)).then_some(i as u32))).collect();
        let along_p = around_q.cloned().unwrap_or_else(|| GF2Matrix::identity(3));
        let along_q = around_p.cloned().unwrap_or_else(|| GF2Matrix::identity(3));
        let mut tangent = HashMap::new();
        for (ca, cb) in &cells {
            let Some(c) = chart[&id(ca, cb)] else { continue };
            for (fa, fb) in &cells {
                let f = id(fa, fb);
                if f.len() >= id(ca, cb).len() || !contains(p, ca, fa) || !contains(q, cb, fb) {
                    continue;
                }
                if let Some(fc) = chart[&f] {
                    let t = power(&along_p, offset(p, fa, ca)).mul(&power(&along_q, offset(q, fb, cb))).unwrap();
                    tangent.insert((fc, c), t);
                }
            }
        }
        let simplices = cells.iter().map(|(a, b)| (id(a, b), chart[&id(a, b)])).collect();
        Self { cells: Arc::new(complex_from_simplices(simplices)), tangent }
    }

    /// Join sphere with a random unknot or Hopf link as discriminant and
    /// transvection monodromy.
    pub fn random_join_sphere<R: Rng>(rng: &mut R) -> Self {
        let (p, q) = (rng.gen_range(3..=5), rng.gen_range(3..=5));
        let tp = random_transvection(rng);
        if rng.gen_bool(0.5) {
            return Self::join_sphere(p, q, Some(&tp), None);
        }
        loop {
            let tq = random_transvection(rng);
            if tp.mul(&tq).unwrap() == tq.mul(&tp).unwrap() {
                return Self::join_sphere(p, q, Some(&tp), Some(&tq));
            }
        }
    }

    /// `d`-torus with pairwise commuting unipotent holonomies.
    pub fn random_torus<R: Rng>(rng: &mut R, d: usize) -> Self {
        let periods: Vec<usize> = (0..d).map(|_| rng.gen_range(3..=4)).collect();
        loop {
            let hol: Vec<GF2Matrix> = (0..d).map(|_| random_unipotent(rng)).collect();
            if hol.iter().all(|a| hol.iter().all(|b| a.mul(b).unwrap() == b.mul(a).unwrap())) {
                return Self::torus(&periods, &hol);
            }
        }
    }

    pub fn system(&self, label: SheafLabel) -> LocalSystem {
        let side = match label {
            SheafLabel::R1F | SheafLabel::R2F | SheafLabel::Cover(Side::F) | SheafLabel::Quotient(Side::F) => Side::F,
            _ => Side::FDual,
        };
        let mut transports = HashMap::new();
        for (&(f, c), t) in &self.tangent {
            // the 2-torsion of f sits in the dual lattice
            let action = match side {
                Side::F => t.inverse().unwrap().transpose(),
                Side::FDual => t.clone(),
            };
            let m = fibre_from_torsion_action(label, &action).unwrap();
            transports.insert((c, f), m.inverse().unwrap());
            transports.insert((f, c), m);
        }
        LocalSystem::from_transports(label, label.rank(), transports)
    }

    pub fn sheaf(&self, label: SheafLabel) -> CellularSheaf {
        CellularSheaf::build(Arc::clone(&self.cells), &self.system(label)).unwrap()
    }
}

/// Spanning tree edges get the identity; other edges are forced by
/// triangles where possible and drawn at random otherwise. `None` if some
/// triangle ends up curved.
fn random_flat_connection<R: Rng>(rng: &mut R, triangles: &[[u32; 3]]) -> Option<HashMap<(u32, u32), GF2Matrix>> {
    let tris: Vec<[u32; 3]> = triangles.iter().map(|t| sorted(t.to_vec()).try_into().unwrap()).collect();
    let mut edge: HashMap<(u32, u32), GF2Matrix> = HashMap::new();
    let mut neighbours: HashMap<u32, Vec<u32>> = HashMap::new();
    for t in &tris {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            neighbours.entry(a).or_default().push(b);
            neighbours.entry(b).or_default().push(a);
        }
    }
    let root = tris[0][0];
    let mut seen = std::collections::HashSet::from([root]);
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &w in &neighbours[&v] {
            if seen.insert(w) {
                edge.insert((v.min(w), v.max(w)), GF2Matrix::identity(3));
                stack.push(w);
            }
        }
    }
    loop {
        let mut progress = false;
        for t in &tris {
            let keys = [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])];
            let known: Vec<bool> = keys.iter().map(|k| edge.contains_key(k)).collect();
            // flatness: g(t0, t2) = g(t1, t2) g(t0, t1)
            match known.as_slice() {
                [true, true, false] => {
                    edge.insert(keys[2], edge[&keys[1]].mul(&edge[&keys[0]]).unwrap());
                }
                [true, false, true] => {
                    edge.insert(keys[1], edge[&keys[2]].mul(&edge[&keys[0]].inverse().unwrap()).unwrap());
                }
                [false, true, true] => {
                    edge.insert(keys[0], edge[&keys[1]].inverse().unwrap().mul(&edge[&keys[2]]).unwrap());
                }
                _ => continue,
            }
            progress = true;
        }
        if !progress {
            let free = tris.iter().flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]).find(|k| !edge.contains_key(k));
            match free {
                Some(k) => {
                    edge.insert(k, random_unipotent(rng));
                }
                None => break,
            }
        }
    }
    tris.iter().all(|t| edge[&(t[0], t[2])] == edge[&(t[1], t[2])].mul(&edge[&(t[0], t[1])]).unwrap()).then_some(edge)
}

/// Random involution of `F₂³` (possibly the identity).
pub fn random_involution<R: Rng>(rng: &mut R) -> GF2Matrix {
    loop {
        let a = random_invertible(rng);
        if a.mul(&a).unwrap() == GF2Matrix::identity(3) {
            return a;
        }
    }
}

/// The three sheaves of the sequence for `f` plus the `f̌` sheaves used by
/// the squaring side, on one complex.
pub struct BetaSetup {
    pub ses: ShortExactSequence,
    pub r1d: CellularSheaf,
    pub r2d: CellularSheaf,
    pub r1_bases: ComplexWithBases,
    pub r2_bases: ComplexWithBases,
}

impl BetaSetup {
    pub fn new(sheaf: impl Fn(SheafLabel) -> CellularSheaf) -> Self {
        let ses = ShortExactSequence::from_sheaves(Side::F, sheaf(SheafLabel::R1F), sheaf(SheafLabel::Quotient(Side::F)), sheaf(SheafLabel::R2F)).unwrap();
        let r1_bases = ComplexWithBases::new(&ses.r1).unwrap();
        let r2_bases = ComplexWithBases::new(&ses.r2).unwrap();
        Self { r1d: sheaf(SheafLabel::R1FDual), r2d: sheaf(SheafLabel::R2FDual), ses, r1_bases, r2_bases }
    }

    pub fn cochain(&self, values: BitVec) -> Cochain {
        Cochain { degree: 1, label: SheafLabel::R2F, values }
    }

    /// Class of a 2-cochain of `R¹f` in the fixed basis.
    pub fn class(&self, y: &BitVec) -> BitVec {
        self.r1_bases.bases[2].coordinates(y).expect("cocycle")
    }

    pub fn snake(&self, alpha: &Cochain, noise: &BitVec) -> BitVec {
        let mut x = self.ses.stalkwise_lift(1, &alpha.values).unwrap();
        x.xor_assign(&self.ses.iota.apply(1, noise));
        self.class(&self.ses.connecting_cochain(1, &x).unwrap())
    }

    pub fn annihilator(&self, alpha: &Cochain) -> BitVec {
        self.class(&beta_cocycle(&self.ses.r2, alpha, &self.ses.r1).unwrap().values)
    }

    pub fn square_cochain(&self, alpha: &Cochain, rule: CupRule) -> Cochain {
        let d = mu_dualize(alpha, 1).unwrap();
        mu_dualize(&cup_product(&self.r1d, &d, &self.r1d, &d, &self.r2d, rule).unwrap(), 2).unwrap()
    }

    pub fn square(&self, alpha: &Cochain, rule: CupRule) -> BitVec {
        self.class(&self.square_cochain(alpha, rule).values)
    }

    /// A random cocycle of `R²f` with nonzero class when there is one: a
    /// combination of the basis plus a coboundary.
    pub fn random_cocycle<R: Rng>(&self, rng: &mut R) -> Cochain {
        let basis = &self.r2_bases.bases[1];
        let mut z = BitVec::zeros(basis.ambient_len());
        let mut coeffs = BitVec::zeros(basis.dim());
        while basis.dim() > 0 && coeffs.is_zero() {
            coeffs = random_bits(rng, basis.dim());
        }
        for i in coeffs.ones() {
            z.xor_assign(&basis.representative(i));
        }
        let w = random_bits(rng, self.ses.r2.cochain_dims()[0]);
        z.xor_assign(&self.ses.r2.coboundary(0).mul_vec(&w).unwrap());
        self.cochain(z)
    }
}

/// Compares every route on four random cocycles; returns `(checks, nonzero)`.
pub fn check_square_routes<R: Rng>(base: &SyntheticBase, rng: &mut R) -> Result<(usize, usize), String> {
    let setup = BetaSetup::new(|label| base.sheaf(label));
    if !setup.ses.is_stalkwise_exact() {
        return Err("sequence not exact on stalks".into());
    }
    let mut nonzero = 0;
    for _ in 0..4 {
        let alpha = setup.random_cocycle(rng);
        let noise = random_bits(rng, setup.ses.r1.cochain_dims()[1]);
        let snake = setup.snake(&alpha, &noise);
        let indicator = setup.class(&setup.ses.connecting_cochain(1, &setup.ses.indicator_lift(1, &alpha.values).unwrap()).unwrap());
        let others = [
            ("lift dependence", indicator),
            ("annihilator", setup.annihilator(&alpha)),
            ("front/back square", setup.square(&alpha, CupRule::AlexanderWhitney)),
            ("cyclic square", setup.square(&alpha, CupRule::Cyclic)),
        ];
        if let Some((what, _)) = others.iter().find(|(_, v)| *v != snake) {
            return Err(format!("{what} differs from the connecting map"));
        }
        nonzero += usize::from(!snake.is_zero());
    }
    Ok((4, nonzero))
}
