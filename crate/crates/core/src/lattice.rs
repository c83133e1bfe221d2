//! Small fixed-size integer linear algebra used by the chart atlas and the
//! monodromy computations.

use serde::{Deserialize, Serialize};

use crate::gf2::GF2Matrix;

pub type Vec4 = [i64; 4];
pub type Vec3 = [i64; 3];

pub fn dot4(a: &Vec4, b: &Vec4) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub4(a: &Vec4, b: &Vec4) -> Vec4 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

pub fn add4(a: &Vec4, b: &Vec4) -> Vec4 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub fn scale4(a: &Vec4, s: i64) -> Vec4 {
    [a[0] * s, a[1] * s, a[2] * s, a[3] * s]
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn content4(a: &Vec4) -> i64 {
    a.iter().fold(0, |g, &x| gcd(g, x))
}

pub fn dot3(a: &Vec3, b: &Vec3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Determinant of the 4x4 matrix with the given rows.
pub fn det4(m: &[Vec4; 4]) -> i64 {
    let mut total = 0;
    for c in 0..4 {
        let minor = minor3(m, 0, c);
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][c] * det3(&minor);
    }
    total
}

fn minor3(m: &[Vec4; 4], skip_r: usize, skip_c: usize) -> IntMatrix3 {
    let mut out = [[0; 3]; 3];
    let mut ri = 0;
    for (r, row) in m.iter().enumerate() {
        if r == skip_r {
            continue;
        }
        let mut ci = 0;
        for (c, &x) in row.iter().enumerate() {
            if c == skip_c {
                continue;
            }
            out[ri][ci] = x;
            ci += 1;
        }
        ri += 1;
    }
    out
}

/// Inverse of a unimodular 4x4 integer matrix (rows given), or `None` if
/// the determinant is not ±1.
pub fn inverse4_unimodular(m: &[Vec4; 4]) -> Option<[Vec4; 4]> {
    let det = det4(m);
    if det.abs() != 1 {
        return None;
    }
    let mut inv = [[0; 4]; 4];
    for (r, inv_row) in inv.iter_mut().enumerate() {
        for (c, entry) in inv_row.iter_mut().enumerate() {
            // adj[r][c] = cofactor[c][r]
            let sign = if (r + c) % 2 == 0 { 1 } else { -1 };
            *entry = sign * det3(&minor3(m, c, r)) * det;
        }
    }
    Some(inv)
}

/// Coordinates of `v` in the basis given by the rows of `basis`, using a
/// precomputed inverse (`inv` is the inverse of the row matrix).
pub fn coords4(inv: &[Vec4; 4], v: &Vec4) -> Vec4 {
    // v = sum_i x_i basis_i  <=>  x = v * B^{-1}  (row vector convention)
    let mut x = [0; 4];
    for (i, xi) in x.iter_mut().enumerate() {
        *xi = (0..4).map(|k| v[k] * inv[k][i]).sum();
    }
    x
}

/// 3x3 integer matrix, row-major, acting on column vectors.
pub type IntMatrix3 = [[i64; 3]; 3];

pub const IDENTITY3: IntMatrix3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

pub fn det3(m: &IntMatrix3) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn mul3(a: &IntMatrix3, b: &IntMatrix3) -> IntMatrix3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn apply3(m: &IntMatrix3, v: &Vec3) -> Vec3 {
    [dot3(&m[0], v), dot3(&m[1], v), dot3(&m[2], v)]
}

pub fn transpose3(m: &IntMatrix3) -> IntMatrix3 {
    let mut t = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = m[j][i];
        }
    }
    t
}

/// Cofactor matrix: `cof(m)[i][j] = (-1)^{i+j} det(minor_{ij})`.
pub fn cofactor3(m: &IntMatrix3) -> IntMatrix3 {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
            let s: Vec<usize> = (0..3).filter(|&x| x != j).collect();
            let d = m[r[0]][s[0]] * m[r[1]][s[1]] - m[r[0]][s[1]] * m[r[1]][s[0]];
            c[i][j] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    c
}

/// Inverse of a unimodular 3x3 matrix.
pub fn inverse3_unimodular(m: &IntMatrix3) -> Option<IntMatrix3> {
    let det = det3(m);
    if det.abs() != 1 {
        return None;
    }
    let adj = transpose3(&cofactor3(m));
    let mut inv = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            inv[i][j] = adj[i][j] * det;
        }
    }
    Some(inv)
}

/// Reduction mod 2 of an integer matrix.
pub fn mod2_3(m: &IntMatrix3) -> GF2Matrix {
    let mut out = GF2Matrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            out.set(i, j, m[i][j].rem_euclid(2) == 1);
        }
    }
    out
}

/// Matrix of the exterior square in the basis `(e2∧e3, e3∧e1, e1∧e2)`.
///
/// In this basis the exterior square of `m` coincides with `cofactor3(m)`.
pub fn exterior_square3(m: &IntMatrix3) -> IntMatrix3 {
    // image of e_a ∧ e_b is m e_a ∧ m e_b; coordinates via the cross product
    let pairs = [(1usize, 2usize), (2, 0), (0, 1)];
    let col = |j: usize| [m[0][j], m[1][j], m[2][j]];
    let mut out = [[0; 3]; 3];
    for (c, &(a, b)) in pairs.iter().enumerate() {
        let w = cross3(&col(a), &col(b));
        for r in 0..3 {
            out[r][c] = w[r];
        }
    }
    out
}

pub fn cross3(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// A serializable wrapper used in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix3(pub IntMatrix3);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse4() {
        let m = [[1, 0, 0, 0], [2, 1, 0, 0], [0, 3, 1, 0], [5, 0, 0, 1]];
        assert_eq!(det4(&m), 1);
        let inv = inverse4_unimodular(&m).unwrap();
        for (i, row) in m.iter().enumerate() {
            let x = coords4(&inv, row);
            let mut e = [0; 4];
            e[i] = 1;
            assert_eq!(x, e);
        }
    }

    #[test]
    fn exterior_square_is_cofactor() {
        let m = [[1, 2, 0], [0, 1, 3], [1, 1, 1]];
        assert_eq!(exterior_square3(&m), cofactor3(&m));
    }

    #[test]
    fn inverse3() {
        let m = [[1, 0, 1], [0, 1, 0], [0, 0, 1]];
        let inv = inverse3_unimodular(&m).unwrap();
        assert_eq!(mul3(&m, &inv), IDENTITY3);
        assert!(inverse3_unimodular(&[[2, 0, 0], [0, 1, 0], [0, 0, 1]]).is_none());
    }
}
