//! Small exact linear algebra over Q: row reduction, solving, kernels,
//! determinants and primitive integer vectors.

use num::{BigInt, Integer, One, Signed, Zero};

use crate::rat::{Int, Rat};

pub type QVec = Vec<Rat>;
pub type IVec = Vec<Int>;

pub fn zeros(n: usize) -> QVec {
    vec![Rat::zero(); n]
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_qi(a: &[Rat], b: &[Int]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * Rat::from_integer(y.clone())).sum()
}

pub fn add(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rat], c: &Rat) -> QVec {
    a.iter().map(|x| x * c).collect()
}

pub fn neg(a: &[Rat]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn to_qvec(a: &[Int]) -> QVec {
    a.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn ivec(a: &[i64]) -> IVec {
    a.iter().map(|&x| Int::from(x)).collect()
}

pub fn qvec(a: &[i64]) -> QVec {
    a.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

/// Scale a nonzero rational vector to the primitive integer vector on the same ray.
pub fn primitive(a: &[Rat]) -> IVec {
    let mut l: Int = Int::one();
    for c in a {
        l = l.lcm(c.denom());
    }
    let ints: IVec = a.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
    let mut g = Int::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return ints;
    }
    ints.iter().map(|c| c / &g).collect()
}

/// Primitive representative scaled so that the first nonzero entry is positive.
pub fn primitive_signed(a: &[Rat]) -> IVec {
    let p = primitive(a);
    match p.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => p.iter().map(|x| -x).collect(),
        _ => p,
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(mat: &mut Vec<QVec>) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return vec![];
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for x in mat[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    let t = &mat[r][j] * &f;
                    mat[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    mat.retain(|row| !is_zero_vec(row));
    pivots
}

pub fn rank(mat: &[QVec]) -> usize {
    let mut m = mat.to_vec();
    rref(&mut m);
    m.len()
}

/// Basis of the kernel of the row matrix, acting on vectors of length `n`.
pub fn kernel_basis(mat: &[QVec], n: usize) -> Vec<QVec> {
    let mut m = mat.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = zeros(n);
        v[free] = Rat::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve A x = b. Returns `(particular, kernel_basis)`; None if inconsistent.
pub fn solve(a: &[QVec], b: &[Rat]) -> Option<(QVec, Vec<QVec>)> {
    if a.is_empty() {
        return Some((vec![], vec![]));
    }
    let n = a[0].len();
    let mut aug: Vec<QVec> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = zeros(n);
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[n].clone();
    }
    let interior: Vec<QVec> = aug.iter().map(|r| r[..n].to_vec()).collect();
    Some((x, kernel_basis(&interior, n)))
}

pub fn det(mat: &[QVec]) -> Rat {
    let n = mat.len();
    let mut m = mat.to_vec();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(c, p);
            d = -d;
        }
        d *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let t = &m[c][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
    }
    d
}

/// gcd of all k x k minors of an integer matrix with k = number of rows.
/// Zero when the rows are dependent. Equals 1 iff the rows extend to a lattice basis.
pub fn minor_gcd(rows: &[IVec], n: usize) -> Int {
    let k = rows.len();
    if k == 0 {
        return Int::one();
    }
    if k > n {
        return Int::zero();
    }
    let mut g = Int::zero();
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let sub: Vec<QVec> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| Rat::from_integer(r[c].clone())).collect())
            .collect();
        let m = det(&sub);
        g = g.gcd(&m.to_integer());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return g;
            }
            i -= 1;
            if cols[i] != i + n - k {
                cols[i] += 1;
                for j in i + 1..k {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Extended gcd on integers: returns (g, x, y) with x*a + y*b = g.
pub fn egcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Invert a square rational matrix; None if singular.
pub fn invert(mat: &[QVec]) -> Option<Vec<QVec>> {
    let n = mat.len();
    let mut aug: Vec<QVec> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { Rat::one() } else { Rat::zero() });
            }
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots != (0..n).collect::<Vec<_>>() {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(mat: &[QVec], v: &[Rat]) -> QVec {
    mat.iter().map(|row| dot(row, v)).collect()
}

pub fn lcm_denoms(vals: impl Iterator<Item = Rat>) -> BigInt {
    let mut l = Int::one();
    for v in vals {
        l = l.lcm(v.denom());
    }
    l.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    #[test]
    fn solve_and_kernel() {
        // x + y = 3, x - y = 1 -> (2, 1)
        let a = vec![qvec(&[1, 1]), qvec(&[1, -1])];
        let (x, k) = solve(&a, &[ratio(3, 1), ratio(1, 1)]).unwrap();
        assert_eq!(x, qvec(&[2, 1]));
        assert!(k.is_empty());
        // inconsistent
        let a = vec![qvec(&[1, 1]), qvec(&[2, 2])];
        assert!(solve(&a, &[ratio(1, 1), ratio(3, 1)]).is_none());
        // underdetermined
        let (_, k) = solve(&a, &[ratio(1, 1), ratio(2, 1)]).unwrap();
        assert_eq!(k.len(), 1);
    }

    #[test]
    fn primitive_and_minors() {
        assert_eq!(primitive(&[ratio(1, 2), ratio(-1, 3)]), ivec(&[3, -2]));
        assert_eq!(minor_gcd(&[ivec(&[1, 1]), ivec(&[1, -1])], 2), Int::from(2));
        assert_eq!(minor_gcd(&[ivec(&[1, 0]), ivec(&[0, 1])], 2), Int::from(1));
        assert_eq!(minor_gcd(&[ivec(&[2, 4])], 2), Int::from(2));
    }

    #[test]
    fn determinant() {
        let m = vec![qvec(&[1, 2]), qvec(&[3, 4])];
        assert_eq!(det(&m), ratio(-2, 1));
    }
}

pub fn is_integer_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.denom() == &Int::from(1))
}
