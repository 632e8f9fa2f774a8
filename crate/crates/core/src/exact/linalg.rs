//! Dense exact linear algebra over `Q`. Matrices are row-major `Vec<Vec<Q>>`.

use num_traits::{One, Zero};

use super::rational::Q;

pub type Mat = Vec<Vec<Q>>;

pub fn zeros(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| unit(n, i)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// `a + s * b`.
pub fn axpy(a: &[Q], s: &Q, b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn transpose(m: &Mat, ncols: usize) -> Mat {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat, bcols: usize) -> Mat {
    a.iter()
        .map(|row| {
            (0..bcols)
                .map(|j| row.iter().zip(b).fold(Q::zero(), |acc, (x, brow)| acc + x * &brow[j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &Mat, v: &[Q]) -> Vec<Q> {
    m.iter().map(|r| dot(r, v)).collect()
}

/// `vᵀ M`.
pub fn vec_mat(v: &[Q], m: &Mat, ncols: usize) -> Vec<Q> {
    let mut out = zeros(ncols);
    for (vi, row) in v.iter().zip(m) {
        if vi.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o += vi * x;
        }
    }
    out
}

/// Reduced row echelon form. Returns the reduced matrix (zero rows last)
/// and the pivot columns.
pub fn rref(m: &Mat, ncols: usize) -> (Mat, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Mat, ncols: usize) -> usize {
    rref(m, ncols).1.len()
}

/// Canonical basis (nonzero rows of the RREF) of the row space.
pub fn row_space(m: &Mat, ncols: usize) -> Mat {
    let (r, p) = rref(m, ncols);
    r.into_iter().take(p.len()).collect()
}

/// Basis of `{x : M x = 0}`.
pub fn nullspace(m: &Mat, ncols: usize) -> Mat {
    let (r, pivots) = rref(m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zeros(ncols);
            v[f] = Q::one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Canonical basis of the orthogonal complement (standard dot) of the row
/// space, in RREF.
pub fn complement(m: &Mat, ncols: usize) -> Mat {
    row_space(&nullspace(m, ncols), ncols)
}

/// Some solution of `A x = b`, or `None` when inconsistent.
pub fn solve(a: &Mat, b: &[Q], ncols: usize) -> Option<Vec<Q>> {
    let aug: Mat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = zeros(ncols);
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Coordinates of `v` in the basis given by the rows of `basis`, if `v`
/// lies in their span. Rows must be independent.
pub fn coordinates(basis: &Mat, v: &[Q]) -> Option<Vec<Q>> {
    let n = v.len();
    let bt = transpose(basis, n);
    solve(&bt, v, basis.len())
}

pub fn in_span(basis: &Mat, v: &[Q]) -> bool {
    basis.is_empty() && is_zero(v) || !basis.is_empty() && coordinates(basis, v).is_some()
}

pub fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.len();
    let aug: Mat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit(n, i));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn det(m: &Mat) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    d
}

/// Embeds `v` (length `len`) at `offset` inside a zero vector of length `n`.
pub fn pad(v: &[Q], offset: usize, n: usize) -> Vec<Q> {
    let mut out = zeros(n);
    out[offset..offset + v.len()].clone_from_slice(v);
    out
}
