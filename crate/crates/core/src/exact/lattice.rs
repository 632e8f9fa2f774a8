//! Integer lattices in `Q^n`: Hermite and Smith normal forms, canonical
//! bases, sums, intersections, duals and quotients.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ip::InnerProduct;
use super::linalg::{self, Mat};
use super::rational::{common_denominator, qz, Q, Z};
use crate::error::{Error, Result};

pub type ZMat = Vec<Vec<Z>>;

fn row_sub_mul(m: &mut ZMat, target: usize, src: usize, q: &Z) {
    if q.is_zero() {
        return;
    }
    let s = m[src].clone();
    for (x, y) in m[target].iter_mut().zip(&s) {
        *x -= q * y;
    }
}

/// Row-style Hermite normal form with transform: returns `(H, U)` with
/// `U · M = H`, `U` unimodular, nonzero rows of `H` first, pivots positive
/// and entries above each pivot reduced into `[0, pivot)`.
pub fn hnf_with_transform(m: &ZMat, ncols: usize) -> (ZMat, ZMat) {
    let rows = m.len();
    let mut h = m.clone();
    let mut u: ZMat = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&a, &b| h[a][c].abs().cmp(&h[b][c].abs()));
            let Some(p) = best else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut clean = true;
            for k in r + 1..rows {
                if !h[k][c].is_zero() {
                    let q = h[k][c].div_floor(&h[r][c]);
                    row_sub_mul(&mut h, k, r, &q);
                    row_sub_mul(&mut u, k, r, &q);
                    if !h[k][c].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if r < rows && !h[r][c].is_zero() {
            if h[r][c].is_negative() {
                for x in h[r].iter_mut() {
                    *x = -&*x;
                }
                for x in u[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for k in 0..r {
                let q = h[k][c].div_floor(&h[r][c]);
                row_sub_mul(&mut h, k, r, &q);
                row_sub_mul(&mut u, k, r, &q);
            }
            r += 1;
        }
    }
    (h, u)
}

/// Nonzero rows of the Hermite normal form.
pub fn hnf(m: &ZMat, ncols: usize) -> ZMat {
    hnf_with_transform(m, ncols).0.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Basis of the integer left kernel `{u ∈ Z^rows : u · M = 0}`.
pub fn left_kernel(m: &ZMat, ncols: usize) -> ZMat {
    let (h, u) = hnf_with_transform(m, ncols);
    h.iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(Zero::is_zero))
        .map(|(_, urow)| urow)
        .collect()
}

/// Nonzero invariant factors `d₁ | d₂ | …` of an integer matrix.
pub fn smith_invariants(m: &ZMat, ncols: usize) -> Vec<Z> {
    let mut a = m.clone();
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(ncols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..ncols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_sub_mul(&mut a, i, t, &q);
                    if !a[i][t].is_zero() {
                        done = false;
                    }
                }
            }
            for j in t + 1..ncols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut() {
                        let v = &row[t] * &q;
                        row[j] -= v;
                    }
                    if !a[t][j].is_zero() {
                        done = false;
                    }
                }
            }
            if !done {
                // move the smallest remaining entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..ncols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..ncols).any(|j| !(&a[i][j] % &p).is_zero()));
            match bad {
                Some(i) => {
                    let s = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&s) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Finitely generated abelian group `Z/d₁ ⊕ … ⊕ Z/d_k` with `d₁ | … | d_k`;
/// a factor `0` is a free summand `Z`. Factors equal to 1 are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupPresentation {
    pub invariant_factors: Vec<Z>,
}

impl AbelianGroupPresentation {
    pub fn trivial() -> Self {
        AbelianGroupPresentation { invariant_factors: Vec::new() }
    }

    pub fn cyclic(d: &Z) -> Self {
        Self::from_factors(vec![d.clone()])
    }

    /// Normalizes arbitrary cyclic factors into a divisibility chain.
    pub fn from_factors(factors: Vec<Z>) -> Self {
        let free = factors.iter().filter(|d| d.is_zero()).count();
        let torsion: ZMat = {
            let t: Vec<Z> = factors.into_iter().filter(|d| !d.is_zero()).map(|d| d.abs()).collect();
            (0..t.len()).map(|i| (0..t.len()).map(|j| if i == j { t[i].clone() } else { Z::zero() }).collect()).collect()
        };
        let n = torsion.len();
        let mut out: Vec<Z> = smith_invariants(&torsion, n).into_iter().filter(|d| !d.is_one()).collect();
        out.extend(std::iter::repeat_n(Z::zero(), free));
        AbelianGroupPresentation { invariant_factors: out }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| d.is_zero()).count()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<Z> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().fold(Z::one(), |a, d| a * d))
    }
}

impl fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A lattice (discrete subgroup) of `Q^n`, stored by its canonical basis
/// `HNF(D·B)/D`; equality of lattices is equality of the stored bases.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    dim: usize,
    basis: Mat,
}

fn to_integer_rows(gens: &[Vec<Q>]) -> (ZMat, Z) {
    let d = common_denominator(gens.iter().flatten());
    let dq = qz(&d);
    let rows = gens.iter().map(|g| g.iter().map(|x| (x * &dq).to_integer()).collect()).collect();
    (rows, d)
}

impl Lattice {
    /// The subgroup generated by `gens` (any finite family of rational
    /// vectors generates a lattice).
    pub fn from_generators(dim: usize, gens: &[Vec<Q>]) -> Self {
        if gens.is_empty() {
            return Lattice::zero(dim);
        }
        let (rows, d) = to_integer_rows(gens);
        let dq = qz(&d);
        let basis = hnf(&rows, dim).into_iter().map(|r| r.iter().map(|x| qz(x) / &dq).collect()).collect();
        Lattice { dim, basis }
    }

    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new() }
    }

    pub fn standard(dim: usize) -> Self {
        Lattice::from_generators(dim, &linalg::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// Rational coordinates of `v` in the canonical basis, if in the span.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        if self.basis.is_empty() {
            return linalg::is_zero(v).then(Vec::new);
        }
        linalg::coordinates(&self.basis, v)
    }

    pub fn in_span(&self, v: &[Q]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut g = self.basis.clone();
        g.extend(other.basis.iter().cloned());
        Lattice::from_generators(self.dim, &g)
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        if self.basis.is_empty() || other.basis.is_empty() {
            return Lattice::zero(self.dim);
        }
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        let (rows, _) = to_integer_rows(&all);
        let r1 = self.basis.len();
        let gens: Mat = left_kernel(&rows, self.dim)
            .iter()
            .map(|u| {
                let c: Vec<Q> = u[..r1].iter().map(qz).collect();
                linalg::vec_mat(&c, &self.basis, self.dim)
            })
            .collect();
        Lattice::from_generators(self.dim, &gens)
    }

    /// `{v ∈ L : f · v = 0 for every row f of forms}` (standard dot).
    pub fn intersect_kernel(&self, forms: &[Vec<Q>]) -> Lattice {
        if forms.is_empty() || self.basis.is_empty() {
            return self.clone();
        }
        let pairing: Mat = self.basis.iter().map(|b| forms.iter().map(|f| linalg::dot(b, f)).collect()).collect();
        let (rows, _) = to_integer_rows(&pairing);
        let gens: Mat = left_kernel(&rows, forms.len())
            .iter()
            .map(|u| {
                let c: Vec<Q> = u.iter().map(qz).collect();
                linalg::vec_mat(&c, &self.basis, self.dim)
            })
            .collect();
        Lattice::from_generators(self.dim, &gens)
    }

    pub fn scale(&self, k: &Q) -> Lattice {
        let g: Mat = self.basis.iter().map(|b| linalg::scale(b, k)).collect();
        Lattice::from_generators(self.dim, &g)
    }

    /// Image under a linear map given on vectors.
    pub fn map(&self, out_dim: usize, f: impl Fn(&[Q]) -> Vec<Q>) -> Lattice {
        let g: Mat = self.basis.iter().map(|b| f(b)).collect();
        Lattice::from_generators(out_dim, &g)
    }

    /// Dual lattice inside `span(L)`: `{y ∈ span(L) : ⟨y, L⟩ ⊆ Z}`.
    pub fn dual(&self, ip: &InnerProduct) -> Lattice {
        if self.basis.is_empty() {
            return self.clone();
        }
        let g = ip.gram_of(&self.basis);
        let inv = linalg::inverse(&g).expect("independent basis has invertible gram");
        let d = linalg::mat_mul(&inv, &self.basis, self.dim);
        Lattice::from_generators(self.dim, &d)
    }

    /// Index `[big : self]` when both have the same rank, `None` when the
    /// quotient is infinite.
    pub fn index_in(&self, big: &Lattice) -> Result<Option<Z>> {
        quotient(self, big).map(|g| g.order())
    }
}

/// `big / small` as invariant factors.
pub fn quotient(small: &Lattice, big: &Lattice) -> Result<AbelianGroupPresentation> {
    if !small.is_sublattice_of(big) {
        return Err(Error::NotSublattice);
    }
    let coords: ZMat = small
        .basis
        .iter()
        .map(|b| big.coordinates(b).expect("sublattice").into_iter().map(|q| q.to_integer()).collect())
        .collect();
    let mut factors = smith_invariants(&coords, big.rank());
    factors.extend(std::iter::repeat_n(Z::zero(), big.rank() - small.rank()));
    Ok(AbelianGroupPresentation::from_factors(factors))
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis.iter().map(|r| super::rational::fmt_vec(r)).collect();
        write!(f, "Z<{}>", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{qi, qr, zi};

    fn zm(rows: &[&[i64]]) -> ZMat {
        rows.iter().map(|r| r.iter().map(|&x| zi(x)).collect()).collect()
    }

    fn qm(rows: &[&[i64]]) -> Mat {
        rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
    }

    #[test]
    fn hnf_identity_and_idempotence() {
        let id = zm(&[&[1, 0], &[0, 1]]);
        assert_eq!(hnf(&id, 2), id);
        let m = zm(&[&[2, 4], &[0, 6]]);
        let h = hnf(&m, 2);
        assert_eq!(hnf(&h, 2), h);
        assert_eq!(h, zm(&[&[2, 4], &[0, 6]]));
        let m2 = zm(&[&[2, 10], &[0, 6]]);
        assert_eq!(hnf(&m2, 2), h);
    }

    #[test]
    fn transform_is_consistent() {
        let m = zm(&[&[3, 5, 7], &[6, 10, 14], &[1, 1, 1]]);
        let (h, u) = hnf_with_transform(&m, 3);
        for (urow, hrow) in u.iter().zip(&h) {
            let prod: Vec<Z> = (0..3).map(|j| urow.iter().zip(&m).map(|(a, r)| a * &r[j]).sum()).collect();
            assert_eq!(&prod, hrow);
        }
        let k = left_kernel(&m, 3);
        assert_eq!(k.len(), 1);
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith_invariants(&zm(&[&[2, 0], &[0, 3]]), 2), vec![zi(1), zi(6)]);
        assert_eq!(smith_invariants(&zm(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3), vec![zi(2), zi(6), zi(12)]);
    }

    #[test]
    fn quotient_examples() {
        let z2 = Lattice::standard(2);
        assert!(quotient(&z2, &z2).unwrap().is_trivial());
        let small = Lattice::from_generators(2, &qm(&[&[2, 0], &[0, 3]]));
        assert_eq!(quotient(&small, &z2).unwrap().invariant_factors, vec![zi(6)]);
        assert_eq!(quotient(&z2, &small), Err(Error::NotSublattice));
        let line = Lattice::from_generators(2, &qm(&[&[2, 0]]));
        assert_eq!(quotient(&line, &z2).unwrap().invariant_factors, vec![zi(2), zi(0)]);
    }

    #[test]
    fn dual_examples() {
        let ip = InnerProduct::standard(2);
        assert_eq!(Lattice::standard(2).dual(&ip), Lattice::standard(2));
        let two = Lattice::from_generators(1, &qm(&[&[2]]));
        assert_eq!(two.dual(&InnerProduct::standard(1)), Lattice::from_generators(1, &[vec![qr(1, 2)]]));
        let a2 = InnerProduct::new(qm(&[&[2, -1], &[-1, 2]])).unwrap();
        let root = Lattice::standard(2);
        let weight = root.dual(&a2);
        assert_eq!(quotient(&root, &weight).unwrap().invariant_factors, vec![zi(3)]);
        assert_eq!(weight.dual(&a2), root);
    }

    #[test]
    fn intersections() {
        let a = Lattice::from_generators(2, &qm(&[&[2, 0], &[0, 1]]));
        let b = Lattice::from_generators(2, &qm(&[&[1, 0], &[0, 3]]));
        assert_eq!(a.intersection(&b), Lattice::from_generators(2, &qm(&[&[2, 0], &[0, 3]])));
        let z3 = Lattice::standard(3);
        let k = z3.intersect_kernel(&[vec![qi(1), qi(1), qi(1)]]);
        assert_eq!(k.rank(), 2);
        assert!(k.contains(&[qi(1), qi(-1), qi(0)]));
    }

    #[test]
    fn canonical_form_independent_of_denominator() {
        let a = Lattice::from_generators(2, &[vec![qr(1, 2), qi(0)], vec![qi(0), qi(1)]]);
        let b = Lattice::from_generators(2, &[vec![qr(1, 2), qi(1)], vec![qi(0), qr(3, 3)], vec![qi(1), qi(0)]]);
        assert_eq!(a, b);
    }
}
