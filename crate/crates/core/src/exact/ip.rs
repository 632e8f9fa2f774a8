use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::linalg::{self, Mat};
use super::rational::{qi, Q};
use crate::error::{Error, Result};

/// Positive definite rational inner product `⟨a, b⟩ = aᵀ G b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Mat", into = "Mat")]
pub struct InnerProduct {
    gram: Mat,
    inverse: Mat,
}

impl TryFrom<Mat> for InnerProduct {
    type Error = Error;
    fn try_from(m: Mat) -> Result<Self> {
        InnerProduct::new(m)
    }
}

impl From<InnerProduct> for Mat {
    fn from(ip: InnerProduct) -> Mat {
        ip.gram
    }
}

impl InnerProduct {
    /// Refuses non-symmetric or non positive definite matrices
    /// (all leading principal minors must be positive).
    pub fn new(gram: Mat) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::NotPositiveDefinite);
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotPositiveDefinite);
                }
            }
        }
        for k in 1..=n {
            let minor: Mat = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
            if linalg::det(&minor) <= Q::zero() {
                return Err(Error::NotPositiveDefinite);
            }
        }
        let inverse = linalg::inverse(&gram).ok_or(Error::NotPositiveDefinite)?;
        Ok(InnerProduct { gram, inverse })
    }

    pub fn standard(n: usize) -> Self {
        InnerProduct { gram: linalg::identity(n), inverse: linalg::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn ip(&self, a: &[Q], b: &[Q]) -> Q {
        linalg::dot(a, &self.lower(b))
    }

    pub fn norm2(&self, a: &[Q]) -> Q {
        self.ip(a, a)
    }

    /// The linear form `x ↦ ⟨a, x⟩` as a coefficient vector `G a`.
    pub fn lower(&self, a: &[Q]) -> Vec<Q> {
        linalg::mat_vec(&self.gram, a)
    }

    /// The vector `g` with `⟨g, x⟩ = form · x`, i.e. `G⁻¹ form`.
    pub fn raise(&self, form: &[Q]) -> Vec<Q> {
        linalg::mat_vec(&self.inverse, form)
    }

    /// `2a / ⟨a, a⟩`.
    pub fn coroot(&self, a: &[Q]) -> Result<Vec<Q>> {
        let n = self.norm2(a);
        if n.is_zero() {
            return Err(Error::ConstantFunctional);
        }
        Ok(linalg::scale(a, &(qi(2) / n)))
    }

    pub fn scaled(&self, s: &Q) -> Self {
        let inv_s = s.recip();
        InnerProduct {
            gram: self.gram.iter().map(|r| linalg::scale(r, s)).collect(),
            inverse: self.inverse.iter().map(|r| linalg::scale(r, &inv_s)).collect(),
        }
    }

    pub fn block_diag(blocks: &[InnerProduct]) -> Self {
        let n: usize = blocks.iter().map(|b| b.dim()).sum();
        let mut gram = vec![linalg::zeros(n); n];
        let mut inverse = vec![linalg::zeros(n); n];
        let mut off = 0;
        for b in blocks {
            for i in 0..b.dim() {
                for j in 0..b.dim() {
                    gram[off + i][off + j] = b.gram[i][j].clone();
                    inverse[off + i][off + j] = b.inverse[i][j].clone();
                }
            }
            off += b.dim();
        }
        InnerProduct { gram, inverse }
    }

    /// Pullback along `y ↦ Bᵀ y` for a basis given by the rows of `B`.
    pub fn pullback(&self, basis: &Mat) -> Result<Self> {
        let n = self.dim();
        let gb: Mat = basis.iter().map(|b| self.lower(b)).collect();
        let g = linalg::mat_mul(basis, &linalg::transpose(&gb, n), basis.len());
        InnerProduct::new(g)
    }

    /// Gram matrix `(⟨v_i, v_j⟩)` of a family of vectors.
    pub fn gram_of(&self, vs: &[Vec<Q>]) -> Mat {
        vs.iter().map(|a| vs.iter().map(|b| self.ip(a, b)).collect()).collect()
    }

    pub fn is_standard(&self) -> bool {
        self.gram == linalg::identity(self.dim())
    }
}

/// Orthogonal projection of `v` onto the span of `subspace` under `ip`.
/// Dependent generators are reduced first.
pub fn orthogonal_project(v: &[Q], subspace: &[Vec<Q>], ip: &InnerProduct) -> Vec<Q> {
    let n = v.len();
    let basis = linalg::row_space(&subspace.to_vec(), n);
    if basis.is_empty() {
        return linalg::zeros(n);
    }
    let g = ip.gram_of(&basis);
    let rhs: Vec<Q> = basis.iter().map(|b| ip.ip(b, v)).collect();
    let c = linalg::solve(&g, &rhs, basis.len()).expect("gram of independent vectors is invertible");
    let mut out = linalg::zeros(n);
    for (ci, b) in c.iter().zip(&basis) {
        out = linalg::axpy(&out, ci, b);
    }
    out
}

/// Basis of the orthogonal complement of `span(vs)` inside `span(within)`.
pub fn orthogonal_complement_within(vs: &[Vec<Q>], within: &[Vec<Q>], ip: &InnerProduct) -> Mat {
    let n = ip.dim();
    let w = linalg::row_space(&within.to_vec(), n);
    if w.is_empty() {
        return Vec::new();
    }
    // coefficients c with Σ c_k w_k ⟂ every v
    let m: Mat = vs.iter().map(|v| w.iter().map(|wk| ip.ip(wk, v)).collect()).collect();
    let ns = if m.is_empty() { linalg::identity(w.len()) } else { linalg::nullspace(&m, w.len()) };
    let vecs: Mat = ns.iter().map(|c| linalg::vec_mat(c, &w, n)).collect();
    linalg::row_space(&vecs, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qr;

    #[test]
    fn rejects_non_pd() {
        let bad = vec![vec![qi(1), qi(2)], vec![qi(2), qi(1)]];
        assert_eq!(InnerProduct::new(bad), Err(Error::NotPositiveDefinite));
        let asym = vec![vec![qi(2), qi(1)], vec![qi(0), qi(2)]];
        assert!(InnerProduct::new(asym).is_err());
        let zero = vec![vec![qi(0)]];
        assert!(InnerProduct::new(zero).is_err());
    }

    #[test]
    fn projection_examples() {
        let ip = InnerProduct::standard(2);
        let v = vec![qi(1), qi(0)];
        assert_eq!(orthogonal_project(&v, &[vec![qi(1), qi(1)]], &ip), vec![qr(1, 2), qr(1, 2)]);
        let full = vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]];
        assert_eq!(orthogonal_project(&v, &full, &ip), v);
        let dependent = vec![vec![qi(1), qi(1)], vec![qi(2), qi(2)]];
        assert_eq!(orthogonal_project(&v, &dependent, &ip), vec![qr(1, 2), qr(1, 2)]);
    }

    #[test]
    fn projection_residual_is_orthogonal() {
        let ip = InnerProduct::new(vec![vec![qi(2), qi(-1), qi(0)], vec![qi(-1), qi(2), qi(0)], vec![qi(0), qi(0), qi(3)]]).unwrap();
        let v = vec![qi(1), qi(2), qi(3)];
        let sub = vec![vec![qi(1), qi(0), qi(1)]];
        let p = orthogonal_project(&v, &sub, &ip);
        let r = linalg::sub(&v, &p);
        assert_eq!(ip.ip(&r, &sub[0]), qi(0));
    }

    #[test]
    fn raise_inverts_lower() {
        let ip = InnerProduct::new(vec![vec![qi(2), qi(1)], vec![qi(1), qi(3)]]).unwrap();
        let a = vec![qr(1, 3), qi(-2)];
        assert_eq!(ip.raise(&ip.lower(&a)), a);
        let s = ip.scaled(&qi(3));
        assert_eq!(s.raise(&s.lower(&a)), a);
    }
}
