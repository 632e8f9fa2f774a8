use num_traits::Zero;

use super::functional::AffineFunctional;
use crate::error::Result;
use crate::exact::linalg::{self, Mat};
use crate::exact::{qi, InnerProduct, Q};

/// Affine motion `x ↦ L x + t` with `L` orthogonal for the metric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub linear: Mat,
    pub translation: Vec<Q>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement { linear: linalg::identity(n), translation: linalg::zeros(n) }
    }

    /// `s_α(x) = x − α(x) ᾱ^∨`: `L = I − ᾱ^∨ (Gᾱ)ᵀ`, `t = −α(0) ᾱ^∨`.
    pub fn reflection(ip: &InnerProduct, alpha: &AffineFunctional) -> Result<Self> {
        let cr = alpha.coroot(ip)?;
        let form = ip.lower(&alpha.gradient);
        let n = ip.dim();
        let linear = (0..n).map(|i| (0..n).map(|j| qi(i64::from(i == j)) - &cr[i] * &form[j]).collect()).collect();
        Ok(WeylElement { linear, translation: linalg::scale(&cr, &-alpha.constant.clone()) })
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        linalg::add(&linalg::mat_vec(&self.linear, x), &self.translation)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.dim();
        WeylElement { linear: linalg::mat_mul(&self.linear, &other.linear, n), translation: self.apply(&other.translation) }
    }

    pub fn inverse(&self) -> Option<WeylElement> {
        let li = linalg::inverse(&self.linear)?;
        let t = linalg::neg(&linalg::mat_vec(&li, &self.translation));
        Some(WeylElement { linear: li, translation: t })
    }

    /// `Lᵀ G L = G`.
    pub fn preserves(&self, ip: &InnerProduct) -> bool {
        let n = self.dim();
        let g = ip.gram();
        let lt = linalg::transpose(&self.linear, n);
        linalg::mat_mul(&linalg::mat_mul(&lt, g, n), &self.linear, n) == *g
    }

    /// `(w·α)(x) = α(w⁻¹ x)`.
    pub fn act_on(&self, ip: &InnerProduct, alpha: &AffineFunctional) -> Option<AffineFunctional> {
        let inv = self.inverse()?;
        let n = self.dim();
        // α(w⁻¹x) = c + (Gg)·(L'x + t') so the new form is L'ᵀ G g
        let form = ip.lower(&alpha.gradient);
        let new_form = linalg::mat_vec(&linalg::transpose(&inv.linear, n), &form);
        let c = &alpha.constant + linalg::dot(&form, &inv.translation);
        Some(AffineFunctional::new(ip.raise(&new_form), c))
    }

    pub fn is_identity(&self) -> bool {
        self.linear == linalg::identity(self.dim()) && self.translation.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qr;

    #[test]
    fn reflection_is_an_isometric_involution() {
        let ip = InnerProduct::new(vec![vec![qi(2), qi(-1)], vec![qi(-1), qi(2)]]).unwrap();
        let a = AffineFunctional::new(vec![qi(1), qi(0)], qr(1, 3));
        let s = WeylElement::reflection(&ip, &a).unwrap();
        assert!(s.preserves(&ip));
        assert!(s.compose(&s).is_identity());
        let x = vec![qr(2, 5), qi(-7)];
        assert_eq!(s.apply(&x), a.reflect(&ip, &x).unwrap());
        assert_eq!(s.act_on(&ip, &a).unwrap(), a.neg());
    }
}
