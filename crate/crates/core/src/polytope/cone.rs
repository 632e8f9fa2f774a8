use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::{hyperplane_normal, k_subsets};
use crate::exact::linalg::{self, Mat};
use crate::exact::rational::{primitive_integer, qz};
use crate::exact::Q;

/// Polyhedral cone with apex 0, held in both descriptions: constraints
/// `e · v = 0`, `a · v ≥ 0` and generators (extreme rays plus a lineality
/// basis). Rays are primitive integer vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    equalities: Mat,
    normals: Mat,
    rays: Mat,
    lineality: Mat,
}

fn primitive(v: &[Q]) -> Vec<Q> {
    primitive_integer(v).iter().map(qz).collect()
}

impl Cone {
    /// Cone `{v : E v = 0, A v ≥ 0}`.
    pub fn from_constraints(dim: usize, equalities: &Mat, normals: &Mat) -> Cone {
        let mut all = equalities.clone();
        all.extend(normals.iter().cloned());
        let lineality = if all.is_empty() { linalg::identity(dim) } else { linalg::row_space(&linalg::nullspace(&all, dim), dim) };
        let mut fixed = equalities.clone();
        fixed.extend(lineality.iter().cloned());
        let r = linalg::rank(&fixed, dim);
        let s = dim - r;
        let mut rays: BTreeSet<Vec<Q>> = BTreeSet::new();
        if s > 0 {
            for sub in k_subsets(normals.len(), s - 1) {
                let mut m = fixed.clone();
                m.extend(sub.iter().map(|&i| normals[i].clone()));
                let ns = linalg::nullspace(&m, dim);
                if ns.len() != 1 {
                    continue;
                }
                for cand in [ns[0].clone(), linalg::neg(&ns[0])] {
                    if normals.iter().all(|a| !linalg::dot(a, &cand).is_negative()) {
                        rays.insert(primitive(&cand));
                    }
                }
            }
        }
        Cone { dim, equalities: equalities.clone(), normals: normals.clone(), rays: rays.into_iter().collect(), lineality }
    }

    /// Cone generated by `gens` (nonnegative combinations).
    pub fn from_generators(dim: usize, gens: &[Vec<Q>]) -> Cone {
        let gens: Vec<Vec<Q>> = gens.iter().filter(|g| !linalg::is_zero(g)).cloned().collect();
        let span = linalg::row_space(&gens, dim);
        let s = span.len();
        let equalities = if s == 0 { linalg::identity(dim) } else { linalg::complement(&span, dim) };
        let mut normals: BTreeSet<Vec<Q>> = BTreeSet::new();
        if s > 0 {
            for sub in k_subsets(gens.len(), s - 1) {
                let vecs: Mat = sub.iter().map(|&i| gens[i].clone()).collect();
                let Some(a) = hyperplane_normal(&span, &vecs, dim) else { continue };
                for cand in [a.clone(), linalg::neg(&a)] {
                    if gens.iter().all(|g| !linalg::dot(&cand, g).is_negative()) {
                        normals.insert(primitive(&cand));
                    }
                }
            }
        }
        let normals: Mat = normals.into_iter().collect();
        Cone::from_constraints(dim, &equalities, &normals)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &Mat {
        &self.rays
    }

    pub fn lineality(&self) -> &Mat {
        &self.lineality
    }

    pub fn normals(&self) -> &Mat {
        &self.normals
    }

    pub fn equalities(&self) -> &Mat {
        &self.equalities
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Dimension of the linear span of the cone.
    pub fn span_dim(&self) -> usize {
        self.span_basis().len()
    }

    pub fn span_basis(&self) -> Mat {
        linalg::row_space(&self.generators(), self.dim)
    }

    /// Rays followed by `±` each lineality vector.
    pub fn generators(&self) -> Mat {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(linalg::neg(l));
        }
        g
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.equalities.iter().all(|e| linalg::dot(e, v).is_zero()) && self.normals.iter().all(|a| !linalg::dot(a, v).is_negative())
    }

    /// A linear form positive on every nonzero element (pointed cones).
    pub fn grading(&self) -> Vec<Q> {
        let mut g = linalg::zeros(self.dim);
        for a in &self.normals {
            g = linalg::add(&g, a);
        }
        g
    }
}

/// Equality by mutual containment of generators.
pub fn cone_equal(a: &Cone, b: &Cone) -> bool {
    a.dim == b.dim && a.generators().iter().all(|g| b.contains(g)) && b.generators().iter().all(|g| a.contains(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn self_equal_and_scale_invariant() {
        let a = Cone::from_generators(2, &[v(&[1, 0])]);
        let b = Cone::from_generators(2, &[v(&[2, 0])]);
        assert!(cone_equal(&a, &a));
        assert!(cone_equal(&a, &b));
        assert_eq!(a.rays(), &vec![v(&[1, 0])]);
    }

    #[test]
    fn quadrant_vs_half_plane() {
        let quadrant = Cone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])]);
        let half = Cone::from_generators(2, &[v(&[1, 0]), v(&[-1, 0]), v(&[0, 1])]);
        assert!(!cone_equal(&quadrant, &half));
        assert!(quadrant.is_pointed());
        assert!(!half.is_pointed());
        assert!(!quadrant.contains(&v(&[-1, 0])));
        assert!(half.contains(&v(&[-3, 2])));
    }

    #[test]
    fn constraints_match_generators() {
        let c = Cone::from_constraints(3, &vec![], &vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[1, 1, -1])]);
        let g = Cone::from_generators(3, c.rays());
        assert!(cone_equal(&c, &g));
        assert_eq!(c.rays().len(), 4);
    }

    #[test]
    fn zero_cone() {
        let z = Cone::from_generators(2, &[]);
        assert_eq!(z.span_dim(), 0);
        assert!(z.contains(&v(&[0, 0])));
        assert!(!z.contains(&v(&[1, 0])));
    }
}
