use num_traits::{Signed, Zero};

use super::Cone;
use crate::exact::lattice::Lattice;
use crate::exact::linalg;
use crate::exact::rational::{primitive_integer, qz, Z};
use crate::exact::Q;

/// Hilbert basis of the monoid `cone ∩ lattice` for a pointed cone whose
/// span equals the span of the lattice. Candidates are the lattice points
/// of the zonotope `Σ [0,1] ρ_j` over primitive ray generators, scanned
/// through their bounding box in lattice coordinates; `None` when the box
/// exceeds `cap` points or the inputs do not fit.
pub fn hilbert_basis(cone: &Cone, lattice: &Lattice, cap: usize) -> Option<Vec<Vec<Q>>> {
    if !cone.is_pointed() || cone.span_dim() != lattice.rank() {
        return None;
    }
    if lattice.rank() == 0 {
        return Some(Vec::new());
    }
    let k = lattice.rank();
    let mut ray_coords: Vec<Vec<Z>> = Vec::new();
    for r in cone.rays() {
        let c = lattice.coordinates(r)?;
        ray_coords.push(primitive_integer(&c));
    }
    let mut lo = vec![Z::zero(); k];
    let mut hi = vec![Z::zero(); k];
    for c in &ray_coords {
        for i in 0..k {
            if c[i].is_negative() {
                lo[i] += &c[i];
            } else {
                hi[i] += &c[i];
            }
        }
    }
    let mut total: u128 = 1;
    for i in 0..k {
        let w: u128 = u128::try_from(&hi[i] - &lo[i] + Z::from(1)).ok()?;
        total = total.checked_mul(w)?;
        if total > cap as u128 {
            return None;
        }
    }
    let grading = cone.grading();
    let basis = lattice.basis();
    let mut cands: Vec<(Q, Vec<Q>)> = Vec::new();
    let mut cur = lo.clone();
    loop {
        if cur.iter().any(|x| !x.is_zero()) {
            let coeffs: Vec<Q> = cur.iter().map(qz).collect();
            let v = linalg::vec_mat(&coeffs, basis, lattice.dim());
            if cone.contains(&v) {
                cands.push((linalg::dot(&grading, &v), v));
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                cands.sort();
                let mut irreducible: Vec<Vec<Q>> = Vec::new();
                for (_, x) in cands {
                    let reducible = irreducible.iter().any(|h| cone.contains(&linalg::sub(&x, h)));
                    if !reducible {
                        irreducible.push(x);
                    }
                }
                irreducible.sort();
                return Some(irreducible);
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i].clone();
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn classic_two_dimensional_example() {
        // cone spanned by (1,0) and (1,2): Hilbert basis {(1,0),(1,1),(1,2)}
        let c = Cone::from_generators(2, &[v(&[1, 0]), v(&[1, 2])]);
        let h = hilbert_basis(&c, &Lattice::standard(2), 10_000).unwrap();
        assert_eq!(h, vec![v(&[1, 0]), v(&[1, 1]), v(&[1, 2])]);
    }

    #[test]
    fn sublattice_changes_the_basis() {
        let c = Cone::from_generators(2, &[v(&[1, 0]), v(&[1, 2])]);
        let even = Lattice::from_generators(2, &[v(&[1, 0]), v(&[0, 2])]);
        let h = hilbert_basis(&c, &even, 10_000).unwrap();
        assert_eq!(h, vec![v(&[1, 0]), v(&[1, 2])]);
    }

    #[test]
    fn ray_in_plane() {
        let c = Cone::from_generators(2, &[v(&[2, 2])]);
        let l = Lattice::from_generators(2, &[v(&[1, 1])]);
        assert_eq!(hilbert_basis(&c, &l, 100).unwrap(), vec![v(&[1, 1])]);
    }
}
