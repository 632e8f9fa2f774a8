use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::IntegralRootSystem;
use crate::error::{Error, Result};
use crate::exact::lattice::{left_kernel, ZMat};
use crate::exact::{orthogonal_project, quotient, AbelianGroupPresentation, InnerProduct, Lattice, Q, Z};
use crate::polytope::{lp, Polytope};
use crate::roots::{AffineRootSystem, FiniteSubsystem};

/// `d_I = gcd{a_j : j ∉ I}` for a proper subset `I` of the nodes.
pub fn d_i(labels: &[i64], indices: &[usize]) -> Result<i64> {
    let outside: Vec<i64> = (0..labels.len()).filter(|j| !indices.contains(j)).map(|j| labels[j]).collect();
    if outside.is_empty() {
        return Err(Error::OutsideAlcove("every wall vanishes at the point".into()));
    }
    Ok(outside.iter().fold(0i64, |g, a| g.gcd(a)))
}

/// Component group of `A^{Φ_x}` for an adjoint lattice: `Z/d_I` on an
/// irreducible infinite system, trivial on a finite one.
pub fn component_group_adjoint(sys: &AffineRootSystem, indices: &[usize]) -> Result<AbelianGroupPresentation> {
    if !sys.is_affine() {
        return Ok(AbelianGroupPresentation::trivial());
    }
    if sys.components().len() != 1 {
        return Err(Error::Unsupported("component groups of reducible systems are taken per factor".into()));
    }
    Ok(AbelianGroupPresentation::cyclic(&Z::from(d_i(&sys.labels(), indices)?)))
}

fn lowered(ip: &InnerProduct, local: &FiniteSubsystem) -> Vec<Vec<Q>> {
    local.simple.iter().map(|s| ip.lower(&s.gradient)).collect()
}

/// `(ZΦ̄_x)^∨ / (Λ^∨ + (RΦ̄_x)^⊥)`, computed inside `RΦ̄_x`: the coweight
/// lattice of `Φ̄_x` modulo the projection of `Λ^∨`.
pub fn component_group_general(ip: &InnerProduct, local: &FiniteSubsystem, lattice: &Lattice) -> Result<AbelianGroupPresentation> {
    if local.simple.is_empty() {
        return Ok(AbelianGroupPresentation::trivial());
    }
    let n = ip.dim();
    let grads: Vec<Vec<Q>> = local.simple.iter().map(|s| s.gradient.clone()).collect();
    let roots = Lattice::from_generators(n, &grads);
    let coweights = roots.dual(ip);
    let projected = lattice.dual(ip).map(n, |v| orthogonal_project(v, roots.basis(), ip));
    quotient(&projected, &coweights)
}

/// `𝔎_x = Λ^∨ ∩ (RΦ̄_x)^⊥`.
pub fn kernel_stalk(ip: &InnerProduct, local: &FiniteSubsystem, lattice: &Lattice) -> Lattice {
    lattice.dual(ip).intersect_kernel(&lowered(ip, local))
}

/// Exactness of `0 → 𝔎_x → Λ^∨ → Z^{I_x} → Z/d_{I_x} → 0` at one point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub indices: Vec<usize>,
    pub d: i64,
    pub kernel_exact: bool,
    pub middle_exact: bool,
    pub psi_surjective: bool,
    /// `component_group_general` has order `d_I`.
    pub component_group_matches: bool,
}

impl SequenceReport {
    pub fn exact(&self) -> bool {
        self.kernel_exact && self.middle_exact && self.psi_surjective && self.component_group_matches
    }

    /// First broken position, if any.
    pub fn failure(&self) -> Option<&'static str> {
        [
            (self.kernel_exact, "ker rho differs from the kernel stalk"),
            (self.middle_exact, "im rho differs from ker psi"),
            (self.psi_surjective, "psi is not surjective"),
            (self.component_group_matches, "component group order differs from d_I"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, why)| why)
    }
}

fn integer_rows(m: &[Vec<Q>]) -> Result<ZMat> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|q| if q.is_integer() { Ok(q.to_integer()) } else { Err(Error::ValidationFailure("non-integral pairing".into())) })
                .collect()
        })
        .collect()
}

fn z_lattice(dim: usize, rows: &ZMat) -> Lattice {
    Lattice::from_generators(dim, &rows.iter().map(|r| r.iter().map(|z| Q::from_integer(z.clone())).collect()).collect::<Vec<_>>())
}

/// Checks the stalk sequence at `x` for an irreducible infinite system
/// with a lattice of adjoint type.
pub fn stalk_sequence_check(ir: &IntegralRootSystem, x: &[Q]) -> Result<SequenceReport> {
    let sys = &ir.sys;
    if !sys.is_affine() || sys.components().len() != 1 {
        return Err(Error::Unsupported("stalk sequence needs an irreducible infinite system".into()));
    }
    let ip = sys.ip();
    let local = sys.local_subsystem(x)?;
    let indices = local.simple_indices.clone();
    let labels = sys.labels();
    let d = d_i(&labels, &indices)?;
    let coweights = ir.lattice.dual(ip);
    let basis = coweights.basis();
    let k = indices.len();
    // ρ as an integer matrix: row b ↦ (⟨ᾱ_i, b⟩)_{i ∈ I}.
    let rho = integer_rows(&basis.iter().map(|b| indices.iter().map(|&i| ip.ip(&sys.simple_roots()[i].gradient, b)).collect()).collect::<Vec<_>>())?;
    let kernel_exact = if k == 0 {
        coweights == kernel_stalk(ip, &local, &ir.lattice)
    } else {
        let ker: Vec<Vec<Q>> = left_kernel(&rho, k)
            .iter()
            .map(|u| {
                let c: Vec<Q> = u.iter().map(|z| Q::from_integer(z.clone())).collect();
                crate::exact::linalg::vec_mat(&c, basis, sys.dim())
            })
            .collect();
        Lattice::from_generators(sys.dim(), &ker) == kernel_stalk(ip, &local, &ir.lattice)
    };
    let image = z_lattice(k, &rho);
    // ker ψ: first k coordinates of the integer relations Σ a_i y_i − d t = 0.
    let mut rel: ZMat = indices.iter().map(|&i| vec![Z::from(labels[i])]).collect();
    rel.push(vec![Z::from(-d)]);
    let kerpsi: ZMat = left_kernel(&rel, 1).into_iter().map(|u| u[..k].to_vec()).collect();
    let middle_exact = image == z_lattice(k, &kerpsi);
    let g = indices.iter().fold(Z::from(d), |g, &i| g.gcd(&Z::from(labels[i])));
    let psi_surjective = g.is_one();
    let cg = component_group_general(ip, &local, &ir.lattice)?;
    let component_group_matches = cg.order() == Some(Z::from(d));
    Ok(SequenceReport { indices, d, kernel_exact, middle_exact, psi_surjective, component_group_matches })
}

/// The square restricting `Z/d_{I_x}` to `Z/d_{I_y}` for `I_y ⊆ I_x`
/// commutes: `d_{I_y}` divides `d_{I_x}` and every `a_i`, `i ∈ I_x ∖ I_y`.
pub fn restriction_commutes(labels: &[i64], ix: &[usize], iy: &[usize]) -> Result<bool> {
    if !iy.iter().all(|i| ix.contains(i)) {
        return Err(Error::InvalidType("restriction needs I_y inside I_x".into()));
    }
    let (dx, dy) = (d_i(labels, ix)?, d_i(labels, iy)?);
    Ok(dx % dy == 0 && ix.iter().filter(|i| !iy.contains(i)).all(|&i| labels[i] % dy == 0))
}

/// `H⁰(P, ℭ)[p^∞] = Z/p^{e_max}` for one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H0Entry {
    pub p: i64,
    pub e_max: u32,
    /// A node with `p ∤ a_{i₀}`.
    pub witness: usize,
}

fn primes_dividing(n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            out.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// For each prime `p` dividing a label, the largest `e` such that the face
/// `F_e = {α_i = 0 whenever p^e ∤ a_i}` meets `P`; primes with `e_max = 0`
/// are omitted.
pub fn h0_component_data(p: &Polytope, ir: &IntegralRootSystem) -> Result<Vec<H0Entry>> {
    let sys = &ir.sys;
    if !sys.is_affine() || sys.components().len() != 1 {
        return Err(Error::Unsupported("H0 data needs an irreducible infinite system".into()));
    }
    let labels = sys.labels();
    let forms = sys.simple_linforms();
    let mut primes: Vec<i64> = labels.iter().flat_map(|&a| primes_dividing(a)).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut out = Vec::new();
    for q in primes {
        let mut e_max = 0;
        let mut e = 1u32;
        while labels.iter().any(|a| a % q.pow(e) == 0) {
            let mut eqs = p.equalities().to_vec();
            eqs.extend(labels.iter().zip(&forms).filter(|(a, _)| *a % q.pow(e) != 0).map(|(_, f)| f.clone()));
            if lp::feasible_point(sys.dim(), &eqs, p.inequalities()).is_none() {
                break;
            }
            e_max = e;
            e += 1;
        }
        if e_max > 0 {
            let witness = labels.iter().position(|a| a % q != 0).expect("labels are coprime");
            out.push(H0Entry { p: q, e_max, witness });
        }
    }
    Ok(out)
}

/// `Λ = ZΦ̄ ⊕ Λ^W` with `Λ^W = Λ ∩ (RΦ̄)^⊥`; returns `(ZΦ̄, Λ^W)` or the
/// first basis vector of `Λ` outside the sum.
pub fn adjoint_decompose(ir: &IntegralRootSystem) -> Result<(Lattice, Lattice)> {
    let ip = ir.sys.ip();
    let roots = ir.sys.root_lattice();
    let fixed = ir.lattice.intersect_kernel(&ir.sys.simple_roots().iter().map(|s| ip.lower(&s.gradient)).collect::<Vec<_>>());
    let sum = roots.sum(&fixed);
    match ir.lattice.basis().iter().find(|b| !sum.contains(b)) {
        None => Ok((roots, fixed)),
        Some(b) => Err(Error::NotAdjoint(crate::exact::rational::fmt_vec(b))),
    }
}

/// The adjoint-type lattice `ZΦ̄ ⊕ Λ^W` commensurable with `Λ`, to which
/// the stalk computations reduce.
pub fn commensurable_adjoint(ir: &IntegralRootSystem) -> Result<IntegralRootSystem> {
    let ip = ir.sys.ip();
    let fixed = ir.lattice.intersect_kernel(&ir.sys.simple_roots().iter().map(|s| ip.lower(&s.gradient)).collect::<Vec<_>>());
    IntegralRootSystem::new(ir.sys.clone(), ir.sys.root_lattice().sum(&fixed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{qi, qr};
    use crate::roots::{build_affine_untwisted, build_finite, Family};

    #[test]
    fn gcd_of_labels() {
        let c = [1, 2, 2, 1];
        assert_eq!(d_i(&c, &[1, 2]).unwrap(), 1);
        assert_eq!(d_i(&c, &[0, 3]).unwrap(), 2);
        assert_eq!(d_i(&c, &[0, 2, 3]).unwrap(), 2);
        assert!(d_i(&c, &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn a1_component_groups() {
        let sys = build_finite(Family::A, 1).unwrap();
        let local = sys.local_subsystem(&[qi(0), qi(0)]).unwrap();
        let ip = sys.ip();
        // Root lattice: a direct summand, so no components.
        assert!(component_group_general(ip, &local, &sys.root_lattice()).unwrap().is_trivial());
        assert_eq!(component_group_general(ip, &local, &sys.weight_lattice()).unwrap().order(), Some(Z::from(2)));
    }

    #[test]
    fn kernel_stalk_of_a1_in_the_plane() {
        let sys = build_finite(Family::A, 1).unwrap();
        let local = sys.local_subsystem(&[qi(0), qi(0)]).unwrap();
        let z2 = Lattice::standard(2);
        assert_eq!(kernel_stalk(sys.ip(), &local, &z2), Lattice::from_generators(2, &[vec![qi(1), qi(1)]]));
    }

    #[test]
    fn sequence_on_c2_vertices() {
        let sys = build_affine_untwisted(Family::C, 2).unwrap();
        let ir = IntegralRootSystem::adjoint(sys.clone()).unwrap();
        for v in sys.alcove().unwrap().vertices() {
            let r = stalk_sequence_check(&ir, v).unwrap();
            assert!(r.exact(), "{:?}", r.failure());
        }
        let h0 = h0_component_data(sys.alcove().unwrap(), &ir).unwrap();
        assert_eq!(h0, vec![H0Entry { p: 2, e_max: 1, witness: 0 }]);
        let small = Polytope::hull(&[vec![qr(1, 8), qr(1, 16)], vec![qr(1, 6), qr(1, 16)], vec![qr(1, 8), qr(1, 12)]]).unwrap();
        assert!(h0_component_data(&small, &ir).unwrap().is_empty());
    }

    #[test]
    fn adjoint_type_detection() {
        let sys = build_finite(Family::A, 1).unwrap();
        let ir = IntegralRootSystem::new(sys.clone(), sys.weight_lattice()).unwrap();
        assert!(matches!(adjoint_decompose(&ir), Err(Error::NotAdjoint(_))));
        let z2 = IntegralRootSystem::new(sys.clone(), Lattice::from_generators(2, &[vec![qi(1), qi(-1)], vec![qi(1), qi(1)]])).unwrap();
        let (r, w) = adjoint_decompose(&z2).unwrap();
        assert_eq!((r.rank(), w.rank()), (1, 1));
        assert_eq!(commensurable_adjoint(&ir).unwrap().lattice, sys.root_lattice());
    }
}
