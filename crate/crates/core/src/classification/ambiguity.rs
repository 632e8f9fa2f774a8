use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegralRootSystem;
use crate::error::{Error, Result};
use crate::exact::linalg;
use crate::exact::{qi, Q, Z};
use crate::roots::cartan::{self, CartanMatrix};
use crate::roots::{AffineFunctional, AffineRootSystem};

/// The root `α_s^prim` of a simple reflection: same wall, nonnegative on
/// the alcove, gradient generating `Λ^{−s} = Λ ∩ Rᾱ_s`.
pub fn primitive_functional(ir: &IntegralRootSystem, s: usize) -> Result<AffineFunctional> {
    let a = ir.sys.simple_roots().get(s).ok_or_else(|| Error::InvalidType(format!("no simple root {s}")))?;
    let n = ir.sys.dim();
    let normals = linalg::complement(&vec![a.gradient.clone()], n);
    let line = ir.lattice.intersect_kernel(&normals);
    let g = line.basis().first().ok_or_else(|| Error::ValidationFailure("lattice meets the root line trivially".into()))?;
    let j = a.gradient.iter().position(|x| !x.is_zero()).expect("nonconstant root");
    let k = (&g[j] / &a.gradient[j]).abs();
    Ok(a.scale(&k))
}

/// Gcd `d` with `⟨Λ, (ᾱ^prim)^∨⟩ = dZ`.
fn pairing_gcd(ir: &IntegralRootSystem, prim: &AffineFunctional) -> Result<Z> {
    let cr = prim.coroot(ir.sys.ip())?;
    let mut d = Z::zero();
    for b in ir.lattice.basis() {
        let v: Q = ir.sys.ip().ip(b, &cr);
        if !v.is_integer() {
            return Err(Error::ValidationFailure("coroot pairs non-integrally with the lattice".into()));
        }
        d = d.gcd(&v.to_integer());
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbiguityEntry {
    pub index: usize,
    pub primitive: AffineFunctional,
    /// `⟨Λ, (ᾱ^prim)^∨⟩ = dZ`.
    pub d: Z,
    pub ambiguous: bool,
    /// `α_s = 2 α_s^prim` in the given system.
    pub doubled: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbiguityReport {
    pub entries: Vec<AmbiguityEntry>,
    /// No node joined to another by a simple edge is ambiguous.
    pub simple_edge_rule_holds: bool,
    /// No two distinct ambiguous reflections are conjugate.
    pub conjugacy_rule_holds: bool,
}

impl AmbiguityReport {
    /// `S_amb` for `(W, Λ)`.
    pub fn ambiguous(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| e.ambiguous).map(|e| e.index).collect()
    }

    /// `S_amb(Φ) = {s : α_s = 2 α_s^prim}`.
    pub fn s_amb_phi(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| e.doubled).map(|e| e.index).collect()
    }
}

/// Classes of simple reflections conjugate under `W`: joined by a path
/// of edges with `m_st` odd, which for Weyl groups means `m_st = 3`.
pub fn conjugacy_classes(c: &CartanMatrix) -> Vec<Vec<usize>> {
    let odd: CartanMatrix = (0..c.len()).map(|i| (0..c.len()).map(|j| i64::from(i != j && c[i][j] * c[j][i] == 1)).collect()).collect();
    cartan::components(&odd)
}

pub fn ambiguous_reflections(ir: &IntegralRootSystem) -> Result<AmbiguityReport> {
    let mut entries = Vec::new();
    for (s, a) in ir.sys.simple_roots().iter().enumerate() {
        let prim = primitive_functional(ir, s)?;
        let d = pairing_gcd(ir, &prim)?;
        let doubled = *a == prim.scale(&qi(2));
        entries.push(AmbiguityEntry { index: s, primitive: prim, ambiguous: d == Z::from(2), d, doubled });
    }
    let c = ir.sys.cartan();
    let simple_edge_rule_holds =
        entries.iter().all(|e| !e.ambiguous || !(0..c.len()).any(|t| t != e.index && c[e.index][t] == -1 && c[t][e.index] == -1));
    let amb: Vec<usize> = entries.iter().filter(|e| e.ambiguous).map(|e| e.index).collect();
    let conjugacy_rule_holds = conjugacy_classes(c).iter().all(|cls| cls.iter().filter(|i| amb.contains(i)).count() <= 1);
    Ok(AmbiguityReport { entries, simple_edge_rule_holds, conjugacy_rule_holds })
}

/// `S_amb(Φ)` of an integral root system.
pub fn s_amb_of(ir: &IntegralRootSystem) -> Result<Vec<usize>> {
    Ok(ambiguous_reflections(ir)?.s_amb_phi())
}

/// All root systems with the Weyl group, alcove and weight lattice of
/// `ir`, indexed by `I ⊆ S_amb`: `α_s^I = 2α_s^prim` for `s ∈ I` and
/// `α_s^prim` otherwise. Subsets are listed in binary-counter order.
pub fn root_systems_for(ir: &IntegralRootSystem) -> Result<Vec<(Vec<usize>, IntegralRootSystem)>> {
    let report = ambiguous_reflections(ir)?;
    let amb = report.ambiguous();
    let mut out = Vec::with_capacity(1 << amb.len());
    for mask in 0u32..(1u32 << amb.len()) {
        let subset: Vec<usize> = amb.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &s)| s).collect();
        let simple: Vec<AffineFunctional> = report
            .entries
            .iter()
            .map(|e| if subset.contains(&e.index) { e.primitive.scale(&qi(2)) } else { e.primitive.clone() })
            .collect();
        let label = format!("{}[{}]", ir.sys.name, subset.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","));
        let sys = AffineRootSystem::new(label, ir.sys.ip().clone(), ir.sys.space().to_vec(), simple)?;
        out.push((subset, IntegralRootSystem::new(sys, ir.lattice.clone())?));
    }
    Ok(out)
}
