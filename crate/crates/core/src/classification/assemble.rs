use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::ambiguity::s_amb_of;
use super::validate::validate_simple_system;
use super::IntegralRootSystem;
use crate::error::{Error, Result};
use crate::exact::{InnerProduct, Lattice, Q};
use crate::polytope::Polytope;
use crate::roots::system::close_under_reflections;
use crate::roots::{AffineFunctional, AffineRootSystem};

/// Simple roots of a local system `Φ(x)` at one point of `P`; every root
/// vanishes at the point and the simple roots are nonnegative on `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRoots {
    pub point: Vec<Q>,
    pub simple: Vec<AffineFunctional>,
}

/// A local system of roots on the vertices of `P`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LocalRootAssignment {
    pub entries: Vec<LocalRoots>,
}

impl LocalRootAssignment {
    pub fn new(entries: Vec<LocalRoots>) -> Self {
        LocalRootAssignment { entries }
    }

    fn at(&self, x: &[Q]) -> Option<&LocalRoots> {
        self.entries.iter().find(|e| e.point == x)
    }
}

/// The global root system `Φ_M` on the affine span of `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssembledSystem {
    pub integral: IntegralRootSystem,
    /// `S_amb(Φ)` equals the union of the local `S_amb(x)`.
    pub s_amb_union_holds: bool,
}

fn incoherent(why: String) -> Error {
    Error::IncoherentAssignment(why)
}

/// Glues the local systems `Φ(x)` over the vertices of `P` into one affine
/// root system on `aff(P)` and checks that it reproduces every `Φ(x)`,
/// that `P` lies in its alcove and meets each wall, and that `Λ` is a
/// weight lattice for it.
pub fn assemble_global(ip: &InnerProduct, p: &Polytope, assign: &LocalRootAssignment, lattice: &Lattice) -> Result<AssembledSystem> {
    if p.ambient_dim() != ip.dim() {
        return Err(Error::DimensionMismatch { expected: ip.dim(), found: p.ambient_dim() });
    }
    let span = p.affine_span();
    let restrict = |f: &AffineFunctional| f.restrict(ip, span);
    let mut local_roots: Vec<(Vec<Q>, BTreeSet<AffineFunctional>)> = Vec::new();
    for v in p.vertices() {
        let e = assign.at(v).ok_or_else(|| incoherent(format!("no local system at vertex {}", crate::exact::rational::fmt_vec(v))))?;
        let simple: Vec<AffineFunctional> = e.simple.iter().map(restrict).collect();
        for s in &simple {
            if !s.eval(ip, v).is_zero() {
                return Err(incoherent("a local root does not vanish at its point".into()));
            }
            if p.vertices().iter().any(|w| s.eval(ip, w).is_negative()) {
                return Err(incoherent(format!("local simple root {} is negative on P", s.display(ip, &names(ip.dim())))));
            }
        }
        let roots: BTreeSet<AffineFunctional> = close_under_reflections(ip, &simple)?.into_iter().collect();
        for r in &roots {
            let signs: BTreeSet<i8> = p.vertices().iter().map(|w| sign(&r.eval(ip, w))).filter(|&s| s != 0).collect();
            if signs.len() > 1 {
                return Err(incoherent("a local root changes sign on P".into()));
            }
        }
        local_roots.push((v.clone(), roots));
    }
    for (i, j) in p.edges() {
        let (x, rx) = &local_roots[i];
        let (y, ry) = &local_roots[j];
        let at = |rs: &BTreeSet<AffineFunctional>, z: &[Q]| -> BTreeSet<AffineFunctional> { rs.iter().filter(|r| r.eval(ip, z).is_zero()).cloned().collect() };
        if at(rx, y) != at(ry, x) {
            return Err(incoherent("local systems disagree along an edge".into()));
        }
    }
    let mut simple: Vec<AffineFunctional> = Vec::new();
    for (x, _) in &local_roots {
        for s in &assign.at(x).expect("checked").simple {
            let r = restrict(s);
            if !simple.contains(&r) {
                simple.push(r);
            }
        }
    }
    let space = span.equalities();
    validate_simple_system(ip, &space, &simple).map_err(|e| Error::ValidationFailure(e.to_string()))?;
    let sys = AffineRootSystem::new("Phi_M", ip.clone(), space, simple).map_err(|e| Error::ValidationFailure(e.to_string()))?;
    for (x, roots) in &local_roots {
        let local = sys.local_subsystem(x).map_err(|e| Error::ValidationFailure(e.to_string()))?;
        if local.roots.iter().cloned().collect::<BTreeSet<_>>() != *roots {
            return Err(Error::ValidationFailure("assembled system does not reproduce a local system".into()));
        }
    }
    for w in sys.simple_linforms() {
        if !p.meets_wall(&w) {
            return Err(Error::WallNotMet(crate::polytope::format_affine(&w.a, &w.c, &names(ip.dim()))));
        }
    }
    let integral = IntegralRootSystem::new(sys, lattice.clone())?;
    let global: BTreeSet<AffineFunctional> = s_amb_of(&integral)?.into_iter().map(|i| integral.sys.simple_roots()[i].clone()).collect();
    let mut union = BTreeSet::new();
    for (x, _) in &local_roots {
        let local = integral.sys.local_subsystem(x)?;
        if local.simple.is_empty() {
            continue;
        }
        let lsys = AffineRootSystem::new("local", ip.clone(), integral.sys.space().to_vec(), local.simple.clone())?;
        let lir = IntegralRootSystem { sys: lsys, lattice: lattice.clone() };
        for i in s_amb_of(&lir)? {
            union.insert(local.simple[i].clone());
        }
    }
    Ok(AssembledSystem { integral, s_amb_union_holds: union == global })
}

fn sign(q: &Q) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}
