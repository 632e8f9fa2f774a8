use num_traits::Zero;

use super::catalog::{Catalog, LocalModelEntry, HILBERT_CAP};
use crate::classification::{assemble_global, LocalRootAssignment, LocalRoots};
use crate::error::{Error, Result};
use crate::exact::ip::orthogonal_complement_within;
use crate::exact::linalg::{self, Mat};
use crate::exact::rational::fmt_vec;
use crate::exact::{InnerProduct, Lattice, Q};
use crate::polytope::{cone_equal, hilbert_basis, AffineSpan, Cone, Polytope};
use crate::roots::cartan::isomorphisms;
use crate::roots::{build, AffineFunctional, AffineRootSystem, CartanType, FactorSpec, FiniteSubsystem};

/// A polytope `P` in the alcove of an ambient affine root system together
/// with a lattice `Λ` of full rank in the translation space of `aff(P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralPair {
    pub name: String,
    pub factors: Vec<FactorSpec>,
    pub ambient: AffineRootSystem,
    pub polytope: Polytope,
    pub lattice: Lattice,
}

fn invalid(why: impl Into<String>) -> Error {
    Error::PairInvalid(why.into())
}

impl IntegralPair {
    pub fn new(name: impl Into<String>, factors: Vec<FactorSpec>, polytope: Polytope, lattice: Lattice) -> Result<Self> {
        let ambient = build(&factors)?;
        let name = name.into();
        let n = ambient.dim();
        if polytope.ambient_dim() != n {
            return Err(invalid(format!("polytope lives in dimension {}, ambient in {n}", polytope.ambient_dim())));
        }
        if lattice.dim() != n {
            return Err(invalid(format!("lattice lives in dimension {}, ambient in {n}", lattice.dim())));
        }
        for v in polytope.vertices() {
            if !ambient.in_alcove(v) {
                let why = match ambient.violated_wall(v) {
                    Some(i) => format!("vertex {} violates the wall {} >= 0", fmt_vec(v), ambient.display_root(&ambient.simple_roots()[i])),
                    None => format!("vertex {} is off the ambient subspace", fmt_vec(v)),
                };
                return Err(invalid(format!("P is not contained in the alcove: {why}")));
            }
        }
        let dirs = &polytope.affine_span().directions;
        if lattice.basis().iter().any(|b| !linalg::in_span(dirs, b)) {
            return Err(invalid("lattice is not contained in the translation space of aff(P)"));
        }
        if lattice.rank() != polytope.dim() {
            return Err(invalid(format!("lattice has rank {}, P has dimension {}", lattice.rank(), polytope.dim())));
        }
        if !lattice.is_sublattice_of(&ambient.weight_lattice()) {
            return Err(invalid("lattice is not contained in the ambient weight lattice"));
        }
        Ok(IntegralPair { name, factors, ambient, polytope, lattice })
    }

    pub fn ip(&self) -> &InnerProduct {
        self.ambient.ip()
    }

    /// `dim P`, which is also the rank of `Λ`.
    pub fn rank(&self) -> usize {
        self.polytope.dim()
    }
}

/// The monoid `C_x P ∩ Λ` at a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMonoid {
    pub cone: Cone,
    pub lattice: Lattice,
    /// Sorted; `None` when the candidate box exceeds the cap.
    pub hilbert_basis: Option<Vec<Vec<Q>>>,
}

pub fn weight_monoid_at(pair: &IntegralPair, x: &[Q]) -> Result<WeightMonoid> {
    if !pair.polytope.is_vertex(x) {
        return Err(Error::NotAVertex);
    }
    let cone = pair.polytope.tangent_cone(x)?;
    let hilbert_basis = hilbert_basis(&cone, &pair.lattice, HILBERT_CAP).map(|mut h| {
        h.sort();
        h
    });
    Ok(WeightMonoid { cone, lattice: pair.lattice.clone(), hilbert_basis })
}

/// Equality of monoids `cone ∩ lattice` in the same coordinates.
pub fn monoid_equal(a: &WeightMonoid, b: &WeightMonoid) -> bool {
    cone_equal(&a.cone, &b.cone) && a.lattice == b.lattice
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexStatus {
    Verified(String),
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexRecord {
    pub vertex: Vec<Q>,
    pub centralizer: CartanType,
    pub local_simple: Vec<AffineFunctional>,
    pub monoid: WeightMonoid,
    pub status: VertexStatus,
    /// Every catalog model that matches, in catalog order.
    pub matches: Vec<String>,
    /// Local spherical roots of the witness restricted to `aff(P)`, when
    /// the witness carries root data.
    pub spherical_roots: Option<Vec<AffineFunctional>>,
    pub notes: Vec<String>,
}

impl VertexRecord {
    pub fn witness(&self) -> Option<&str> {
        match &self.status {
            VertexStatus::Verified(n) => Some(n),
            VertexStatus::Unverified => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Overall {
    Spherical,
    Inconclusive,
}

impl std::fmt::Display for Overall {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Overall::Spherical => write!(f, "Spherical"),
            Overall::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

/// The assembled global root system `Φ_M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiM {
    pub simple: Vec<AffineFunctional>,
    pub display: Vec<String>,
    pub cartan_type: CartanType,
    pub s_amb_union_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub pair: String,
    pub ambient_type: CartanType,
    pub rank: usize,
    pub lattice: Lattice,
    pub dual_lattice: Lattice,
    pub vertices: Vec<VertexRecord>,
    pub overall: Overall,
    pub phi_m: Option<PhiM>,
    pub notes: Vec<String>,
}

/// Coordinates at a vertex: pairings with the local simple coroots,
/// followed by pairings with a basis of `{v ∈ aff(P) direction : v ⟂ coroots}`.
struct VertexFrame {
    local: FiniteSubsystem,
    coroots: Mat,
    central: Mat,
}

impl VertexFrame {
    fn new(pair: &IntegralPair, x: &[Q]) -> Result<Self> {
        let ip = pair.ip();
        let local = pair.ambient.local_subsystem(x)?;
        let coroots: Mat = local.simple.iter().map(|s| s.coroot(ip)).collect::<Result<_>>()?;
        let central = orthogonal_complement_within(&coroots, &pair.polytope.affine_span().directions, ip);
        Ok(VertexFrame { local, coroots, central })
    }

    fn rank(&self) -> usize {
        self.coroots.len()
    }

    fn central_rank(&self) -> usize {
        self.central.len()
    }

    fn pi(&self, ip: &InnerProduct, v: &[Q], sigma: &[usize]) -> Vec<Q> {
        let mut out = linalg::zeros(self.rank());
        for (i, cr) in self.coroots.iter().enumerate() {
            out[sigma[i]] = ip.ip(v, cr);
        }
        out
    }

    fn phi(&self, ip: &InnerProduct, v: &[Q], sigma: &[usize]) -> Vec<Q> {
        let mut out = self.pi(ip, v, sigma);
        out.extend(self.central.iter().map(|u| ip.ip(v, u)));
        out
    }
}

/// Whether some `diag(I, A)` with `A ∈ GL_c(Q)` maps `h` onto `target`
/// (both sorted, first `r` coordinates fixed).
fn central_match(h: &[Vec<Q>], target: &[Vec<Q>], r: usize, c: usize) -> bool {
    if h.len() != target.len() {
        return false;
    }
    let z = |v: &Vec<Q>| v[r..].to_vec();
    let mut pick: Vec<usize> = Vec::new();
    let mut rows: Mat = Vec::new();
    for (i, v) in h.iter().enumerate() {
        let mut trial = rows.clone();
        trial.push(z(v));
        if linalg::rank(&trial, c) > rows.len() {
            rows = trial;
            pick.push(i);
        }
        if rows.len() == c {
            break;
        }
    }
    if rows.len() != c {
        return false;
    }
    let inv = match linalg::inverse(&rows) {
        Some(m) => m,
        None => return false,
    };
    fn rec(k: usize, pick: &[usize], h: &[Vec<Q>], target: &[Vec<Q>], r: usize, c: usize, inv: &Mat, chosen: &mut Vec<usize>) -> bool {
        if k == pick.len() {
            let img: Mat = chosen.iter().map(|&j| target[j][r..].to_vec()).collect();
            if linalg::inverse(&img).is_none() {
                return false;
            }
            // rows · Aᵀ = img
            let at = linalg::mat_mul(inv, &img, c);
            let mut mapped: Vec<Vec<Q>> = h
                .iter()
                .map(|v| {
                    let mut w = v[..r].to_vec();
                    w.extend(linalg::vec_mat(&v[r..], &at, c));
                    w
                })
                .collect();
            mapped.sort();
            return mapped == target;
        }
        let src = &h[pick[k]];
        for j in 0..target.len() {
            if chosen.contains(&j) || target[j][..r] != src[..r] {
                continue;
            }
            chosen.push(j);
            if rec(k + 1, pick, h, target, r, c, inv, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    rec(0, &pick, h, target, r, c, &inv, &mut Vec::new())
}

/// The first diagram isomorphism under which the vertex monoid becomes
/// the model monoid.
fn match_entry(pair: &IntegralPair, frame: &VertexFrame, hb: &[Vec<Q>], weights: &Lattice, entry: &LocalModelEntry) -> Option<Vec<usize>> {
    let (r, c) = (frame.rank(), frame.central_rank());
    if entry.rank != r || entry.central_rank != c || entry.hilbert_basis.len() != hb.len() || entry.lattice.rank() != pair.lattice.rank() {
        return None;
    }
    let ip = pair.ip();
    for sigma in isomorphisms(&frame.local.cartan, &entry.cartan) {
        if let Some(wp) = &entry.weight_pairings {
            if weights.map(r, |b| frame.pi(ip, b, &sigma)) != *wp {
                continue;
            }
        }
        let mut h: Vec<Vec<Q>> = hb.iter().map(|v| frame.phi(ip, v, &sigma)).collect();
        h.sort();
        let ok = if c == 0 { h == entry.hilbert_basis } else { central_match(&h, &entry.hilbert_basis, r, c) };
        if ok {
            return Some(sigma);
        }
    }
    None
}

/// A local spherical root restricted to `aff(P)`; it must stay nonconstant.
pub fn restrict_root(ip: &InnerProduct, span: &AffineSpan, f: &AffineFunctional) -> std::result::Result<AffineFunctional, String> {
    let g = f.restrict(ip, span);
    if g.is_constant() {
        return Err("a spherical root is constant on aff(P)".into());
    }
    Ok(g)
}

/// Verifies one vertex against the catalog.
pub fn check_vertex(pair: &IntegralPair, x: &[Q], catalog: &Catalog) -> Result<VertexRecord> {
    let monoid = weight_monoid_at(pair, x)?;
    let frame = VertexFrame::new(pair, x)?;
    let mut notes = Vec::new();
    let mut matches = Vec::new();
    let mut first: Option<(&LocalModelEntry, Vec<usize>)> = None;
    match &monoid.hilbert_basis {
        None => notes.push("Hilbert basis too large".to_string()),
        Some(hb) => {
            let weights = pair.ambient.weight_lattice();
            for entry in &catalog.entries {
                if let Some(sigma) = match_entry(pair, &frame, hb, &weights, entry) {
                    matches.push(entry.name().to_string());
                    if first.is_none() {
                        first = Some((entry, sigma));
                    }
                }
            }
        }
    }
    let ip = pair.ip();
    let (status, spherical_roots) = match first {
        None => {
            if let Some(note) = catalog.completeness_note(&frame.local.cartan_type, frame.central_rank(), pair.rank()) {
                notes.push(note.to_string());
            }
            (VertexStatus::Unverified, None)
        }
        Some((entry, sigma)) => {
            let roots = entry.record.spherical_roots.as_ref().and_then(|list| {
                let mut inv = vec![0; sigma.len()];
                for (i, &s) in sigma.iter().enumerate() {
                    inv[s] = i;
                }
                let mut out = Vec::new();
                for coeffs in list {
                    let mut f = AffineFunctional::new(linalg::zeros(ip.dim()), Q::zero());
                    for (j, &k) in coeffs.iter().enumerate() {
                        f = f.add(&frame.local.simple[inv[j]].scale(&Q::from_integer(k.into())));
                    }
                    match restrict_root(ip, pair.polytope.affine_span(), &f) {
                        Ok(g) => out.push(g),
                        Err(why) => {
                            notes.push(why);
                            return None;
                        }
                    }
                }
                out.sort();
                Some(out)
            });
            (VertexStatus::Verified(entry.name().to_string()), roots)
        }
    };
    Ok(VertexRecord {
        vertex: x.to_vec(),
        centralizer: frame.local.cartan_type.clone(),
        local_simple: frame.local.simple.clone(),
        monoid,
        status,
        matches,
        spherical_roots,
        notes,
    })
}

/// Checks every vertex of `P`; when all are verified with root data the
/// local roots are glued into `Φ_M`.
pub fn check_pair(pair: &IntegralPair, catalog: &Catalog) -> Result<VerificationReport> {
    let vertices = pair.polytope.vertices().iter().map(|v| check_vertex(pair, v, catalog)).collect::<Result<Vec<_>>>()?;
    let mut notes = Vec::new();
    let all_verified = vertices.iter().all(|v| v.witness().is_some());
    let mut overall = if all_verified { Overall::Spherical } else { Overall::Inconclusive };
    let mut phi_m = None;
    if all_verified {
        if vertices.iter().all(|v| v.spherical_roots.is_some()) {
            let entries = vertices.iter().map(|v| LocalRoots { point: v.vertex.clone(), simple: v.spherical_roots.clone().expect("checked") }).collect();
            match assemble_global(pair.ip(), &pair.polytope, &LocalRootAssignment::new(entries), &pair.lattice) {
                Ok(a) => {
                    let sys = &a.integral.sys;
                    let names = pair.ambient.coordinate_names();
                    phi_m = Some(PhiM {
                        simple: sys.simple_roots().to_vec(),
                        display: sys.simple_roots().iter().map(|f| f.display(pair.ip(), &names)).collect(),
                        cartan_type: sys.cartan_type(),
                        s_amb_union_holds: a.s_amb_union_holds,
                    });
                }
                Err(e) => {
                    overall = Overall::Inconclusive;
                    notes.push(format!("local spherical roots do not assemble: {e}"));
                }
            }
        } else {
            notes.push("some witness carries no spherical-root data; Φ_M not assembled".to_string());
        }
    }
    Ok(VerificationReport {
        pair: pair.name.clone(),
        ambient_type: pair.ambient.cartan_type(),
        rank: pair.rank(),
        lattice: pair.lattice.clone(),
        dual_lattice: pair.lattice.dual(pair.ip()),
        vertices,
        overall,
        phi_m,
        notes,
    })
}
