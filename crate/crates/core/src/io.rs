//! Versioned file formats and report serialization. Every rational in a
//! machine-readable output is a `"p/q"` string.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::rational::{fmt_vec, from_qstr, to_qstr, QStr};
use crate::exact::{fmt_q, Lattice, Q};
use crate::polytope::{format_affine, parse_affine, Polytope};
use crate::roots::{build, AffineFunctional, AffineRootSystem, FactorSpec};
use crate::spherical::{IntegralPair, VerificationReport, VertexStatus};

/// `P` given by vertices, or by affine forms with `f = 0` / `f ≥ 0` in
/// the syntax `1/2 - x1 + 2x3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<QStr>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equalities: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inequalities: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeRecord {
    pub basis: Vec<Vec<QStr>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFile {
    pub format: u32,
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
    pub ambient: Vec<FactorSpec>,
    pub polytope: PolytopeRecord,
    pub lattice: LatticeRecord,
}

impl PairFile {
    pub fn from_pair(pair: &IntegralPair, notes: &str) -> PairFile {
        PairFile {
            format: 1,
            name: pair.name.clone(),
            notes: notes.to_string(),
            ambient: pair.factors.clone(),
            polytope: PolytopeRecord { vertices: Some(pair.polytope.vertices().iter().map(|v| to_qstr(v)).collect()), equalities: vec![], inequalities: vec![] },
            lattice: LatticeRecord { basis: pair.lattice.basis().iter().map(|v| to_qstr(v)).collect() },
        }
    }

    pub fn to_pair(&self) -> Result<IntegralPair> {
        if self.format != 1 {
            return Err(Error::Format(format!("unsupported pair format {}", self.format)));
        }
        let ambient = build(&self.ambient)?;
        let n = ambient.dim();
        let polytope = match &self.polytope.vertices {
            Some(vs) => {
                if !self.polytope.equalities.is_empty() || !self.polytope.inequalities.is_empty() {
                    return Err(Error::Format("give either vertices or constraints, not both".into()));
                }
                Polytope::hull(&vs.iter().map(|v| from_qstr(v)).collect::<Vec<_>>())?
            }
            None => {
                let eqs = self.polytope.equalities.iter().map(|s| parse_affine(s, n)).collect::<Result<Vec<_>>>()?;
                let ineqs = self.polytope.inequalities.iter().map(|s| parse_affine(s, n)).collect::<Result<Vec<_>>>()?;
                Polytope::from_constraints(n, &eqs, &ineqs)?
            }
        };
        let basis: Vec<Vec<Q>> = self.lattice.basis.iter().map(|v| from_qstr(v)).collect();
        if let Some(b) = basis.iter().find(|b| b.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: b.len() });
        }
        IntegralPair::new(self.name.clone(), self.ambient.clone(), polytope, Lattice::from_generators(n, &basis))
    }

    pub fn from_toml(s: &str) -> Result<PairFile> {
        toml::from_str(s).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("pair file serializes")
    }
}

pub fn read_pair(s: &str) -> Result<IntegralPair> {
    PairFile::from_toml(s)?.to_pair()
}

fn qv(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(fmt_q(q))).collect())
}

fn qm(m: &[Vec<Q>]) -> Value {
    Value::Array(m.iter().map(|v| qv(v)).collect())
}

fn functional_json(ip: &crate::exact::InnerProduct, f: &AffineFunctional, names: &[String]) -> Value {
    let lf = f.to_linform(ip);
    json!({ "form": format_affine(&lf.a, &lf.c, names), "coefficients": qv(&lf.a), "constant": fmt_q(&lf.c) })
}

/// Simple roots, Cartan matrix, labels and alcove vertices.
pub fn rootsystem_json(sys: &AffineRootSystem) -> Value {
    let names = sys.coordinate_names();
    json!({
        "name": sys.name,
        "type": sys.cartan_type().to_string(),
        "dimension": sys.dim(),
        "simple_roots": sys.simple_roots().iter().map(|f| functional_json(sys.ip(), f, &names)).collect::<Vec<_>>(),
        "cartan": sys.cartan(),
        "labels": sys.labels(),
        "ambient_equalities": sys.space().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "alcove_vertices": sys.alcove().map(|a| qm(a.vertices())),
    })
}

pub fn rootsystem_text(sys: &AffineRootSystem) -> String {
    let mut out = String::new();
    let names = sys.coordinate_names();
    let _ = writeln!(out, "root system {} of type {}", sys.name, sys.cartan_type());
    let _ = writeln!(out, "coordinates: {}", names.join(", "));
    for f in sys.space() {
        let _ = writeln!(out, "subspace: {f} = 0");
    }
    let _ = writeln!(out, "simple roots:");
    for (i, f) in sys.simple_roots().iter().enumerate() {
        let _ = writeln!(out, "  a{i} = {}", f.display(sys.ip(), &names));
    }
    let _ = writeln!(out, "labels: {:?}", sys.labels());
    let _ = writeln!(out, "cartan matrix:");
    for row in sys.cartan() {
        let _ = writeln!(out, "  {}", row.iter().map(|x| format!("{x:>2}")).collect::<Vec<_>>().join(" "));
    }
    if let Some(a) = sys.alcove() {
        let _ = writeln!(out, "alcove vertices:");
        for v in a.vertices() {
            let _ = writeln!(out, "  {}", fmt_vec(v));
        }
    }
    out
}

pub fn report_json(pair: &IntegralPair, r: &VerificationReport) -> Value {
    let ip = pair.ip();
    let names = pair.ambient.coordinate_names();
    let vertices: Vec<Value> = r
        .vertices
        .iter()
        .map(|v| {
            json!({
                "vertex": qv(&v.vertex),
                "centralizer": v.centralizer.to_string(),
                "local_simple_roots": v.local_simple.iter().map(|f| f.display(ip, &names)).collect::<Vec<_>>(),
                "hilbert_basis": v.monoid.hilbert_basis.as_ref().map(|h| qm(h)),
                "status": match &v.status { VertexStatus::Verified(_) => "Verified", VertexStatus::Unverified => "Unverified" },
                "witness": v.witness(),
                "matches": v.matches,
                "spherical_roots": v.spherical_roots.as_ref().map(|rs| rs.iter().map(|f| f.display(ip, &names)).collect::<Vec<_>>()),
                "notes": v.notes,
            })
        })
        .collect();
    json!({
        "pair": r.pair,
        "ambient": r.ambient_type.to_string(),
        "overall": r.overall.to_string(),
        "rank": r.rank,
        "lattice": qm(r.lattice.basis()),
        "dual_lattice": qm(r.dual_lattice.basis()),
        "vertices": vertices,
        "phi_m": r.phi_m.as_ref().map(|p| json!({
            "type": p.cartan_type.to_string(),
            "simple_roots": p.display,
            "s_amb_union_holds": p.s_amb_union_holds,
        })),
        "notes": r.notes,
    })
}

pub fn report_text(pair: &IntegralPair, r: &VerificationReport) -> String {
    let ip = pair.ip();
    let names = pair.ambient.coordinate_names();
    let mut out = String::new();
    let _ = writeln!(out, "pair {} in {} (rank {})", r.pair, r.ambient_type, r.rank);
    let basis = |l: &Lattice| l.basis().iter().map(|b| fmt_vec(b)).collect::<Vec<_>>().join(", ");
    let _ = writeln!(out, "lattice: {}", basis(&r.lattice));
    let _ = writeln!(out, "dual lattice: {}", basis(&r.dual_lattice));
    for v in &r.vertices {
        let _ = writeln!(out, "vertex {}: centralizer {}", fmt_vec(&v.vertex), v.centralizer);
        let roots: Vec<String> = v.local_simple.iter().map(|f| f.display(ip, &names)).collect();
        let _ = writeln!(out, "  local simple roots: {}", if roots.is_empty() { "none".to_string() } else { roots.join(", ") });
        match &v.monoid.hilbert_basis {
            Some(h) => {
                let _ = writeln!(out, "  monoid generators: {}", h.iter().map(|x| fmt_vec(x)).collect::<Vec<_>>().join(", "));
            }
            None => {
                let _ = writeln!(out, "  monoid generators: not computed");
            }
        }
        match &v.status {
            VertexStatus::Verified(name) => {
                let _ = writeln!(out, "  Verified: {name}");
            }
            VertexStatus::Unverified => {
                let _ = writeln!(out, "  Unverified");
            }
        }
        if v.matches.len() > 1 {
            let _ = writeln!(out, "  also matches: {}", v.matches[1..].join("; "));
        }
        if let Some(rs) = &v.spherical_roots {
            let shown: Vec<String> = rs.iter().map(|f| f.display(ip, &names)).collect();
            let _ = writeln!(out, "  spherical roots: {}", if shown.is_empty() { "none".to_string() } else { shown.join(", ") });
        }
        for n in &v.notes {
            let _ = writeln!(out, "  note: {n}");
        }
    }
    if let Some(p) = &r.phi_m {
        let _ = writeln!(out, "Phi_M of type {}: {}", p.cartan_type, if p.display.is_empty() { "no roots".to_string() } else { p.display.join(", ") });
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "overall: {}", r.overall);
    out
}
