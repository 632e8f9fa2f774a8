use serde::Serialize;

use super::ambiguity::ambiguous_reflections;
use super::IntegralRootSystem;
use crate::exact::Lattice;
use crate::roots::cartan::{self, ComponentType, Family};

/// Irreducible systems of the form `Φ_∅` (all roots primitive, at least
/// one ambiguous reflection), with the ambiguous nodes starred. Node
/// numbering is that of the model diagram of the type (`α₀` first for
/// affine types).
#[derive(Debug, Clone)]
pub struct P2Row {
    pub row: &'static str,
    pub min_rank: usize,
    pub max_rank: Option<usize>,
    pub ty: fn(usize) -> ComponentType,
    pub starred: fn(usize) -> Vec<usize>,
}

/// The table as embedded data.
pub fn p2_table() -> Vec<P2Row> {
    vec![
        P2Row { row: "A1", min_rank: 1, max_rank: Some(1), ty: |rank| ComponentType::Finite { family: Family::A, rank }, starred: |_| vec![0] },
        P2Row { row: "Bn", min_rank: 2, max_rank: None, ty: |rank| ComponentType::Finite { family: Family::B, rank }, starred: |n| vec![n - 1] },
        P2Row {
            row: "A1^(1)",
            min_rank: 1,
            max_rank: Some(1),
            ty: |n| ComponentType::Affine { family: Family::A, rank: n, twist: 1 },
            starred: |_| vec![0, 1],
        },
        P2Row {
            row: "B2^(1)",
            min_rank: 2,
            max_rank: Some(2),
            ty: |n| ComponentType::Affine { family: Family::B, rank: n, twist: 1 },
            starred: |_| vec![2],
        },
        P2Row {
            row: "Bn^(1)",
            min_rank: 3,
            max_rank: None,
            ty: |n| ComponentType::Affine { family: Family::B, rank: n, twist: 1 },
            starred: |n| vec![n],
        },
        P2Row {
            row: "D(n+1)^(2)",
            min_rank: 2,
            max_rank: None,
            ty: |n| ComponentType::Affine { family: Family::D, rank: n + 1, twist: 2 },
            starred: |n| vec![0, n],
        },
    ]
}

/// Rank parameter `n` of a type as used by the table rows.
fn row_rank(t: &ComponentType) -> usize {
    match *t {
        ComponentType::Finite { rank, .. } => rank,
        ComponentType::Affine { family: Family::D, rank, twist: 2 } => rank - 1,
        ComponentType::Affine { rank, .. } => rank,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum P2Outcome {
    /// Table row name and the starred nodes in the system's own numbering.
    Row { row: String, starred: Vec<usize> },
    NotInTable(String),
}

/// Whether `Φ = Φ_∅` for its `(W, Λ)` with `S_amb ≠ ∅`, and if so which
/// table row it is. Also requires `Λ = ⟨ᾱ_s^prim⟩_Z`.
pub fn phi_empty_classify(ir: &IntegralRootSystem) -> P2Outcome {
    let not = |why: &str| P2Outcome::NotInTable(why.to_string());
    if ir.sys.components().len() != 1 {
        return not("reducible");
    }
    let report = match ambiguous_reflections(ir) {
        Ok(r) => r,
        Err(e) => return not(&e.to_string()),
    };
    if !report.s_amb_phi().is_empty() {
        return not("some root is twice its primitive root");
    }
    let amb = report.ambiguous();
    if amb.is_empty() {
        return not("no ambiguous reflection");
    }
    let t = ir.sys.component_types()[0];
    let n = row_rank(&t);
    let Some(row) = p2_table().into_iter().find(|r| n >= r.min_rank && r.max_rank.is_none_or(|m| n <= m) && (r.ty)(n) == t) else {
        return not(&format!("type {t} has no table row"));
    };
    let model_stars = (row.starred)(n);
    // σ maps system nodes to model nodes.
    let matches = cartan::isomorphisms(ir.sys.cartan(), &cartan::model_cartan(&t)).into_iter().any(|sigma| {
        let mut img: Vec<usize> = amb.iter().map(|&s| sigma[s]).collect();
        img.sort_unstable();
        img == model_stars
    });
    if !matches {
        return not("ambiguous nodes differ from the starred nodes");
    }
    let prim: Vec<_> = report.entries.iter().map(|e| e.primitive.gradient.clone()).collect();
    if Lattice::from_generators(ir.sys.dim(), &prim) != ir.lattice {
        return not("lattice is not generated by the primitive roots");
    }
    P2Outcome::Row { row: row.row.to_string(), starred: amb }
}
