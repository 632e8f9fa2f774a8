use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::linalg::Mat;
use crate::exact::rational::{from_qstr, QStr};
use crate::exact::{Lattice, Q};
use crate::polytope::hilbert::hilbert_basis;
use crate::polytope::Cone;
use crate::roots::cartan::{product_cartan, CartanMatrix};
use crate::roots::CartanType;

/// Upper bound on the candidate box scanned for a Hilbert basis.
pub const HILBERT_CAP: usize = 200_000;

const SHIPPED: &str = include_str!("../../data/catalog.toml");

/// One local model as stored on disk. Vectors live in the catalog frame:
/// pairings with the simple coroots of `centralizer` in its written order,
/// followed by `central_rank` central coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelRecord {
    pub name: String,
    pub centralizer: String,
    #[serde(default)]
    pub central_rank: usize,
    pub lattice: Vec<Vec<QStr>>,
    pub cone: Vec<Vec<QStr>>,
    /// Coefficients over the centralizer's simple roots; `None` when the
    /// model carries no spherical-root data.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spherical_roots: Option<Vec<Vec<u32>>>,
    /// Lattice of coroot pairings of the ambient weight lattice the model
    /// requires (distinguishes e.g. `SL(2)` from `SO(3)`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_pairings: Option<Vec<Vec<QStr>>>,
    #[serde(default)]
    pub provenance: String,
}

/// A statement that the listed models exhaust the smooth ones for a
/// centralizer, central rank and monoid rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompleteRecord {
    pub centralizer: String,
    #[serde(default)]
    pub central_rank: usize,
    pub rank: usize,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub format: u32,
    #[serde(default)]
    pub model: Vec<ModelRecord>,
    #[serde(default)]
    pub complete: Vec<CompleteRecord>,
}

/// A validated model with its monoid and Hilbert basis precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalModelEntry {
    pub record: ModelRecord,
    pub centralizer: CartanType,
    pub cartan: CartanMatrix,
    /// Semisimple rank `r`.
    pub rank: usize,
    /// Central rank `c`; vectors have length `r + c`.
    pub central_rank: usize,
    pub lattice: Lattice,
    pub cone: Cone,
    /// Sorted.
    pub hilbert_basis: Vec<Vec<Q>>,
    pub weight_pairings: Option<Lattice>,
}

impl LocalModelEntry {
    pub fn name(&self) -> &str {
        &self.record.name
    }

    pub fn from_record(record: ModelRecord) -> Result<Self> {
        let bad = |reason: String| Error::CatalogInvalid { name: record.name.clone(), reason };
        let centralizer: CartanType = record.centralizer.parse().map_err(|e: Error| bad(e.to_string()))?;
        if centralizer.factors.iter().any(|f| f.is_affine()) {
            return Err(bad("centralizer must be of finite type".into()));
        }
        let cartan = product_cartan(&centralizer);
        let r = cartan.len();
        let c = record.central_rank;
        let n = r + c;
        let lat: Mat = record.lattice.iter().map(|v| from_qstr(v)).collect();
        let gens: Mat = record.cone.iter().map(|v| from_qstr(v)).collect();
        if lat.iter().chain(&gens).any(|v| v.len() != n) {
            return Err(bad(format!("vectors must have length {n}")));
        }
        let lattice = Lattice::from_generators(n, &lat);
        let cone = Cone::from_generators(n, &gens);
        if !cone.is_pointed() {
            return Err(bad("cone is not pointed".into()));
        }
        if cone.span_dim() != lattice.rank() || gens.iter().any(|g| !lattice.in_span(g)) {
            return Err(bad("cone does not span the lattice".into()));
        }
        if gens.iter().any(|g| g[..r].iter().any(|x| x.is_negative())) {
            return Err(bad("cone leaves the dominant chamber".into()));
        }
        if let Some(roots) = &record.spherical_roots {
            if roots.iter().any(|v| v.len() != r) {
                return Err(bad(format!("spherical roots must have {r} coefficients")));
            }
        }
        let weight_pairings = match &record.weight_pairings {
            None => None,
            Some(w) => {
                let rows: Mat = w.iter().map(|v| from_qstr(v)).collect();
                if rows.iter().any(|v| v.len() != r) {
                    return Err(bad(format!("weight pairings must have length {r}")));
                }
                Some(Lattice::from_generators(r, &rows))
            }
        };
        let mut hb = hilbert_basis(&cone, &lattice, HILBERT_CAP).ok_or_else(|| bad("Hilbert basis too large".into()))?;
        hb.sort();
        Ok(LocalModelEntry { centralizer, cartan, rank: r, central_rank: c, lattice, cone, hilbert_basis: hb, weight_pairings, record })
    }
}

/// An ordered list of local models; the first match wins.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Catalog {
    pub entries: Vec<LocalModelEntry>,
    pub complete: Vec<CompleteRecord>,
}

impl Catalog {
    /// The catalog embedded in the library.
    pub fn shipped() -> Catalog {
        Catalog::from_toml(SHIPPED).expect("shipped catalog is valid")
    }

    pub fn empty() -> Catalog {
        Catalog::default()
    }

    pub fn from_file(file: CatalogFile) -> Result<Catalog> {
        if file.format != 1 {
            return Err(Error::Format(format!("unsupported catalog format {}", file.format)));
        }
        let entries = file.model.into_iter().map(LocalModelEntry::from_record).collect::<Result<Vec<_>>>()?;
        Ok(Catalog { entries, complete: file.complete })
    }

    pub fn from_toml(s: &str) -> Result<Catalog> {
        let file: CatalogFile = toml::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        Catalog::from_file(file)
    }

    pub fn to_file(&self) -> CatalogFile {
        CatalogFile { format: 1, model: self.entries.iter().map(|e| e.record.clone()).collect(), complete: self.complete.clone() }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_file()).expect("catalog serializes")
    }

    pub fn get(&self, name: &str) -> Option<&LocalModelEntry> {
        self.entries.iter().find(|e| e.name() == name)
    }

    /// The same catalog with the named models removed.
    pub fn without(&self, names: &[&str]) -> Catalog {
        Catalog { entries: self.entries.iter().filter(|e| !names.contains(&e.name())).cloned().collect(), complete: self.complete.clone() }
    }

    /// Completeness note for a centralizer type (compared up to factor
    /// order), central rank and monoid rank.
    pub fn completeness_note(&self, centralizer: &CartanType, central_rank: usize, rank: usize) -> Option<&str> {
        let canon = CartanType::canonical(centralizer.factors.clone());
        self.complete
            .iter()
            .find(|c| {
                c.central_rank == central_rank
                    && c.rank == rank
                    && c.centralizer.parse::<CartanType>().is_ok_and(|t| CartanType::canonical(t.factors) == canon)
            })
            .map(|c| c.note.as_str())
    }
}
