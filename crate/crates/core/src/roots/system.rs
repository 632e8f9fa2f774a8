use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::cartan::{self, CartanMatrix, CartanType, ComponentType};
use super::functional::AffineFunctional;
use crate::error::{Error, Result};
use crate::exact::linalg::{self, Mat};
use crate::exact::{InnerProduct, Lattice, Q};
use crate::polytope::{LinForm, Polytope};

/// An affine root system given by its simple roots on an affine subspace
/// `{space = 0}` of `Q^n`, with the metric `ip`.
///
/// Invariants: simple gradients lie in the translation space; Cartan
/// integers are integral and `≤ 0` off the diagonal; every connected
/// component is a recognized finite or affine diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineRootSystem {
    pub name: String,
    dim: usize,
    ip: InnerProduct,
    space: Vec<LinForm>,
    simple: Vec<AffineFunctional>,
    cartan: CartanMatrix,
    components: Vec<Vec<usize>>,
    types: Vec<ComponentType>,
    labels: Vec<Vec<i64>>,
    #[serde(skip)]
    alcove: Option<Polytope>,
}

/// The finite root system `Φ_x = {α ∈ Φ : α(x) = 0}` at an alcove point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSubsystem {
    pub base_point: Vec<Q>,
    /// Indices into the ambient simple roots of the walls through `x`.
    pub simple_indices: Vec<usize>,
    pub simple: Vec<AffineFunctional>,
    /// All roots, positive and negative, sorted.
    pub roots: Vec<AffineFunctional>,
    pub cartan: CartanMatrix,
    pub cartan_type: CartanType,
}

impl FiniteSubsystem {
    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    /// Roots that are nonnegative combinations of the simple roots.
    pub fn positive_roots(&self) -> Vec<AffineFunctional> {
        let grads: Mat = self.simple.iter().map(|s| s.gradient.clone()).collect();
        self.roots
            .iter()
            .filter(|r| {
                let c = linalg::coordinates(&grads, &r.gradient).expect("root in span of simple roots");
                c.iter().all(|v| !v.is_negative())
            })
            .cloned()
            .collect()
    }
}

impl AffineRootSystem {
    pub fn new(name: impl Into<String>, ip: InnerProduct, space: Vec<LinForm>, simple: Vec<AffineFunctional>) -> Result<Self> {
        let dim = ip.dim();
        for f in &space {
            if f.a.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: f.a.len() });
            }
        }
        for s in &simple {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: s.dim() });
            }
            s.require_nonconstant()?;
            if space.iter().any(|f| !linalg::dot(&f.a, &s.gradient).is_zero()) {
                return Err(Error::InvalidType("simple root gradient leaves the translation space".into()));
            }
        }
        let gram = ip.gram_of(&simple.iter().map(|s| s.gradient.clone()).collect::<Vec<_>>());
        let c = cartan::cartan_from_gram(&gram)?;
        for i in 0..c.len() {
            for j in 0..c.len() {
                if i != j && c[i][j] > 0 {
                    return Err(Error::InvalidType(format!("positive Cartan entry at ({i}, {j})")));
                }
            }
        }
        let components = cartan::components(&c);
        let mut types = Vec::new();
        let mut labels = Vec::new();
        for comp in &components {
            let sub = cartan::submatrix(&c, comp);
            let (t, _) = cartan::identify_component(&sub).ok_or_else(|| Error::InvalidType(format!("unrecognized diagram {sub:?}")))?;
            labels.push(if t.is_affine() { cartan::cartan_labels(&sub).expect("affine diagram has labels") } else { Vec::new() });
            types.push(t);
        }
        let ineqs: Vec<LinForm> = simple.iter().map(|s| s.to_linform(&ip)).collect();
        let alcove = match Polytope::from_constraints(dim, &space, &ineqs) {
            Ok(p) => Some(p),
            Err(Error::Unbounded) => None,
            Err(e) => return Err(e),
        };
        Ok(AffineRootSystem { name: name.into(), dim, ip, space, simple, cartan: c, components, types, labels, alcove })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ip(&self) -> &InnerProduct {
        &self.ip
    }

    /// Equalities cutting out the ambient affine subspace.
    pub fn space(&self) -> &[LinForm] {
        &self.space
    }

    pub fn simple_roots(&self) -> &[AffineFunctional] {
        &self.simple
    }

    pub fn simple_linforms(&self) -> Vec<LinForm> {
        self.simple.iter().map(|s| s.to_linform(&self.ip)).collect()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    /// Connected components of the diagram (sorted node indices).
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_types(&self) -> &[ComponentType] {
        &self.types
    }

    pub fn cartan_type(&self) -> CartanType {
        CartanType::canonical(self.types.clone())
    }

    /// Labels per component, aligned with `components()`; empty for
    /// finite components.
    pub fn component_labels(&self) -> &[Vec<i64>] {
        &self.labels
    }

    /// Labels indexed by simple root (0 on finite components).
    pub fn labels(&self) -> Vec<i64> {
        let mut out = vec![0; self.simple.len()];
        for (comp, ls) in self.components.iter().zip(&self.labels) {
            for (k, &i) in comp.iter().enumerate() {
                out[i] = ls.get(k).copied().unwrap_or(0);
            }
        }
        out
    }

    pub fn is_affine(&self) -> bool {
        !self.types.is_empty() && self.types.iter().all(ComponentType::is_affine)
    }

    /// The alcove when it is bounded.
    pub fn alcove(&self) -> Option<&Polytope> {
        self.alcove.as_ref()
    }

    pub fn in_space(&self, x: &[Q]) -> bool {
        x.len() == self.dim && self.space.iter().all(|f| f.eval(x).is_zero())
    }

    pub fn in_alcove(&self, x: &[Q]) -> bool {
        self.in_space(x) && self.simple.iter().all(|s| !s.eval(&self.ip, x).is_negative())
    }

    /// First violated wall, for error messages.
    pub fn violated_wall(&self, x: &[Q]) -> Option<usize> {
        self.simple.iter().position(|s| s.eval(&self.ip, x).is_negative())
    }

    pub fn coordinate_names(&self) -> Vec<String> {
        (1..=self.dim).map(|i| format!("x{i}")).collect()
    }

    pub fn display_root(&self, f: &AffineFunctional) -> String {
        f.display(&self.ip, &self.coordinate_names())
    }

    /// `Φ_x` with simple roots the alcove walls through `x`.
    pub fn local_subsystem(&self, x: &[Q]) -> Result<FiniteSubsystem> {
        if !self.in_alcove(x) {
            let why = match self.violated_wall(x) {
                Some(i) => format!("wall {} is negative at the point", self.display_root(&self.simple[i])),
                None => "point is off the ambient subspace".to_string(),
            };
            return Err(Error::OutsideAlcove(why));
        }
        let simple_indices: Vec<usize> = (0..self.simple.len()).filter(|&i| self.simple[i].eval(&self.ip, x).is_zero()).collect();
        let simple: Vec<AffineFunctional> = simple_indices.iter().map(|&i| self.simple[i].clone()).collect();
        let roots = close_under_reflections(&self.ip, &simple)?;
        let cartan = cartan::submatrix(&self.cartan, &simple_indices);
        let cartan_type = cartan::identify(&cartan)?;
        Ok(FiniteSubsystem { base_point: x.to_vec(), simple_indices, simple, roots, cartan, cartan_type })
    }

    /// `ZΦ̄`, generated by the simple gradients.
    pub fn root_lattice(&self) -> Lattice {
        Lattice::from_generators(self.dim, &self.simple.iter().map(|s| s.gradient.clone()).collect::<Vec<_>>())
    }

    /// `ZΦ̄^∨`.
    pub fn coroot_lattice(&self) -> Lattice {
        let gens: Vec<Vec<Q>> = self.simple.iter().map(|s| s.coroot(&self.ip).expect("nonconstant")).collect();
        Lattice::from_generators(self.dim, &gens)
    }

    /// The weight lattice `P`: the dual of the coroot lattice inside `RΦ̄`.
    pub fn weight_lattice(&self) -> Lattice {
        self.coroot_lattice().dual(&self.ip)
    }

    /// `Φ̄ ⊆ L` and `⟨L, Φ̄^∨⟩ ⊆ Z`; simple roots suffice since both
    /// conditions make `L` stable under the finite Weyl group.
    pub fn is_weight_lattice(&self, l: &Lattice) -> bool {
        l.dim() == self.dim
            && self.simple.iter().all(|s| {
                let cr = s.coroot(&self.ip).expect("nonconstant");
                l.contains(&s.gradient) && l.basis().iter().all(|b| self.ip.ip(b, &cr).is_integer())
            })
    }

    /// Root datum `(Φ̄_x, L)` of the centralizer at an alcove point.
    pub fn centralizer_root_datum(&self, l: &Lattice, x: &[Q]) -> Result<(FiniteSubsystem, Lattice)> {
        Ok((self.local_subsystem(x)?, l.clone()))
    }

    /// Same functions, seen through the metric `s·ip`.
    pub fn scale_metric(&self, s: &Q) -> Result<Self> {
        let ip = self.ip.scaled(s);
        let simple = self.simple.iter().map(|f| AffineFunctional::new(linalg::scale(&f.gradient, &s.recip()), f.constant.clone())).collect();
        AffineRootSystem::new(self.name.clone(), ip, self.space.clone(), simple)
    }
}

/// All roots of the finite system generated by `simple` (assumed to have
/// a common zero), as a sorted list.
pub fn close_under_reflections(ip: &InnerProduct, simple: &[AffineFunctional]) -> Result<Vec<AffineFunctional>> {
    let mut seen: BTreeSet<AffineFunctional> = simple.iter().cloned().collect();
    let mut frontier: Vec<AffineFunctional> = simple.to_vec();
    while let Some(b) = frontier.pop() {
        for s in simple {
            let r = s.reflect_functional(ip, &b)?;
            if seen.insert(r.clone()) {
                frontier.push(r);
                if seen.len() > 100_000 {
                    return Err(Error::Unsupported("root closure does not terminate; the roots have no common zero".into()));
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}
