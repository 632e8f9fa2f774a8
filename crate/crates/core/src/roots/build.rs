//! Builders for finite, untwisted affine, twisted affine, cyclically
//! folded, rescaled and product root systems.
//!
//! Realizations (standard inner product):
//! - `A_m`: `e_i − e_{i+1}` in the sum-zero hyperplane of `Q^{m+1}`;
//! - `B_n`, `C_n`, `D_n`: `e_i − e_{i+1}` and `e_n`, `2e_n`, `e_{n−1} + e_n`;
//! - `G2`: `−2e_1 + e_2 + e_3` (long), `e_1 − e_2` in sum-zero `Q^3`;
//! - `F4`, `E8`: Bourbaki; `E7`, `E6`: the first 7, 6 roots of `E8` inside
//!   `{x_7 + x_8 = 0}`, `{x_6 = x_7 = −x_8}`.
//!
//! Affine systems put `α_0 = 1/r − ⟨θ, ·⟩` first.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::cartan::{self, ComponentType, Family};
use super::functional::AffineFunctional;
use super::system::AffineRootSystem;
use crate::error::{Error, Result};
use crate::exact::linalg::{self, Mat};
use crate::exact::rational::QStr;
use crate::exact::{qi, qr, InnerProduct, Q};
use crate::polytope::LinForm;

/// A finite root system realized with the standard inner product.
#[derive(Debug, Clone)]
pub struct Realization {
    pub dim: usize,
    pub space: Vec<LinForm>,
    pub simple: Mat,
}

fn e(n: usize, i: usize) -> Vec<Q> {
    linalg::unit(n, i)
}

fn diff(n: usize, i: usize, j: usize) -> Vec<Q> {
    linalg::sub(&e(n, i), &e(n, j))
}

fn v(xs: &[Q]) -> Vec<Q> {
    xs.to_vec()
}

/// Standard realization; also accepts `B1 = A1` (short) and `C1 = A1` (long).
pub fn finite_realization(family: Family, rank: usize) -> Result<Realization> {
    let ok = match family {
        Family::B | Family::C => rank >= 1,
        _ => cartan::validate_finite(family, rank).is_ok(),
    };
    if !ok {
        return Err(Error::InvalidType(format!("{family}{rank}: rank out of range")));
    }
    let n = rank;
    let chain = |dim: usize| -> Mat { (0..n.saturating_sub(1)).map(|i| diff(dim, i, i + 1)).collect() };
    let sum_zero = |dim: usize| vec![LinForm::new(vec![qi(1); dim], qi(0))];
    let real = match family {
        Family::A => Realization { dim: n + 1, space: sum_zero(n + 1), simple: (0..n).map(|i| diff(n + 1, i, i + 1)).collect() },
        Family::B => {
            let mut s = chain(n);
            s.push(e(n, n - 1));
            Realization { dim: n, space: vec![], simple: s }
        }
        Family::C => {
            let mut s = chain(n);
            s.push(linalg::scale(&e(n, n - 1), &qi(2)));
            Realization { dim: n, space: vec![], simple: s }
        }
        Family::D => {
            let mut s = chain(n);
            s.push(linalg::add(&e(n, n - 2), &e(n, n - 1)));
            Realization { dim: n, space: vec![], simple: s }
        }
        Family::G => Realization { dim: 3, space: sum_zero(3), simple: vec![v(&[qi(-2), qi(1), qi(1)]), v(&[qi(1), qi(-1), qi(0)])] },
        Family::F => {
            let h = qr(1, 2);
            Realization {
                dim: 4,
                space: vec![],
                simple: vec![diff(4, 1, 2), diff(4, 2, 3), e(4, 3), v(&[h.clone(), -h.clone(), -h.clone(), -h])],
            }
        }
        Family::E => {
            let h = qr(1, 2);
            let mut a1 = vec![-h.clone(); 8];
            a1[0] = h.clone();
            a1[7] = h;
            let mut all = vec![a1, linalg::add(&e(8, 0), &e(8, 1)), diff(8, 1, 0)];
            for i in 2..7 {
                all.push(diff(8, i, i - 1));
            }
            all.truncate(n);
            let space = match n {
                6 => vec![LinForm::new(diff(8, 5, 6), qi(0)), LinForm::new(linalg::add(&e(8, 6), &e(8, 7)), qi(0))],
                7 => vec![LinForm::new(linalg::add(&e(8, 6), &e(8, 7)), qi(0))],
                _ => vec![],
            };
            Realization { dim: 8, space, simple: all }
        }
    };
    Ok(real)
}

impl Realization {
    pub fn cartan(&self) -> cartan::CartanMatrix {
        cartan::cartan_from_gram(&InnerProduct::standard(self.dim).gram_of(&self.simple)).expect("crystallographic realization")
    }

    /// All positive roots as vectors.
    pub fn positive_roots(&self) -> Mat {
        cartan::positive_roots(&self.cartan())
            .iter()
            .map(|c| {
                let coeffs: Vec<Q> = c.iter().map(|&k| qi(k)).collect();
                linalg::vec_mat(&coeffs, &self.simple, self.dim)
            })
            .collect()
    }

    /// Highest root (maximal height).
    pub fn highest_root(&self) -> Vec<Q> {
        let c = self.cartan();
        let top = cartan::positive_roots(&c).into_iter().max_by_key(|r| r.iter().sum::<i64>()).expect("nonempty");
        let coeffs: Vec<Q> = top.iter().map(|&k| qi(k)).collect();
        linalg::vec_mat(&coeffs, &self.simple, self.dim)
    }
}

/// Finite root system of a simple type.
pub fn build_finite(family: Family, rank: usize) -> Result<AffineRootSystem> {
    let r = finite_realization(family, rank)?;
    let simple = r.simple.iter().map(|g| AffineFunctional::linear(g.clone())).collect();
    AffineRootSystem::new(format!("{family}{rank}"), InnerProduct::standard(r.dim), r.space, simple)
}

/// Untwisted affine system `X_n^(1)` with `α_0 = 1 − ⟨θ, ·⟩`.
pub fn build_affine_untwisted(family: Family, rank: usize) -> Result<AffineRootSystem> {
    if family == Family::B && rank < 2 {
        return Err(Error::InvalidType(format!("{family}{rank}^(1): rank out of range")));
    }
    cartan::validate_finite(family, rank).or_else(|e| if family == Family::C && rank >= 1 { Ok(()) } else { Err(e) })?;
    let r = finite_realization(family, rank)?;
    let theta = r.highest_root();
    let mut simple = vec![AffineFunctional::new(linalg::neg(&theta), qi(1))];
    simple.extend(r.simple.iter().map(|g| AffineFunctional::linear(g.clone())));
    AffineRootSystem::new(format!("{family}{rank}^(1)"), InnerProduct::standard(r.dim), r.space, simple)
}

/// Default diagram automorphism of order `r` (0-based node permutation).
pub fn default_automorphism(family: Family, rank: usize, r: u8) -> Result<Vec<usize>> {
    let n = rank;
    match (family, r) {
        (Family::A, 2) if n >= 2 => Ok((0..n).map(|i| n - 1 - i).collect()),
        (Family::D, 2) if n >= 4 => {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(n - 2, n - 1);
            Ok(p)
        }
        (Family::E, 2) if n == 6 => Ok(vec![5, 1, 4, 3, 2, 0]),
        (Family::D, 3) if n == 4 => Ok(vec![2, 1, 3, 0]),
        _ => Err(Error::InvalidTwist(format!("{family}{rank} has no diagram automorphism of order {r}"))),
    }
}

fn permutation_order(p: &[usize]) -> usize {
    let id: Vec<usize> = (0..p.len()).collect();
    let mut cur = p.to_vec();
    let mut k = 1;
    while cur != id {
        cur = cur.iter().map(|&i| p[i]).collect();
        k += 1;
    }
    k
}

/// Twisted affine system from `Φ(K)` and a diagram automorphism `τ` of
/// order `r`, realized on the fixed space `t^τ` in chart coordinates
/// `y` with `x = Bᵀ y` (`B` the RREF basis of the fixed space). The
/// affine root is `α_0 = 1/r − ⟨θ, ·⟩`, with `θ` the longest dominant
/// restricted root for `A_{2n}` and the dominant short one otherwise.
pub fn build_affine_twisted(family: Family, rank: usize, r: u8, automorphism: Option<Vec<usize>>) -> Result<AffineRootSystem> {
    let tau = match automorphism {
        Some(p) => p,
        None => default_automorphism(family, rank, r)?,
    };
    default_automorphism(family, rank, r)?;
    let real = finite_realization(family, rank)?;
    let c = real.cartan();
    let n = real.simple.len();
    let is_perm = tau.len() == n && {
        let mut s = tau.clone();
        s.sort();
        s == (0..n).collect::<Vec<_>>()
    };
    if !is_perm {
        return Err(Error::InvalidTwist(format!("{tau:?} is not a permutation of {n} nodes")));
    }
    if (0..n).any(|i| (0..n).any(|j| c[tau[i]][tau[j]] != c[i][j])) {
        return Err(Error::InvalidTwist(format!("{tau:?} is not a diagram automorphism of {family}{rank}")));
    }
    if permutation_order(&tau) != usize::from(r) {
        return Err(Error::InvalidTwist(format!("{tau:?} does not have order {r}")));
    }
    let dim = real.dim;
    let mut rows: Mat = real.space.iter().map(|f| f.a.clone()).collect();
    for i in 0..n {
        rows.push(linalg::sub(&real.simple[i], &real.simple[tau[i]]));
    }
    let basis = linalg::row_space(&linalg::nullspace(&rows, dim), dim);
    let k = basis.len();
    let ip = InnerProduct::standard(dim).pullback(&basis)?;
    let restrict = |a: &[Q]| -> Vec<Q> { linalg::mat_vec(&basis, a) };
    let mut simple_forms: Vec<Vec<Q>> = Vec::new();
    for g in &real.simple {
        let f = restrict(g);
        if !simple_forms.contains(&f) {
            simple_forms.push(f);
        }
    }
    let simple_grads: Vec<Vec<Q>> = simple_forms.iter().map(|f| ip.raise(f)).collect();
    let dominant: Vec<Vec<Q>> = real
        .positive_roots()
        .iter()
        .map(|a| ip.raise(&restrict(a)))
        .filter(|g| simple_grads.iter().all(|s| !ip.ip(g, s).is_negative()))
        .collect();
    let longest = family == Family::A && rank.is_multiple_of(2);
    let theta = dominant
        .iter()
        .max_by(|a, b| {
            let (na, nb) = (ip.norm2(a), ip.norm2(b));
            if longest { na.cmp(&nb) } else { nb.cmp(&na) }.then_with(|| a.cmp(b))
        })
        .cloned()
        .ok_or_else(|| Error::InvalidTwist("no dominant restricted root".into()))?;
    let mut simple = vec![AffineFunctional::new(linalg::neg(&theta), qr(1, i64::from(r)))];
    simple.extend(simple_grads.into_iter().map(AffineFunctional::linear));
    let name = format!("{family}{rank}^({r})");
    let sys = AffineRootSystem::new(name, ip, vec![], simple)?;
    debug_assert_eq!(sys.dim(), k);
    Ok(sys)
}

/// Cyclic folding `α(x) = (1/m) α_0(m x)` on the diagonal of `m` copies,
/// with the inner product scaled by `m`.
pub fn fold_cyclic(base: &AffineRootSystem, m: u32) -> Result<AffineRootSystem> {
    if m == 0 {
        return Err(Error::InvalidTwist("cyclic factor must be positive".into()));
    }
    if m == 1 {
        return Ok(base.clone());
    }
    let mq = qi(i64::from(m));
    let inv = mq.recip();
    let ip = base.ip().scaled(&mq);
    let simple = base.simple_roots().iter().map(|f| AffineFunctional::new(linalg::scale(&f.gradient, &inv), &f.constant * &inv)).collect();
    let space = base.space().iter().map(|f| LinForm::new(f.a.clone(), &f.c * &inv)).collect();
    AffineRootSystem::new(format!("{}^{m}", base.name), ip, space, simple)
}

/// Orthogonal product with block-diagonal metric.
pub fn product(factors: &[AffineRootSystem]) -> Result<AffineRootSystem> {
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    let total: usize = factors.iter().map(|f| f.dim()).sum();
    let ip = InnerProduct::block_diag(&factors.iter().map(|f| f.ip().clone()).collect::<Vec<_>>());
    let mut space = Vec::new();
    let mut simple = Vec::new();
    let mut off = 0;
    for f in factors {
        for eq in f.space() {
            space.push(LinForm::new(linalg::pad(&eq.a, off, total), eq.c.clone()));
        }
        for s in f.simple_roots() {
            simple.push(AffineFunctional::new(linalg::pad(&s.gradient, off, total), s.constant.clone()));
        }
        off += f.dim();
    }
    let name = factors.iter().map(|f| f.name.clone()).collect::<Vec<_>>().join("x");
    AffineRootSystem::new(name, ip, space, simple)
}

fn one_u8() -> u8 {
    1
}

fn one_u32() -> u32 {
    1
}

fn yes() -> bool {
    true
}

/// One simple factor of an ambient group: type, twist, cyclic factor and
/// metric scaling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSpec {
    pub family: Family,
    pub rank: usize,
    #[serde(default = "yes")]
    pub affine: bool,
    #[serde(default = "one_u8")]
    pub twist: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphism: Option<Vec<usize>>,
    #[serde(default = "one_u32")]
    pub cyclic: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<QStr>,
}

impl FactorSpec {
    pub fn affine(family: Family, rank: usize) -> Self {
        FactorSpec { family, rank, affine: true, twist: 1, automorphism: None, cyclic: 1, scale: None }
    }

    pub fn twisted(family: Family, rank: usize, twist: u8) -> Self {
        FactorSpec { twist, ..FactorSpec::affine(family, rank) }
    }

    pub fn finite(family: Family, rank: usize) -> Self {
        FactorSpec { affine: false, ..FactorSpec::affine(family, rank) }
    }

    pub fn with_scale(mut self, s: Q) -> Self {
        self.scale = Some(QStr(s));
        self
    }

    pub fn build(&self) -> Result<AffineRootSystem> {
        let base = match (self.affine, self.twist) {
            (false, 1) => build_finite(self.family, self.rank)?,
            (false, _) => return Err(Error::InvalidTwist("twisted systems are affine".into())),
            (true, 1) => build_affine_untwisted(self.family, self.rank)?,
            (true, r) => build_affine_twisted(self.family, self.rank, r, self.automorphism.clone())?,
        };
        let folded = fold_cyclic(&base, self.cyclic)?;
        match &self.scale {
            Some(QStr(s)) if !s.is_positive() => Err(Error::NotPositiveDefinite),
            Some(QStr(s)) => folded.scale_metric(s),
            None => Ok(folded),
        }
    }
}

/// Product of the given factors.
pub fn build(factors: &[FactorSpec]) -> Result<AffineRootSystem> {
    if factors.is_empty() {
        return Err(Error::InvalidType("empty ambient".into()));
    }
    product(&factors.iter().map(FactorSpec::build).collect::<Result<Vec<_>>>()?)
}

/// Whether the diagram of a built system identifies as expected.
pub fn identifies_as(sys: &AffineRootSystem, t: &ComponentType) -> bool {
    sys.component_types() == [*t]
}
