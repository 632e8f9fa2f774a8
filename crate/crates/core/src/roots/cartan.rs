//! Cartan types, model Dynkin diagrams and identification of Cartan
//! matrices up to diagram isomorphism.
//!
//! Convention: `C[i][j] = ⟨ᾱ_i, ᾱ_j^∨⟩ = 2⟨ᾱ_i, ᾱ_j⟩ / ⟨ᾱ_j, ᾱ_j⟩`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::linalg::Mat;
use crate::exact::{qi, qr, Q};

pub type CartanMatrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::InvalidType(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Rank bounds for a finite simple type: `A ≥ 1`, `B, C ≥ 2`, `D ≥ 3`,
/// `E ∈ {6,7,8}`, `F = 4`, `G = 2`.
pub fn validate_finite(family: Family, rank: usize) -> Result<()> {
    let ok = match family {
        Family::A => rank >= 1,
        Family::B | Family::C => rank >= 2,
        Family::D => rank >= 3,
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidType(format!("{family}{rank}: rank out of range")))
    }
}

/// An irreducible finite or affine diagram. Affine names follow the Kac
/// tables (`X_n^(r)`); `B2^(1)` also covers `C2^(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentType {
    Finite { family: Family, rank: usize },
    Affine { family: Family, rank: usize, twist: u8 },
}

impl ComponentType {
    pub fn is_affine(&self) -> bool {
        matches!(self, ComponentType::Affine { .. })
    }

    /// Number of diagram nodes.
    pub fn nodes(&self) -> usize {
        match *self {
            ComponentType::Finite { rank, .. } => rank,
            ComponentType::Affine { family, rank, twist } => match (family, twist) {
                (_, 1) => rank + 1,
                (Family::A, 2) => rank.div_ceil(2) + 1,
                (Family::D, 2) => rank,
                (Family::E, 2) => 5,
                (Family::D, 3) => 3,
                _ => 0,
            },
        }
    }
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentType::Finite { family, rank } => write!(f, "{family}{rank}"),
            ComponentType::Affine { family, rank, twist } => write!(f, "{family}{rank}^({twist})"),
        }
    }
}

impl FromStr for ComponentType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, twist) = match s.split_once('^') {
            Some((h, t)) => {
                let t = t.trim().trim_start_matches('(').trim_end_matches(')');
                let r: u8 = t.parse().map_err(|_| Error::InvalidType(s.to_string()))?;
                (h, Some(r))
            }
            None => (s, None),
        };
        let family: Family = head.get(..1).ok_or_else(|| Error::InvalidType(s.to_string()))?.parse()?;
        let rank: usize = head[1..].trim().parse().map_err(|_| Error::InvalidType(s.to_string()))?;
        Ok(match twist {
            None => ComponentType::Finite { family, rank },
            Some(twist) => ComponentType::Affine { family, rank, twist },
        })
    }
}

/// A product of irreducible types; the empty product is the trivial type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub factors: Vec<ComponentType>,
}

impl CartanType {
    pub fn trivial() -> Self {
        CartanType { factors: Vec::new() }
    }

    /// Factors sorted, so that equal multisets compare equal.
    pub fn canonical(mut factors: Vec<ComponentType>) -> Self {
        factors.sort();
        CartanType { factors }
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.factors.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "trivial" {
            return Ok(CartanType::trivial());
        }
        let factors = s.split(['x', '×', '*']).map(|p| p.parse()).collect::<Result<Vec<ComponentType>>>()?;
        Ok(CartanType { factors })
    }
}

/// Diagram given by the Gram matrix of its simple roots.
#[derive(Debug, Clone)]
pub(crate) struct Diagram {
    pub ip: Mat,
}

impl Diagram {
    fn from_edges(lengths: &[Q], edges: &[(usize, usize, Q)]) -> Diagram {
        let n = lengths.len();
        let mut ip = vec![vec![qi(0); n]; n];
        for i in 0..n {
            ip[i][i] = lengths[i].clone();
        }
        for (i, j, v) in edges {
            ip[*i][*j] = v.clone();
            ip[*j][*i] = v.clone();
        }
        Diagram { ip }
    }

    pub fn cartan(&self) -> CartanMatrix {
        cartan_from_gram(&self.ip).expect("model diagrams are crystallographic")
    }
}

/// Cartan matrix from a Gram matrix of simple roots.
pub fn cartan_from_gram(g: &Mat) -> Result<CartanMatrix> {
    let n = g.len();
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = qi(2) * &g[i][j] / &g[j][j];
            if !v.is_integer() {
                return Err(Error::NonIntegralCartan(i, j));
            }
            c[i][j] = i64::try_from(v.to_integer()).map_err(|_| Error::NonIntegralCartan(i, j))?;
        }
    }
    Ok(c)
}

/// Model diagram of a finite type, in Bourbaki numbering (Kac numbering
/// for `G2`: node 0 long). Also accepts `B1`, `C1`.
pub(crate) fn finite_diagram(family: Family, rank: usize) -> Diagram {
    let n = rank;
    let chain = |lengths: Vec<Q>| {
        let edges: Vec<(usize, usize, Q)> = (0..n.saturating_sub(1))
            .map(|i| {
                let m = if lengths[i] > lengths[i + 1] { lengths[i].clone() } else { lengths[i + 1].clone() };
                (i, i + 1, -m / qi(2))
            })
            .collect();
        Diagram::from_edges(&lengths, &edges)
    };
    match family {
        Family::A => chain(vec![qi(2); n]),
        Family::B => {
            let mut l = vec![qi(2); n];
            l[n - 1] = qi(1);
            chain(l)
        }
        Family::C => {
            let mut l = vec![qi(2); n];
            l[n - 1] = qi(4);
            chain(l)
        }
        Family::D => {
            let l = vec![qi(2); n];
            let mut edges: Vec<(usize, usize, Q)> = (0..n - 2).map(|i| (i, i + 1, qi(-1))).collect();
            edges.push((n - 3, n - 1, qi(-1)));
            Diagram::from_edges(&l, &edges)
        }
        Family::E => {
            let all = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
            let edges: Vec<(usize, usize, Q)> = all.iter().filter(|(a, b)| *a < n && *b < n).map(|&(a, b)| (a, b, qi(-1))).collect();
            Diagram::from_edges(&vec![qi(2); n], &edges)
        }
        Family::F => Diagram::from_edges(
            &[qi(2), qi(2), qi(1), qi(1)],
            &[(0, 1, qi(-1)), (1, 2, qi(-1)), (2, 3, qr(-1, 2))],
        ),
        Family::G => Diagram::from_edges(&[qi(6), qi(2)], &[(0, 1, qi(-3))]),
    }
}

/// Positive roots in simple-root coordinates, by height.
pub fn positive_roots(c: &CartanMatrix) -> Vec<Vec<i64>> {
    let n = c.len();
    let mut all: Vec<Vec<i64>> = Vec::new();
    let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    while !layer.is_empty() {
        for r in &layer {
            set.insert(r.clone());
            all.push(r.clone());
        }
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for b in &layer {
            for i in 0..n {
                let mut p = 0;
                loop {
                    let mut d = b.clone();
                    d[i] -= p + 1;
                    if set.contains(&d) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| b[j] * c[j][i]).sum();
                if p - pairing > 0 {
                    let mut up = b.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().collect();
    }
    all
}

fn norm(ip: &Mat, v: &[i64]) -> Q {
    let n = v.len();
    let mut s = qi(0);
    for i in 0..n {
        for j in 0..n {
            s += &ip[i][j] * qi(v[i] * v[j]);
        }
    }
    s
}

/// Highest root (`short = false`) or highest short root of a finite diagram.
pub(crate) fn highest_root(d: &Diagram, short: bool) -> Vec<i64> {
    let roots = positive_roots(&d.cartan());
    let norms: Vec<Q> = roots.iter().map(|r| norm(&d.ip, r)).collect();
    let target = if short { norms.iter().min().cloned() } else { norms.iter().max().cloned() }.expect("nonempty");
    roots
        .iter()
        .zip(&norms)
        .filter(|(_, n)| **n == target)
        .max_by_key(|(r, _)| r.iter().sum::<i64>())
        .map(|(r, _)| r.clone())
        .expect("nonempty")
}

/// Extends a finite diagram by `α₀ = −k θ` as node 0.
fn extend(d: &Diagram, theta: &[i64], k: i64) -> Diagram {
    let n = d.ip.len();
    let mut ip = vec![vec![qi(0); n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            ip[i + 1][j + 1] = d.ip[i][j].clone();
        }
        let v: Q = (0..n).map(|j| qi(theta[j]) * &d.ip[j][i]).sum::<Q>() * qi(-k);
        ip[0][i + 1] = v.clone();
        ip[i + 1][0] = v;
    }
    ip[0][0] = norm(&d.ip, theta) * qi(k * k);
    Diagram { ip }
}

/// Model diagram of a type (node 0 is `α₀` for affine types).
pub(crate) fn model_diagram(t: &ComponentType) -> Diagram {
    match *t {
        ComponentType::Finite { family, rank } => finite_diagram(family, rank),
        ComponentType::Affine { family, rank, twist: 1 } => {
            let d = finite_diagram(family, rank);
            extend(&d, &highest_root(&d, false), 1)
        }
        ComponentType::Affine { family, rank, twist } => {
            let (base, k) = match (family, twist) {
                (Family::A, 2) if rank % 2 == 0 => (finite_diagram(Family::B, rank / 2), 2),
                (Family::A, 2) => (finite_diagram(Family::C, rank.div_ceil(2)), 1),
                (Family::D, 2) => (finite_diagram(Family::B, rank - 1), 1),
                (Family::E, 2) => (finite_diagram(Family::F, 4), 1),
                (Family::D, 3) => (finite_diagram(Family::G, 2), 1),
                _ => unreachable!("validated twisted type"),
            };
            extend(&base, &highest_root(&base, true), k)
        }
    }
}

pub fn model_cartan(t: &ComponentType) -> CartanMatrix {
    model_diagram(t).cartan()
}

/// All named irreducible types with exactly `nodes` nodes.
fn named_types(nodes: usize) -> Vec<ComponentType> {
    use ComponentType::{Affine as Af, Finite as Fi};
    let m = nodes;
    let mut out = Vec::new();
    let fin = |family, rank| Fi { family, rank };
    if m >= 1 {
        out.push(fin(Family::A, m));
    }
    if m >= 2 {
        out.push(fin(Family::B, m));
    }
    if m >= 3 {
        out.push(fin(Family::C, m));
    }
    if m >= 4 {
        out.push(fin(Family::D, m));
    }
    if (6..=8).contains(&m) {
        out.push(fin(Family::E, m));
    }
    if m == 4 {
        out.push(fin(Family::F, 4));
    }
    if m == 2 {
        out.push(fin(Family::G, 2));
    }
    if m >= 2 {
        let r = m - 1;
        let af = |family, rank, twist| Af { family, rank, twist };
        out.push(af(Family::A, r, 1));
        if r >= 2 {
            out.push(af(Family::B, r, 1));
        }
        if r >= 3 {
            out.push(af(Family::C, r, 1));
        }
        if r >= 4 {
            out.push(af(Family::D, r, 1));
        }
        if (6..=8).contains(&r) {
            out.push(af(Family::E, r, 1));
        }
        if r == 4 {
            out.push(af(Family::F, 4, 1));
            out.push(af(Family::E, 6, 2));
        }
        if r == 2 {
            out.push(af(Family::G, 2, 1));
            out.push(af(Family::D, 4, 3));
        }
        out.push(af(Family::A, 2 * r, 2));
        if r >= 3 {
            out.push(af(Family::A, 2 * r - 1, 2));
        }
        if r >= 2 {
            out.push(af(Family::D, r + 1, 2));
        }
    }
    out
}

type Candidates = Arc<Vec<(ComponentType, CartanMatrix)>>;

fn candidates(nodes: usize) -> Candidates {
    static CACHE: OnceLock<Mutex<HashMap<usize, Candidates>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cache lock");
    guard
        .entry(nodes)
        .or_insert_with(|| Arc::new(named_types(nodes).into_iter().map(|t| (t, model_cartan(&t))).collect()))
        .clone()
}

/// Connected components of the diagram, each sorted, ordered by first node.
pub fn components(c: &CartanMatrix) -> Vec<Vec<usize>> {
    let n = c.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(i) = q.pop_front() {
            for j in 0..n {
                if !seen[j] && c[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                    q.push_back(j);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

pub fn submatrix(c: &CartanMatrix, idx: &[usize]) -> CartanMatrix {
    idx.iter().map(|&i| idx.iter().map(|&j| c[i][j]).collect()).collect()
}

/// All bijections `σ` with `b[σ(i)][σ(j)] = a[i][j]`.
pub fn isomorphisms(a: &CartanMatrix, b: &CartanMatrix) -> Vec<Vec<usize>> {
    isomorphisms_limited(a, b, usize::MAX)
}

fn isomorphisms_limited(a: &CartanMatrix, b: &CartanMatrix, limit: usize) -> Vec<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return Vec::new();
    }
    let sig = |m: &CartanMatrix| {
        let mut rows: Vec<Vec<i64>> = m.iter().map(|r| {
            let mut r = r.clone();
            r.sort();
            r
        }).collect();
        rows.sort();
        rows
    };
    if sig(a) != sig(b) {
        return Vec::new();
    }
    // BFS order keeps partial assignments connected, which prunes early
    let mut order = Vec::with_capacity(n);
    for comp in components(a) {
        let mut seen = BTreeSet::from([comp[0]]);
        let mut q = VecDeque::from([comp[0]]);
        while let Some(i) = q.pop_front() {
            order.push(i);
            for &j in &comp {
                if a[i][j] != 0 && seen.insert(j) {
                    q.push_back(j);
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(k: usize, order: &[usize], a: &CartanMatrix, b: &CartanMatrix, sigma: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if k == order.len() {
            out.push(sigma.clone());
            return;
        }
        let i = order[k];
        for t in 0..b.len() {
            if used[t] || b[t][t] != a[i][i] {
                continue;
            }
            let ok = order[..k].iter().all(|&j| a[i][j] == b[t][sigma[j]] && a[j][i] == b[sigma[j]][t]);
            if !ok {
                continue;
            }
            sigma[i] = t;
            used[t] = true;
            rec(k + 1, order, a, b, sigma, used, out, limit);
            used[t] = false;
            sigma[i] = usize::MAX;
        }
    }
    rec(0, &order, a, b, &mut sigma, &mut used, &mut out, limit);
    out
}

pub fn automorphisms(a: &CartanMatrix) -> Vec<Vec<usize>> {
    isomorphisms(a, a)
}

pub fn is_isomorphic(a: &CartanMatrix, b: &CartanMatrix) -> bool {
    isomorphisms_first(a, b).is_some()
}

fn isomorphisms_first(a: &CartanMatrix, b: &CartanMatrix) -> Option<Vec<usize>> {
    isomorphisms_limited(a, b, 1).into_iter().next()
}

/// Name of a connected Cartan matrix together with an isomorphism onto
/// the model diagram, if the type is recognized.
pub fn identify_component(c: &CartanMatrix) -> Option<(ComponentType, Vec<usize>)> {
    candidates(c.len())
        .iter()
        .find_map(|(t, m)| isomorphisms_first(c, m).map(|s| (*t, s)))
}

/// Type of an arbitrary Cartan matrix; unrecognized components are
/// reported through the error.
pub fn identify(c: &CartanMatrix) -> Result<CartanType> {
    let mut factors = Vec::new();
    for comp in components(c) {
        let sub = submatrix(c, &comp);
        let (t, _) = identify_component(&sub).ok_or_else(|| Error::InvalidType(format!("unrecognized diagram {sub:?}")))?;
        factors.push(t);
    }
    Ok(CartanType::canonical(factors))
}

/// Cartan matrix of a product type, factors in the given order.
pub fn product_cartan(t: &CartanType) -> CartanMatrix {
    let n: usize = t.factors.iter().map(|f| model_cartan(f).len()).sum();
    let mut out = vec![vec![0; n]; n];
    let mut off = 0;
    for f in &t.factors {
        let m = model_cartan(f);
        for i in 0..m.len() {
            for j in 0..m.len() {
                out[off + i][off + j] = m[i][j];
            }
        }
        off += m.len();
    }
    out
}

/// Primitive positive integer relation `Σ a_i ᾱ_i = 0` of a connected
/// affine Cartan matrix (the labels), or `None` for finite type.
pub fn cartan_labels(c: &CartanMatrix) -> Option<Vec<i64>> {
    let n = c.len();
    let m: Mat = (0..n).map(|j| (0..n).map(|i| qi(c[i][j])).collect()).collect();
    let ns = crate::exact::linalg::nullspace(&m, n);
    if ns.len() != 1 {
        return None;
    }
    let v = crate::exact::rational::primitive_integer(&ns[0]);
    let sign = if v.iter().any(|x| x < &0.into()) { -1 } else { 1 };
    Some(v.iter().map(|x| sign * i64::try_from(x).expect("small labels")).collect())
}
