//! Exact convex geometry: bounded polytopes in H- and V-representation,
//! faces, tangent cones and lattice-point monoids.

pub mod cone;
pub mod hilbert;
pub mod lp;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::linalg::{self, Mat};
use crate::exact::{fmt_q, Q};

pub use cone::{cone_equal, Cone};
pub use hilbert::hilbert_basis;

/// Affine form `x ↦ c + a · x` (standard dot product).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinForm {
    pub a: Vec<Q>,
    pub c: Q,
}

impl LinForm {
    pub fn new(a: Vec<Q>, c: Q) -> Self {
        LinForm { a, c }
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        &self.c + linalg::dot(&self.a, x)
    }

    pub fn linear(&self, v: &[Q]) -> Q {
        linalg::dot(&self.a, v)
    }

    pub fn is_constant(&self) -> bool {
        linalg::is_zero(&self.a)
    }

    pub fn neg(&self) -> LinForm {
        LinForm { a: linalg::neg(&self.a), c: -&self.c }
    }

    pub fn scale(&self, s: &Q) -> LinForm {
        LinForm { a: linalg::scale(&self.a, s), c: &self.c * s }
    }

    /// Positive rescaling making the first nonzero linear coefficient ±1.
    pub fn normalized(&self) -> LinForm {
        match self.a.iter().find(|x| !x.is_zero()) {
            Some(p) => self.scale(&p.abs().recip()),
            None => self.clone(),
        }
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.a.len()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", format_affine(&self.a, &self.c, &names))
    }
}

/// Renders `c + Σ a_i name_i` as e.g. `1/2 - 2x1 + x3`.
pub fn format_affine(a: &[Q], c: &Q, names: &[String]) -> String {
    let mut out = String::new();
    if !c.is_zero() {
        out.push_str(&fmt_q(c));
    }
    for (coef, name) in a.iter().zip(names) {
        if coef.is_zero() {
            continue;
        }
        let mag = coef.abs();
        let body = if mag.is_one() { name.clone() } else { format!("{}{}", fmt_q(&mag), name) };
        if out.is_empty() {
            if coef.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if coef.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses the output format of [`format_affine`] with names `x1..xn`.
pub fn parse_affine(s: &str, n: usize) -> Result<LinForm> {
    let bad = || Error::Format(format!("cannot parse affine form {s:?}"));
    let mut a = linalg::zeros(n);
    let mut c = Q::zero();
    let compact: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if ch == '-' {
            neg = !neg;
        } else if ch != '+' {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(bad());
    }
    terms.push((neg, cur));
    for (neg, t) in terms {
        let (coef, var) = match t.find('x') {
            Some(i) => (&t[..i], Some(&t[i + 1..])),
            None => (t.as_str(), None),
        };
        let mut q = if coef.is_empty() { Q::one() } else { crate::exact::parse_q(coef).map_err(|_| bad())? };
        if neg {
            q = -q;
        }
        match var {
            None => c += q,
            Some(idx) => {
                let i: usize = idx.parse().map_err(|_| bad())?;
                if i == 0 || i > n {
                    return Err(bad());
                }
                a[i - 1] += q;
            }
        }
    }
    Ok(LinForm { a, c })
}

/// Affine subspace `base + span(directions)`; directions in RREF.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineSpan {
    pub base: Vec<Q>,
    pub directions: Mat,
}

impl AffineSpan {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// Canonical equalities `c + a·x = 0` cutting out the subspace.
    pub fn equalities(&self) -> Vec<LinForm> {
        let n = self.base.len();
        let normals = if self.directions.is_empty() { linalg::identity(n) } else { linalg::complement(&self.directions, n) };
        normals
            .into_iter()
            .map(|a| {
                let c = -linalg::dot(&a, &self.base);
                LinForm { a, c }
            })
            .collect()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        linalg::in_span(&self.directions, &linalg::sub(x, &self.base))
    }
}

/// A bounded convex polytope with canonical irredundant H-representation
/// inside its affine span and its vertex list (lexicographically sorted).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polytope {
    dim: usize,
    span: AffineSpan,
    equalities: Vec<LinForm>,
    inequalities: Vec<LinForm>,
    vertices: Vec<Vec<Q>>,
}

/// A face, identified by the indices of its vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

/// Normal (inside the row space of `dirs`) of the hyperplane spanned by
/// `vecs`, when `vecs` span a hyperplane of `span(dirs)`.
pub(crate) fn hyperplane_normal(dirs: &Mat, vecs: &[Vec<Q>], n: usize) -> Option<Vec<Q>> {
    let d = dirs.len();
    // a = λ · dirs with a ⟂ every vec
    let m: Mat = vecs.iter().map(|v| dirs.iter().map(|row| linalg::dot(row, v)).collect()).collect();
    let ns = if m.is_empty() { linalg::identity(d) } else { linalg::nullspace(&m, d) };
    if ns.len() != 1 {
        return None;
    }
    Some(linalg::vec_mat(&ns[0], dirs, n))
}

impl Polytope {
    /// Convex hull of a nonempty point list.
    pub fn hull(points: &[Vec<Q>]) -> Result<Polytope> {
        let first = points.first().ok_or(Error::EmptyPolytope)?;
        let n = first.len();
        if points.iter().any(|p| p.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: points.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n) });
        }
        let pts: Vec<Vec<Q>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let p0 = pts[0].clone();
        let diffs: Mat = pts.iter().map(|p| linalg::sub(p, &p0)).collect();
        let dirs = linalg::row_space(&diffs, n);
        let d = dirs.len();
        let span = AffineSpan { base: p0.clone(), directions: dirs.clone() };
        let equalities = span.equalities();
        if d == 0 {
            return Ok(Polytope { dim: n, span, equalities, inequalities: Vec::new(), vertices: vec![p0] });
        }
        let mut facets: BTreeSet<LinForm> = BTreeSet::new();
        for sub in subsets(pts.len(), d) {
            let anchor = &pts[sub[0]];
            let vecs: Mat = sub[1..].iter().map(|&i| linalg::sub(&pts[i], anchor)).collect();
            let Some(a) = hyperplane_normal(&dirs, &vecs, n) else { continue };
            let c = -linalg::dot(&a, anchor);
            let f = LinForm { a, c };
            let vals: Vec<Q> = pts.iter().map(|p| f.eval(p)).collect();
            let f = if vals.iter().all(|v| !v.is_negative()) {
                f
            } else if vals.iter().all(|v| !v.is_positive()) {
                f.neg()
            } else {
                continue;
            };
            facets.insert(f.normalized());
        }
        let inequalities: Vec<LinForm> = facets.into_iter().collect();
        let vertices: Vec<Vec<Q>> = pts
            .iter()
            .filter(|p| {
                let active: Mat = inequalities.iter().filter(|f| f.eval(p).is_zero()).map(|f| f.a.clone()).collect();
                linalg::rank(&active, n) == d
            })
            .cloned()
            .collect();
        let base = vertices[0].clone();
        let span = AffineSpan { base, directions: dirs };
        Ok(Polytope { dim: n, span, equalities, inequalities, vertices })
    }

    /// The polytope `{eqs = 0, ineqs ≥ 0}`; fails when empty or unbounded.
    pub fn from_constraints(dim: usize, eqs: &[LinForm], ineqs: &[LinForm]) -> Result<Polytope> {
        for f in eqs.iter().chain(ineqs) {
            if f.a.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: f.a.len() });
            }
        }
        if lp::feasible_point(dim, eqs, ineqs).is_none() {
            return Err(Error::EmptyPolytope);
        }
        for j in 0..dim {
            for sign in [1i64, -1] {
                let mut obj = linalg::zeros(dim);
                obj[j] = Q::from_integer(sign.into());
                if lp::maximize(dim, &obj, eqs, ineqs) == lp::LpOutcome::Unbounded {
                    return Err(Error::Unbounded);
                }
            }
        }
        let eq_rows: Mat = eqs.iter().map(|f| f.a.clone()).collect();
        let r = linalg::rank(&eq_rows, dim);
        let k = dim - r;
        let mut pts: BTreeSet<Vec<Q>> = BTreeSet::new();
        for sub in subsets(ineqs.len(), k) {
            let mut rows = eq_rows.clone();
            let mut rhs: Vec<Q> = eqs.iter().map(|f| -f.c.clone()).collect();
            for &i in &sub {
                rows.push(ineqs[i].a.clone());
                rhs.push(-ineqs[i].c.clone());
            }
            if linalg::rank(&rows, dim) != dim {
                continue;
            }
            if let Some(x) = linalg::solve(&rows, &rhs, dim) {
                if ineqs.iter().all(|f| !f.eval(&x).is_negative()) && eqs.iter().all(|f| f.eval(&x).is_zero()) {
                    pts.insert(x);
                }
            }
        }
        let pts: Vec<Vec<Q>> = pts.into_iter().collect();
        Polytope::hull(&pts)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn equalities(&self) -> &[LinForm] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[LinForm] {
        &self.inequalities
    }

    pub fn affine_span(&self) -> &AffineSpan {
        &self.span
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.equalities.iter().all(|f| f.eval(x).is_zero()) && self.inequalities.iter().all(|f| !f.eval(x).is_negative())
    }

    pub fn is_vertex(&self, x: &[Q]) -> bool {
        self.vertices.iter().any(|v| v.as_slice() == x)
    }

    /// `R≥0 (P − x)`.
    pub fn tangent_cone(&self, x: &[Q]) -> Result<Cone> {
        if !self.contains(x) {
            return Err(Error::NotInPolytope);
        }
        let eqs: Mat = self.equalities.iter().map(|f| f.a.clone()).collect();
        let active: Mat = self.inequalities.iter().filter(|f| f.eval(x).is_zero()).map(|f| f.a.clone()).collect();
        Ok(Cone::from_constraints(self.dim, &eqs, &active))
    }

    /// All nonempty faces, including `P` itself.
    pub fn faces(&self) -> Vec<Face> {
        let m = self.inequalities.len();
        assert!(m <= 24, "face enumeration limited to 24 facets");
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for mask in 0u32..(1u32 << m) {
            let verts: Vec<usize> = (0..self.vertices.len())
                .filter(|&vi| (0..m).all(|fi| mask & (1 << fi) == 0 || self.inequalities[fi].eval(&self.vertices[vi]).is_zero()))
                .collect();
            if !verts.is_empty() {
                seen.insert(verts);
            }
        }
        seen.into_iter()
            .map(|vs| {
                let p0 = &self.vertices[vs[0]];
                let diffs: Mat = vs.iter().map(|&i| linalg::sub(&self.vertices[i], p0)).collect();
                let dim = linalg::rank(&diffs, self.dim);
                Face { vertices: vs, dim }
            })
            .collect()
    }

    /// Pairs of vertex indices joined by an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces().into_iter().filter(|f| f.dim == 1).map(|f| (f.vertices[0], f.vertices[1])).collect()
    }

    /// Minimum of an affine form over the polytope.
    pub fn minimum(&self, f: &LinForm) -> Q {
        match lp::minimize(self.dim, &f.a, &self.equalities, &self.inequalities) {
            lp::LpOutcome::Optimal { value, .. } => value + &f.c,
            _ => unreachable!("polytopes are nonempty and bounded"),
        }
    }

    /// Whether `{f = 0}` meets the polytope, assuming `f ≥ 0` on it.
    pub fn meets_wall(&self, f: &LinForm) -> bool {
        let mut eqs = self.equalities.clone();
        eqs.push(f.clone());
        lp::feasible_point(self.dim, &eqs, &self.inequalities).is_some()
    }

    /// `true` when every wall `{f = 0}` meets `P`.
    pub fn meets_every_wall(&self, walls: &[LinForm]) -> bool {
        walls.iter().all(|w| self.meets_wall(w))
    }

    /// Canonical H-representation as a comparable value.
    pub fn h_rep(&self) -> (Vec<LinForm>, Vec<LinForm>) {
        (self.equalities.clone(), self.inequalities.clone())
    }

    /// Point in the relative interior (vertex barycenter).
    pub fn relative_interior_point(&self) -> Vec<Q> {
        let k = Q::from_integer((self.vertices.len() as i64).into());
        let mut s = linalg::zeros(self.dim);
        for v in &self.vertices {
            s = linalg::add(&s, v);
        }
        linalg::scale(&s, &k.recip())
    }
}
