use num_traits::Zero;

use super::catalog::Catalog;
use super::check::{check_pair, IntegralPair, Overall, VerificationReport};
use crate::error::{Error, Result};
use crate::exact::linalg::{self, Mat};
use crate::exact::{qi, qr, InnerProduct, Lattice, Q};
use crate::polytope::{parse_affine, AffineSpan, Polytope};
use crate::roots::{build, AffineFunctional, Family, FactorSpec};

/// What a builtin example is expected to produce under the shipped catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub overall: Overall,
    /// Witness names over all vertices, sorted; `None` skips the check.
    pub witnesses: Option<Vec<String>>,
    pub phi_m_type: Option<String>,
    /// Simple roots of `Φ_M` in the display syntax, compared as functions
    /// on `aff(P)`.
    pub phi_m_roots: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuiltinExample {
    pub name: String,
    pub description: String,
    pub pair: IntegralPair,
    pub expected: Expectation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleOutcome {
    pub name: String,
    pub report: VerificationReport,
    pub mismatches: Vec<String>,
}

impl ExampleOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn sun(n: usize) -> FactorSpec {
    FactorSpec::affine(Family::A, n - 1)
}

fn spn(n: usize) -> FactorSpec {
    FactorSpec::affine(Family::C, n)
}

/// Fundamental weight `ω_k` of `SU(n)` in sum-zero coordinates.
fn omega(n: usize, k: usize) -> Vec<Q> {
    (0..n).map(|i| if i < k { qr((n - k) as i64, n as i64) } else { qr(-(k as i64), n as i64) }).collect()
}

fn half_sum(n: usize, k: usize) -> Vec<Q> {
    (0..n).map(|i| if i < k { qr(1, 2) } else { qi(0) }).collect()
}

fn strings(xs: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = xs.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn expect(overall: Overall) -> Expectation {
    Expectation { overall, witnesses: None, phi_m_type: None, phi_m_roots: None }
}

impl Expectation {
    fn witnesses(mut self, w: &[&str]) -> Self {
        self.witnesses = Some(strings(w));
        self
    }

    fn phi_type(mut self, t: &str) -> Self {
        self.phi_m_type = Some(t.to_string());
        self
    }

    fn roots(mut self, r: &[&str]) -> Self {
        self.phi_m_roots = Some(r.iter().map(|s| s.to_string()).collect());
        self
    }
}

fn make(name: &str, description: &str, factors: Vec<FactorSpec>, points: &[Vec<Q>], lattice: impl FnOnce(&crate::roots::AffineRootSystem) -> Vec<Vec<Q>>, expected: Expectation) -> BuiltinExample {
    let ambient = build(&factors).expect("builtin ambient");
    let gens = lattice(&ambient);
    let p = Polytope::hull(points).expect("builtin polytope");
    let l = Lattice::from_generators(ambient.dim(), &gens);
    let pair = IntegralPair::new(name, factors, p, l).unwrap_or_else(|e| panic!("builtin {name}: {e}"));
    BuiltinExample { name: name.to_string(), description: description.to_string(), pair, expected }
}

fn alcove_vertices(factors: &[FactorSpec]) -> Vec<Vec<Q>> {
    build(factors).expect("builtin ambient").alcove().expect("affine ambient").vertices().to_vec()
}

fn weights(sys: &crate::roots::AffineRootSystem) -> Vec<Vec<Q>> {
    sys.weight_lattice().basis().clone()
}

fn scaled_weights(k: i64) -> impl FnOnce(&crate::roots::AffineRootSystem) -> Vec<Vec<Q>> {
    move |sys| sys.weight_lattice().scale(&qi(k)).basis().clone()
}

fn roots_lattice(sys: &crate::roots::AffineRootSystem) -> Vec<Vec<Q>> {
    sys.root_lattice().basis().clone()
}

/// The involution `−w_0` on `SU(n)` coordinates, identity otherwise.
fn delta(f: &FactorSpec, v: &[Q]) -> Vec<Q> {
    if f.family == Family::A && f.rank >= 2 {
        v.iter().rev().map(|x| -x).collect()
    } else {
        v.to_vec()
    }
}

/// Points `p_i + t (p_j − p_i)` along edges of a triangle.
fn along(a: &[Q], b: &[Q], t: Q) -> Vec<Q> {
    linalg::axpy(a, &t, &linalg::sub(b, a))
}

fn rank_one(out: &mut Vec<BuiltinExample>) {
    let su2 = vec![sun(2)];
    let a = alcove_vertices(&su2);
    for (k, e) in [
        (1, expect(Overall::Spherical).witnesses(&["C^2 for SL(2)", "C^2 for SL(2)"])),
        (2, expect(Overall::Spherical).witnesses(&["SL(2)/C*", "SL(2)/C*"]).phi_type("A1^(1)")),
        (3, expect(Overall::Inconclusive)),
        (4, expect(Overall::Spherical).witnesses(&["SL(2)/N(C*)", "SL(2)/N(C*)"]).phi_type("A1^(1)")),
        (6, expect(Overall::Inconclusive)),
    ] {
        let name = if k == 1 { "su2-P".to_string() } else { format!("su2-{k}P") };
        let manifold = match k {
            1 => "; M glued from two copies of C^2",
            2 => "; M = S^2 x S^2",
            4 => "; M = CP^2",
            _ => "",
        };
        let desc = format!("SU(2), P the alcove, lattice {k} times the weight lattice{manifold}");
        out.push(make(&name, &desc, su2.clone(), &a, scaled_weights(k), e));
    }
    let tw = vec![FactorSpec::twisted(Family::A, 2, 2)];
    let a = alcove_vertices(&tw);
    for (k, e) in [
        (1, expect(Overall::Spherical).witnesses(&["C^2 for SL(2)", "SO(3)/SO(2)"])),
        (2, expect(Overall::Spherical).witnesses(&["SL(2)/C*", "SO(3)/O(2)"])),
        (4, expect(Overall::Inconclusive)),
    ] {
        let name = if k == 1 { "su3-twisted-P".to_string() } else { format!("su3-twisted-{k}P") };
        let desc = format!("SU(3) with the outer twist, P the alcove, lattice {k} times the weight lattice");
        out.push(make(&name, &desc, tw.clone(), &a, scaled_weights(k), e));
    }
}

fn spinning(out: &mut Vec<BuiltinExample>) {
    for n in 2..=5 {
        let w = omega(n, 1);
        let model = if n == 2 { "C^2 for SL(2)".to_string() } else { format!("C^{n} for SL({n})") };
        let m = model.as_str();
        let lat = w.clone();
        out.push(make(
            &format!("spinning-sphere-{n}"),
            &format!("spinning {}-sphere: SU({n}), P the edge from 0 to omega_1, lattice Z omega_1", 2 * n),
            vec![sun(n)],
            &[linalg::zeros(n), w],
            move |_| vec![lat],
            expect(Overall::Spherical).witnesses(&[m, m]),
        ));
    }
}

fn quaternionic(out: &mut Vec<BuiltinExample>) {
    let model = |k: usize, m: usize| -> String {
        if k == 1 && m == 0 {
            "C^2 for SL(2)".to_string()
        } else if m == 0 {
            format!("C^{} for Sp({})", 2 * k, 2 * k)
        } else {
            format!("C^{} for Sp({})xSp({})", 2 * k, 2 * k, 2 * m)
        }
    };
    for n in 1..=4 {
        for k in 1..=n {
            let e = linalg::unit(n, k - 1);
            let w0 = model(n - k + 1, k - 1);
            let w1 = model(k, n - k);
            out.push(make(
                &format!("quaternionic-{n}-{k}"),
                &format!("quaternionic Grassmannian of {k}-planes in H^{n}: Sp(2{n}), P the segment x_{}x_{k}", k - 1),
                vec![spn(n)],
                &[half_sum(n, k - 1), half_sum(n, k)],
                move |_| vec![e],
                expect(Overall::Spherical).witnesses(&[&w0, &w1]),
            ));
        }
    }
}

fn double(name: &str, desc: &str, f: FactorSpec, scale: Option<Q>, expected: Expectation, out: &mut Vec<BuiltinExample>) {
    let second = match &scale {
        Some(s) => f.clone().with_scale(s.clone()),
        None => f.clone(),
    };
    let factors = vec![f.clone(), second];
    let verts = alcove_vertices(std::slice::from_ref(&f));
    let pts: Vec<Vec<Q>> = verts
        .iter()
        .map(|v| {
            let mut p = v.clone();
            p.extend(delta(&f, v));
            p
        })
        .collect();
    let dirs = Polytope::hull(&pts).expect("double polytope").affine_span().directions.clone();
    out.push(make(name, desc, factors, &pts, move |sys| sys.weight_lattice().intersect_kernel(&linalg::complement(&dirs, sys.dim())).basis().clone(), expected));
}

fn doubles(out: &mut Vec<BuiltinExample>) {
    let w = "SL(2) as S(GL(2)xGL(2))-variety";
    double("double-su2", "double of SU(2) with equal metrics: P the diagonal", sun(2), None, expect(Overall::Spherical).witnesses(&[w, w]), out);
    double(
        "double-su2-scaled",
        "double of SU(2) with the second metric scaled by 2",
        sun(2),
        Some(qi(2)),
        expect(Overall::Inconclusive),
        out,
    );
    double("double-su3", "double of SU(3)", sun(3), None, expect(Overall::Spherical), out);
    double("double-sp4", "double of Sp(4)", spn(2), None, expect(Overall::Spherical), out);
    double("double-g2", "double of G2", FactorSpec::affine(Family::G, 2), None, expect(Overall::Spherical), out);
}

fn disymmetric(out: &mut Vec<BuiltinExample>) {
    for n in [2usize, 3] {
        let m = 2 * n;
        let lift = |y: &[Q]| -> Vec<Q> {
            let mut v: Vec<Q> = y.iter().map(|t| t + qr(1, 4)).collect();
            v.extend(y.iter().map(|t| t - qr(1, 4)));
            v
        };
        let mut pts = vec![lift(&linalg::zeros(n))];
        for j in 1..n {
            pts.push(lift(&linalg::scale(&omega(n, j), &qr(1, 2))));
        }
        let lat: Mat = (1..n)
            .map(|j| {
                let w = omega(n, j);
                let mut v = w.clone();
                v.extend(w);
                v
            })
            .collect();
        let t = format!("A{}^(1)", n - 1);
        out.push(make(
            &format!("disymmetric-su{m}"),
            &format!("SU({m}) acting on the disymmetric space: P in x_i - x_(n+i) = 1/2"),
            vec![sun(m)],
            &pts,
            move |_| lat,
            expect(Overall::Spherical).phi_type(&t),
        ));
    }
}

fn surjective(out: &mut Vec<BuiltinExample>) {
    let cases: Vec<(&str, FactorSpec, Expectation)> = vec![
        ("surjective-su3", sun(3), expect(Overall::Spherical).phi_type("A2^(1)").roots(&["1 + x3 - x2", "x1 - x3", "1 + x2 - x1"])),
        ("surjective-su4", sun(4), expect(Overall::Spherical).phi_type("A1^(1)xA1^(1)").roots(&["1 + x4 - x2", "x1 - x3", "x2 - x4", "1 + x3 - x1"])),
        (
            "surjective-su5",
            sun(5),
            expect(Overall::Spherical).phi_type("A4^(1)").roots(&["1 + x5 - x2", "x1 - x3", "x2 - x4", "x3 - x5", "1 + x4 - x1"]),
        ),
        ("surjective-sp4", spn(2), expect(Overall::Spherical).phi_type("A1^(1)").roots(&["1 - x1 - x2", "x1 + x2"])),
        ("surjective-sp6", spn(3), expect(Overall::Spherical).phi_type("A2^(1)").roots(&["1 - x1 - x2", "x1 - x3", "x2 + x3"])),
        ("surjective-su3-twisted", FactorSpec::twisted(Family::A, 2, 2), expect(Overall::Spherical).phi_type("A1").roots(&["2x1"])),
        (
            "surjective-su5-twisted",
            FactorSpec::twisted(Family::A, 4, 2),
            expect(Overall::Spherical).phi_type("A4^(2)").roots(&["1/2 - x1 - x2", "x1", "2x2"]),
        ),
    ];
    for (name, f, e) in cases {
        let a = alcove_vertices(std::slice::from_ref(&f));
        out.push(make(name, "P the whole alcove, lattice the weight lattice", vec![f], &a, weights, e));
    }
}

/// Alcove vertex whose local system has the given type.
fn vertex_of_type(f: &FactorSpec, t: &str) -> Vec<Q> {
    let sys = build(std::slice::from_ref(f)).expect("ambient");
    sys.alcove()
        .expect("affine")
        .vertices()
        .iter()
        .find(|v| sys.local_subsystem(v).expect("alcove point").cartan_type.to_string() == t)
        .unwrap_or_else(|| panic!("no vertex of type {t}"))
        .clone()
}

fn inscribed(out: &mut Vec<BuiltinExample>) {
    let su3 = sun(3);
    let (o, w1, w2) = (linalg::zeros(3), omega(3, 1), omega(3, 2));
    let mids = vec![along(&o, &w1, qr(1, 2)), along(&w1, &w2, qr(1, 2)), along(&o, &w2, qr(1, 2))];
    let row2 = vec![along(&o, &w1, qr(2, 3)), along(&w1, &w2, qr(2, 3)), along(&w2, &o, qr(2, 3))];
    out.push(make("inscribed-su3-1", "SU(3): triangle on the edge midpoints, weight lattice", vec![su3.clone()], &mids, weights, expect(Overall::Spherical)));
    out.push(make("inscribed-su3-1-R", "SU(3): triangle on the edge midpoints, root lattice", vec![su3.clone()], &mids, roots_lattice, expect(Overall::Spherical)));
    out.push(make("inscribed-su3-2", "SU(3): rotated inscribed triangle, root lattice", vec![su3], &row2, roots_lattice, expect(Overall::Spherical)));
    let sp4 = spn(2);
    let row3 = vec![vec![qr(1, 4), qi(0)], vec![qr(1, 2), qr(1, 4)], vec![qr(1, 4), qr(1, 4)]];
    let row4 = vec![vec![qr(1, 3), qi(0)], vec![qr(1, 2), qr(1, 6)], vec![qr(1, 6), qr(1, 6)]];
    out.push(make("inscribed-sp4-1", "Sp(4): inscribed triangle through the edge midpoints, root lattice", vec![sp4.clone()], &row3, roots_lattice, expect(Overall::Spherical)));
    out.push(make("inscribed-sp4-2", "Sp(4): inscribed triangle at thirds, root lattice", vec![sp4.clone()], &row4, roots_lattice, expect(Overall::Spherical)));
    out.push(make("inscribed-sp4-1-P", "Sp(4) row with the weight lattice (not in the table)", vec![sp4.clone()], &row3, weights, expect(Overall::Inconclusive)));
    out.push(make("inscribed-sp4-2-P", "Sp(4) row with the weight lattice (not in the table)", vec![sp4], &row4, weights, expect(Overall::Inconclusive)));
    let g2 = FactorSpec::affine(Family::G, 2);
    let v0 = linalg::zeros(3);
    let right = vertex_of_type(&g2, "A1xA1");
    let top = vertex_of_type(&g2, "A2");
    let tri = vec![along(&v0, &right, qr(2, 3)), along(&right, &top, qr(1, 3)), along(&v0, &top, qr(2, 3))];
    out.push(make("inscribed-G2", "G2: inscribed triangle, root lattice", vec![g2], &tri, roots_lattice, expect(Overall::Spherical)));
}

/// The registry, in a fixed order.
pub fn builtin_examples() -> Vec<BuiltinExample> {
    let mut out = Vec::new();
    rank_one(&mut out);
    spinning(&mut out);
    quaternionic(&mut out);
    doubles(&mut out);
    disymmetric(&mut out);
    surjective(&mut out);
    inscribed(&mut out);
    out
}

pub fn builtin(name: &str) -> Option<BuiltinExample> {
    builtin_examples().into_iter().find(|e| e.name == name)
}

/// A single example, or a named group: `su2-all` (the three genuine
/// SU(2) pairs) or any prefix ending in `*`.
pub fn example_group(name: &str) -> Result<Vec<BuiltinExample>> {
    let all = builtin_examples();
    let picked: Vec<BuiltinExample> = match name {
        "su2-all" => all.into_iter().filter(|e| ["su2-P", "su2-2P", "su2-4P"].contains(&e.name.as_str())).collect(),
        n if n.ends_with('*') => all.into_iter().filter(|e| e.name.starts_with(&n[..n.len() - 1])).collect(),
        n => all.into_iter().filter(|e| e.name == n).collect(),
    };
    if picked.is_empty() {
        return Err(Error::Unsupported(format!("unknown example {name:?}")));
    }
    Ok(picked)
}

/// Whether two affine functions agree on an affine subspace.
fn same_on(span: &AffineSpan, ip: &InnerProduct, f: &AffineFunctional, g: &crate::polytope::LinForm) -> bool {
    let at = |x: &[Q]| f.eval(ip, x) - g.eval(x);
    at(&span.base).is_zero() && span.directions.iter().all(|d| (f.eval(ip, &linalg::add(&span.base, d)) - f.eval(ip, &span.base) - g.linear(d)).is_zero())
}

/// Re-verifies an example from scratch and compares with its expectation.
pub fn run_example(ex: &BuiltinExample, catalog: &Catalog) -> Result<ExampleOutcome> {
    let report = check_pair(&ex.pair, catalog)?;
    let mut mismatches = Vec::new();
    let e = &ex.expected;
    if report.overall != e.overall {
        mismatches.push(format!("overall {} (expected {})", report.overall, e.overall));
    }
    if let Some(w) = &e.witnesses {
        let mut got: Vec<String> = report.vertices.iter().filter_map(|v| v.witness().map(str::to_string)).collect();
        got.sort();
        if &got != w {
            mismatches.push(format!("witnesses {got:?} (expected {w:?})"));
        }
    }
    if let Some(t) = &e.phi_m_type {
        let got = report.phi_m.as_ref().map(|p| p.cartan_type.to_string());
        if got.as_deref() != Some(t.as_str()) {
            mismatches.push(format!("Phi_M type {} (expected {t})", got.unwrap_or_else(|| "none".into())));
        }
    }
    if let Some(rs) = &e.phi_m_roots {
        let ip = ex.pair.ip();
        let span = ex.pair.polytope.affine_span();
        let want = rs.iter().map(|s| parse_affine(s, ip.dim())).collect::<Result<Vec<_>>>()?;
        let got = report.phi_m.as_ref().map(|p| p.simple.clone()).unwrap_or_default();
        let ok = got.len() == want.len() && want.iter().all(|w| got.iter().any(|g| same_on(span, ip, g, w)));
        if !ok {
            let shown = report.phi_m.as_ref().map(|p| p.display.clone()).unwrap_or_default();
            mismatches.push(format!("Phi_M roots {shown:?} (expected {rs:?})"));
        }
    }
    Ok(ExampleOutcome { name: ex.name.clone(), report, mismatches })
}
