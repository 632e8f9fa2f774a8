//! Randomized instances and the reflection/lattice properties shared by
//! the property suite and the acceptance run.

#![allow(dead_code)]

use alcove::exact::{qi, qr, InnerProduct, Lattice, Q};
use alcove::polytope::Polytope;
use alcove::roots::system::close_under_reflections;
use alcove::roots::{build_affine_twisted, build_affine_untwisted, build_finite, AffineFunctional, AffineRootSystem, Family};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};

pub const CASES: u32 = 128;
const SEED: [u8; 32] = *b"alcove-property-suite-fixed-seed";

/// A runner with a fixed seed so every run sees the same instances.
pub fn runner() -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

pub fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| qr(n, d))
}

pub fn qvec(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(small_q(), n)
}

fn nonzero_qvec(n: usize) -> impl Strategy<Value = Vec<Q>> {
    qvec(n).prop_filter("nonzero", |v| v.iter().any(|x| *x != qi(0)))
}

/// Gram matrix `AᵀA + I` with small integer `A`.
pub fn inner_product(n: usize) -> impl Strategy<Value = InnerProduct> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), n).prop_map(move |a| {
        let gram = (0..n)
            .map(|i| (0..n).map(|j| qi((0..n).map(|k| a[k][i] * a[k][j]).sum::<i64>() + i64::from(i == j))).collect())
            .collect();
        InnerProduct::new(gram).expect("positive definite")
    })
}

/// Full-rank lattice from a lower-triangular generator matrix.
pub fn full_lattice(n: usize) -> impl Strategy<Value = Lattice> {
    (prop::collection::vec(small_q(), n * n), prop::collection::vec(1i64..=3, n)).prop_map(move |(entries, diag)| {
        let rows: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| if j < i { entries[i * n + j].clone() } else if j == i { qr(diag[i], 1 + (i as i64 % 2)) } else { qi(0) }).collect())
            .collect();
        Lattice::from_generators(n, &rows)
    })
}

pub fn reflection_case() -> impl Strategy<Value = (InnerProduct, AffineFunctional, Vec<Q>, Vec<Q>)> {
    (2usize..=4).prop_flat_map(|n| (inner_product(n), nonzero_qvec(n), small_q(), qvec(n), qvec(n)))
        .prop_map(|(ip, g, c, x, y)| (ip, AffineFunctional::new(g, c), x, y))
}

/// Irreducible systems of rank at most four.
pub fn small_systems() -> Vec<AffineRootSystem> {
    let mut out = Vec::new();
    for (f, r) in [(Family::A, 1), (Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4), (Family::F, 4), (Family::G, 2)] {
        out.push(build_finite(f, r).unwrap());
        out.push(build_affine_untwisted(f, r).unwrap());
    }
    for (f, r, t) in [(Family::A, 2, 2), (Family::A, 5, 2), (Family::D, 4, 3), (Family::E, 6, 2)] {
        out.push(build_affine_twisted(f, r, t, None).unwrap());
    }
    out
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

fn err(e: alcove::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

pub fn involution(runner: &mut TestRunner) -> Result<(), TestError<(InnerProduct, AffineFunctional, Vec<Q>, Vec<Q>)>> {
    runner.run(&reflection_case(), |(ip, a, x, _)| {
        let once = a.reflect(&ip, &x).map_err(err)?;
        check(a.reflect(&ip, &once).map_err(err)? == x, "s(s(x)) != x")?;
        check(a.eval(&ip, &once) == -a.eval(&ip, &x), "s does not negate alpha")
    })
}

pub fn isometry(runner: &mut TestRunner) -> Result<(), TestError<(InnerProduct, AffineFunctional, Vec<Q>, Vec<Q>)>> {
    runner.run(&reflection_case(), |(ip, a, x, y)| {
        let (sx, sy) = (a.reflect(&ip, &x).map_err(err)?, a.reflect(&ip, &y).map_err(err)?);
        let d = |u: &[Q], v: &[Q]| ip.norm2(&u.iter().zip(v).map(|(p, q)| p - q).collect::<Vec<_>>());
        check(d(&sx, &sy) == d(&x, &y), "reflection is not an isometry")
    })
}

pub fn coroot_pairing(runner: &mut TestRunner) -> Result<(), TestError<(InnerProduct, AffineFunctional, Vec<Q>, Vec<Q>)>> {
    runner.run(&reflection_case(), |(ip, a, _, _)| {
        let cr = a.coroot(&ip).map_err(err)?;
        check(ip.ip(&a.gradient, &cr) == qi(2), "<alpha, alpha^vee> != 2")?;
        check(a.pairing(&ip, &a).map_err(err)? == qi(2), "self pairing != 2")
    })
}

pub fn cartan_integrality(runner: &mut TestRunner) -> Result<(), TestError<(usize, usize, usize)>> {
    let systems = small_systems();
    // All roots of a finite system; simple roots of an affine one.
    let roots: Vec<Vec<AffineFunctional>> = systems
        .iter()
        .map(|s| if s.is_affine() { s.simple_roots().to_vec() } else { close_under_reflections(s.ip(), s.simple_roots()).unwrap() })
        .collect();
    let sizes: Vec<usize> = roots.iter().map(Vec::len).collect();
    let strategy = (0..systems.len()).prop_flat_map(move |k| (Just(k), 0..sizes[k], 0..sizes[k]));
    runner.run(&strategy, |(k, i, j)| {
        let ip = systems[k].ip();
        let (a, b) = (&roots[k][i], &roots[k][j]);
        let p = a.pairing(ip, b).map_err(err)?;
        check(p.is_integer(), "non-integral Cartan pairing")?;
        let r = a.reflect_functional(ip, b).map_err(err)?;
        check(systems[k].is_affine() || roots[k].contains(&r), "finite root system not closed under reflection")
    })
}

pub fn double_dual(runner: &mut TestRunner) -> Result<(), TestError<(InnerProduct, Lattice)>> {
    let strategy = (1usize..=4).prop_flat_map(|n| (inner_product(n), full_lattice(n)));
    runner.run(&strategy, |(ip, l)| check(l.dual(&ip).dual(&ip) == l, "double dual differs"))
}

pub fn hnf_idempotence(runner: &mut TestRunner) -> Result<(), TestError<Vec<Vec<Q>>>> {
    let strategy = (1usize..=4).prop_flat_map(|n| prop::collection::vec(qvec(n), 1..=5));
    runner.run(&strategy, |gens| {
        let n = gens[0].len();
        let l = Lattice::from_generators(n, &gens);
        check(Lattice::from_generators(n, l.basis()) == l, "HNF is not idempotent")?;
        check(gens.iter().all(|g| l.contains(g)), "a generator is missing from its lattice")
    })
}

pub fn hull_round_trip(runner: &mut TestRunner) -> Result<(), TestError<Vec<Vec<Q>>>> {
    let strategy = (1usize..=3).prop_flat_map(|n| prop::collection::vec(qvec(n), 1..=7));
    runner.run(&strategy, |pts| {
        let p = Polytope::hull(&pts).map_err(err)?;
        check(Polytope::hull(p.vertices()).map_err(err)? == p, "hull of the vertices differs")?;
        let (eqs, ineqs) = p.h_rep();
        check(Polytope::from_constraints(p.ambient_dim(), &eqs, &ineqs).map_err(err)? == p, "H-representation round trip differs")?;
        check(pts.iter().all(|x| p.contains(x)), "an input point is outside its hull")
    })
}
