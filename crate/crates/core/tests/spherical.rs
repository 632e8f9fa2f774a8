//! Invariants of pair verification over the builtin corpus.

use alcove::exact::{qi, qr, Lattice, Q};
use alcove::io::{report_json, PairFile};
use alcove::polytope::{Cone, Polytope};
use alcove::spherical::{
    builtin, builtin_examples, check_pair, monoid_equal, run_example, weight_monoid_at, Catalog, IntegralPair, Overall, VertexStatus, WeightMonoid,
};
use alcove::Error;

#[test]
fn every_builtin_meets_its_expectation() {
    let cat = Catalog::shipped();
    let failures: Vec<String> = builtin_examples()
        .iter()
        .map(|ex| run_example(ex, &cat).unwrap())
        .filter(|o| !o.passed())
        .map(|o| format!("{}: {:?}", o.name, o.mismatches))
        .collect();
    assert!(failures.is_empty(), "{failures:?}");
}

/// Removing the witnesses never produces a witness whose monoid differs,
/// and removing every matching model leaves the pair Inconclusive.
#[test]
fn stripped_catalogs_never_change_the_witness_monoid() {
    let cat = Catalog::shipped();
    for ex in builtin_examples() {
        let r = check_pair(&ex.pair, &cat).unwrap();
        if r.overall != Overall::Spherical {
            continue;
        }
        let witnesses: Vec<&str> = r.vertices.iter().filter_map(|v| v.witness()).collect();
        let stripped = check_pair(&ex.pair, &cat.without(&witnesses)).unwrap();
        for (before, after) in r.vertices.iter().zip(&stripped.vertices) {
            if let VertexStatus::Verified(w) = &after.status {
                assert!(before.matches.contains(w), "{}: new witness {w} at a vertex matched by {:?}", ex.name, before.matches);
            }
        }
        let all: Vec<&str> = r.vertices.iter().flat_map(|v| v.matches.iter().map(String::as_str)).collect();
        let bare = check_pair(&ex.pair, &cat.without(&all)).unwrap();
        assert_eq!(bare.overall, Overall::Inconclusive, "{}", ex.name);
        assert!(bare.phi_m.is_none(), "{}", ex.name);
    }
}

#[test]
fn reports_are_pure_functions_of_the_input() {
    let cat = Catalog::shipped();
    for name in ["su2-4P", "disymmetric-su4", "surjective-su5-twisted", "inscribed-G2", "double-su2-scaled"] {
        let ex = builtin(name).unwrap();
        let a = report_json(&ex.pair, &check_pair(&ex.pair, &cat).unwrap()).to_string();
        let b = report_json(&ex.pair, &check_pair(&ex.pair, &Catalog::shipped()).unwrap()).to_string();
        assert_eq!(a, b, "{name}");
    }
}

fn rebuilt(pair: &IntegralPair, vertices: Vec<Vec<Q>>, basis: Vec<Vec<Q>>) -> IntegralPair {
    let polytope = Polytope::hull(&vertices).unwrap();
    let lattice = Lattice::from_generators(pair.ambient.dim(), &basis);
    IntegralPair::new(pair.name.clone(), pair.factors.clone(), polytope, lattice).unwrap()
}

/// Reversed vertex order and a unimodular change of the lattice basis give
/// the same report.
#[test]
fn reports_ignore_vertex_order_and_lattice_basis() {
    let cat = Catalog::shipped();
    for name in ["surjective-sp4", "inscribed-su3-2", "quaternionic-3-2", "double-sp4"] {
        let ex = builtin(name).unwrap();
        let base = report_json(&ex.pair, &check_pair(&ex.pair, &cat).unwrap());
        let mut vs = ex.pair.polytope.vertices().to_vec();
        vs.reverse();
        let mut basis = ex.pair.lattice.basis().clone();
        // b_0 ↦ b_0 + 2 b_last, then reverse: determinant ±1.
        let last = basis.len() - 1;
        if last > 0 {
            let shifted: Vec<Q> = basis[0].iter().zip(&basis[last]).map(|(a, b)| a + b * qi(2)).collect();
            basis[0] = shifted;
        }
        basis.reverse();
        let other = rebuilt(&ex.pair, vs, basis);
        assert_eq!(other, ex.pair, "{name}");
        let again = report_json(&other, &check_pair(&other, &cat).unwrap());
        assert_eq!(base, again, "{name}");
    }
}

#[test]
fn pair_files_preserve_reports() {
    let cat = Catalog::shipped();
    for ex in builtin_examples() {
        let text = PairFile::from_pair(&ex.pair, &ex.description).to_toml();
        let pair = alcove::io::read_pair(&text).unwrap();
        assert_eq!(pair, ex.pair, "{}", ex.name);
    }
    let ex = builtin("su2-2P").unwrap();
    let pair = alcove::io::read_pair(&PairFile::from_pair(&ex.pair, "").to_toml()).unwrap();
    assert_eq!(check_pair(&pair, &cat).unwrap(), check_pair(&ex.pair, &cat).unwrap());
}

fn ray(v: Vec<Q>, lattice: &Lattice) -> WeightMonoid {
    WeightMonoid { cone: Cone::from_generators(v.len(), &[v]), lattice: lattice.clone(), hilbert_basis: None }
}

#[test]
fn spinning_sphere_monoids() {
    let ex = builtin("spinning-sphere-2").unwrap();
    let pair = &ex.pair;
    let omega = vec![qr(1, 2), qr(-1, 2)];
    let at_zero = weight_monoid_at(pair, &[qi(0), qi(0)]).unwrap();
    assert!(monoid_equal(&at_zero, &ray(omega.clone(), &pair.lattice)));
    assert_eq!(at_zero.hilbert_basis, Some(vec![omega.clone()]));
    let at_omega = weight_monoid_at(pair, &omega).unwrap();
    let minus: Vec<Q> = omega.iter().map(|x| -x).collect();
    assert!(monoid_equal(&at_omega, &ray(minus.clone(), &pair.lattice)));
    assert_eq!(at_omega.hilbert_basis, Some(vec![minus]));
    assert!(matches!(weight_monoid_at(pair, &[qr(1, 4), qr(-1, 4)]), Err(Error::NotAVertex)));
}

#[test]
fn monoid_equality_is_cone_and_lattice_equality() {
    let l = Lattice::from_generators(1, &[vec![qi(1)]]);
    let m = ray(vec![qi(1)], &l);
    assert!(monoid_equal(&m, &m));
    assert!(!monoid_equal(&m, &ray(vec![qi(1)], &l.scale(&qi(2)))));
    let two_gens = WeightMonoid { cone: Cone::from_generators(1, &[vec![qi(1)], vec![qi(2)]]), lattice: l.clone(), hilbert_basis: None };
    assert!(monoid_equal(&m, &two_gens));
}

#[test]
fn point_polytope_has_the_zero_monoid() {
    let ex = builtin("su2-P").unwrap();
    let point = Polytope::hull(&[vec![qr(1, 4), qr(-1, 4)]]).unwrap();
    let pair = IntegralPair::new("point", ex.pair.factors.clone(), point, Lattice::zero(2)).unwrap();
    let m = weight_monoid_at(&pair, &[qr(1, 4), qr(-1, 4)]).unwrap();
    assert_eq!(m.hilbert_basis, Some(vec![]));
}
