use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{qi, InnerProduct, Q};
use crate::polytope::lp::{self, LpOutcome};
use crate::polytope::{LinForm, Polytope};
use crate::roots::AffineFunctional;

/// A set of functionals accepted as the simple roots of a reflection
/// group alcove.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedSystem {
    /// `{α_i ≥ 0}` on the subspace; `None` when unbounded.
    pub alcove: Option<Polytope>,
    /// Order `ℓ` of `s_i s_j` (`None` for parallel walls, `ℓ = ∞`).
    pub orders: Vec<Vec<Option<u32>>>,
}

/// Order of `s_i s_j` from the exact value `4cos²` of the angle between
/// the gradients, given `⟨ᾱ_i, ᾱ_j⟩ ≤ 0`.
fn order_from_cos2(four_cos2: &Q) -> Option<Option<u32>> {
    [(0, Some(2)), (1, Some(3)), (2, Some(4)), (3, Some(6)), (4, None)].into_iter().find(|(v, _)| *four_cos2 == qi(*v)).map(|(_, l)| l)
}

/// Checks that `fs` cut out, inside `{space = 0}`, a region with nonempty
/// interior on which no inequality is redundant and any two walls meet
/// at a crystallographic angle `π − π/ℓ`.
pub fn validate_simple_system(ip: &InnerProduct, space: &[LinForm], fs: &[AffineFunctional]) -> Result<ValidatedSystem> {
    let n = ip.dim();
    for f in fs {
        f.require_nonconstant()?;
    }
    let forms: Vec<LinForm> = fs.iter().map(|f| f.to_linform(ip)).collect();
    match lp::max_margin(n, space, &forms) {
        Some((t, _)) if t.is_positive() => {}
        _ => return Err(Error::NoInteriorPoint),
    }
    for i in 0..forms.len() {
        let others: Vec<LinForm> = forms.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, f)| f.clone()).collect();
        if let LpOutcome::Optimal { value, .. } = lp::minimize(n, &forms[i].a, space, &others) {
            if !(value + &forms[i].c).is_negative() {
                return Err(Error::Redundancy(i));
            }
        }
    }
    let mut orders = vec![vec![Some(1); fs.len()]; fs.len()];
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            let (gi, gj) = (&fs[i].gradient, &fs[j].gradient);
            let p = ip.ip(gi, gj);
            if p.is_positive() {
                return Err(Error::AngleViolation(i, j));
            }
            let four_cos2 = qi(4) * &p * &p / (ip.norm2(gi) * ip.norm2(gj));
            let l = order_from_cos2(&four_cos2).ok_or(Error::AngleViolation(i, j))?;
            orders[i][j] = l;
            orders[j][i] = l;
        }
    }
    let alcove = match Polytope::from_constraints(n, space, &forms) {
        Ok(p) => Some(p),
        Err(Error::Unbounded) => None,
        Err(e) => return Err(e),
    };
    debug_assert!(alcove.as_ref().is_none_or(|p| !p.vertices().is_empty()));
    Ok(ValidatedSystem { alcove, orders })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{build_affine_twisted, build_affine_untwisted, Family};

    fn af(g: &[i64], c: i64) -> AffineFunctional {
        AffineFunctional::new(g.iter().map(|&x| qi(x)).collect(), qi(c))
    }

    #[test]
    fn built_systems_validate() {
        for sys in [
            build_affine_untwisted(Family::A, 2).unwrap(),
            build_affine_untwisted(Family::C, 2).unwrap(),
            build_affine_untwisted(Family::G, 2).unwrap(),
            build_affine_twisted(Family::A, 4, 2, None).unwrap(),
        ] {
            let v = validate_simple_system(sys.ip(), sys.space(), sys.simple_roots()).unwrap();
            assert_eq!(v.alcove.as_ref(), sys.alcove());
        }
    }

    #[test]
    fn redundant_functional_is_rejected() {
        let fs = [af(&[1, 0], 0), af(&[-1, 0], 1), af(&[1, -1], 0), af(&[0, 1], 0)];
        assert!(matches!(validate_simple_system(&InnerProduct::standard(2), &[], &fs), Err(Error::Redundancy(0))));
    }

    #[test]
    fn acute_angle_and_empty_interior() {
        let ip = InnerProduct::standard(2);
        assert!(matches!(validate_simple_system(&ip, &[], &[af(&[1, 0], 0), af(&[1, 1], 0)]), Err(Error::AngleViolation(0, 1))));
        let fs = [af(&[1], 0), af(&[-1], 0)];
        assert!(matches!(validate_simple_system(&InnerProduct::standard(1), &[], &fs), Err(Error::NoInteriorPoint)));
        // 4cos² = 4/5 is rational but not crystallographic.
        let g = [AffineFunctional::new(vec![qi(1), qi(0)], qi(0)), AffineFunctional::new(vec![qi(-1), qi(2)], qi(0))];
        assert!(matches!(validate_simple_system(&ip, &[], &g), Err(Error::AngleViolation(0, 1))));
    }
}
