use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision integer.
pub type Z = BigInt;
/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Q = BigRational;

pub fn zi(n: i64) -> Z {
    Z::from(n)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

pub fn qz(n: &Z) -> Q {
    Q::from_integer(n.clone())
}

/// Parses `"p"`, `"-p"` or `"p/q"` (whitespace around tokens is ignored).
pub fn parse_q(s: &str) -> Result<Q> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: Z = num.parse().map_err(|_| err())?;
    let d: Z = den.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Q::new(n, d))
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn fmt_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("({})", parts.join(", "))
}

/// Least common multiple of the denominators (1 for an empty input).
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Q>) -> Z {
    qs.into_iter().fold(Z::one(), |acc, q| acc.lcm(q.denom()))
}

/// Integer gcd of a list; zero for an empty or all-zero input.
pub fn gcd_all<'a>(zs: impl IntoIterator<Item = &'a Z>) -> Z {
    zs.into_iter().fold(Z::zero(), |acc, z| acc.gcd(z))
}

/// Scales a nonzero rational vector to the primitive integer vector with
/// the same direction.
pub fn primitive_integer(v: &[Q]) -> Vec<Z> {
    let d = common_denominator(v.iter());
    let ints: Vec<Z> = v.iter().map(|q| (q * qz(&d)).to_integer()).collect();
    let g = gcd_all(ints.iter());
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|z| z / &g).collect()
}

pub fn to_i64(z: &Z) -> Option<i64> {
    i64::try_from(z).ok()
}

pub fn abs_q(q: &Q) -> Q {
    q.abs()
}

/// Serde adapter storing a rational as a `"p/q"` string; integers are also
/// accepted on input.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QStr(pub Q);

impl Serialize for QStr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for QStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(QStr(qi(n))),
            Raw::Str(s) => parse_q(&s).map(QStr).map_err(serde::de::Error::custom),
        }
    }
}

pub fn to_qstr(v: &[Q]) -> Vec<QStr> {
    v.iter().cloned().map(QStr).collect()
}

pub fn from_qstr(v: &[QStr]) -> Vec<Q> {
    v.iter().map(|q| q.0.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-7", "1/2", "-5/3", "12/8"] {
            let q = parse_q(s).unwrap();
            assert_eq!(parse_q(&fmt_q(&q)).unwrap(), q);
        }
        assert_eq!(fmt_q(&parse_q("12/8").unwrap()), "3/2");
        assert_eq!(fmt_q(&parse_q(" -4 / 2 ").unwrap()), "-2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
        assert!(parse_q("").is_err());
    }

    #[test]
    fn reduced_with_positive_denominator() {
        let q = Q::new(zi(4), zi(-6));
        assert_eq!(q.numer(), &zi(-2));
        assert_eq!(q.denom(), &zi(3));
    }

    #[test]
    fn primitive_vector() {
        let v = vec![qr(1, 2), qr(-3, 4), qi(0)];
        assert_eq!(primitive_integer(&v), vec![zi(2), zi(-3), zi(0)]);
    }
}
