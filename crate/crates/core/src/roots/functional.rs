use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::linalg;
use crate::exact::{orthogonal_project, InnerProduct, Q};
use crate::polytope::{format_affine, AffineSpan, LinForm};

/// Affine function `α(x) = α(0) + ⟨ᾱ, x⟩`; the gradient `ᾱ` is taken with
/// respect to the ambient inner product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineFunctional {
    pub gradient: Vec<Q>,
    pub constant: Q,
}

impl AffineFunctional {
    pub fn new(gradient: Vec<Q>, constant: Q) -> Self {
        AffineFunctional { gradient, constant }
    }

    pub fn linear(gradient: Vec<Q>) -> Self {
        AffineFunctional { gradient, constant: Q::zero() }
    }

    pub fn dim(&self) -> usize {
        self.gradient.len()
    }

    pub fn is_constant(&self) -> bool {
        linalg::is_zero(&self.gradient)
    }

    pub fn eval(&self, ip: &InnerProduct, x: &[Q]) -> Q {
        &self.constant + ip.ip(&self.gradient, x)
    }

    /// The same function as a standard-dot affine form.
    pub fn to_linform(&self, ip: &InnerProduct) -> LinForm {
        LinForm { a: ip.lower(&self.gradient), c: self.constant.clone() }
    }

    pub fn from_linform(ip: &InnerProduct, f: &LinForm) -> Self {
        AffineFunctional { gradient: ip.raise(&f.a), constant: f.c.clone() }
    }

    pub fn coroot(&self, ip: &InnerProduct) -> Result<Vec<Q>> {
        ip.coroot(&self.gradient)
    }

    pub fn add(&self, other: &Self) -> Self {
        AffineFunctional { gradient: linalg::add(&self.gradient, &other.gradient), constant: &self.constant + &other.constant }
    }

    pub fn scale(&self, s: &Q) -> Self {
        AffineFunctional { gradient: linalg::scale(&self.gradient, s), constant: &self.constant * s }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::from_integer(1.into()))
    }

    /// `s_α(x) = x − α(x) ᾱ^∨`.
    pub fn reflect(&self, ip: &InnerProduct, x: &[Q]) -> Result<Vec<Q>> {
        let cr = self.coroot(ip)?;
        Ok(linalg::axpy(x, &-self.eval(ip, x), &cr))
    }

    /// `s_α(β) = β − ⟨β̄, ᾱ^∨⟩ α`.
    pub fn reflect_functional(&self, ip: &InnerProduct, beta: &AffineFunctional) -> Result<AffineFunctional> {
        let cr = self.coroot(ip)?;
        let k = ip.ip(&beta.gradient, &cr);
        Ok(beta.add(&self.scale(&-k)))
    }

    /// `⟨β̄, ᾱ^∨⟩` with `α = self`.
    pub fn pairing(&self, ip: &InnerProduct, beta: &AffineFunctional) -> Result<Q> {
        Ok(ip.ip(&beta.gradient, &self.coroot(ip)?))
    }

    /// The function restricted to an affine subspace, with gradient
    /// projected orthogonally onto its translation space.
    pub fn restrict(&self, ip: &InnerProduct, span: &AffineSpan) -> AffineFunctional {
        let g = orthogonal_project(&self.gradient, &span.directions, ip);
        let at_base = self.eval(ip, &span.base);
        let constant = at_base - ip.ip(&g, &span.base);
        AffineFunctional { gradient: g, constant }
    }

    pub fn display(&self, ip: &InnerProduct, names: &[String]) -> String {
        let f = self.to_linform(ip);
        format_affine(&f.a, &f.c, names)
    }

    pub fn require_nonconstant(&self) -> Result<()> {
        if self.is_constant() {
            Err(Error::ConstantFunctional)
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for AffineFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + <{}, x>", crate::exact::fmt_q(&self.constant), crate::exact::rational::fmt_vec(&self.gradient))
    }
}
