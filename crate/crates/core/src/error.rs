use thiserror::Error;

/// Errors raised by the library. Mathematical outcomes such as an
/// unverified vertex are results, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gram matrix is not symmetric positive definite")]
    NotPositiveDefinite,
    #[error("lattice is not contained in the larger lattice")]
    NotSublattice,
    #[error("matrix is singular")]
    Singular,
    #[error("invalid root system type: {0}")]
    InvalidType(String),
    #[error("invalid twist: {0}")]
    InvalidTwist(String),
    #[error("functional has zero gradient")]
    ConstantFunctional,
    #[error("point is outside the alcove: {0}")]
    OutsideAlcove(String),
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("point is not in the polytope")]
    NotInPolytope,
    #[error("point is not a vertex of the polytope")]
    NotAVertex,
    #[error("non-integral Cartan pairing between simple roots {0} and {1}")]
    NonIntegralCartan(usize, usize),
    #[error("invalid pair: {0}")]
    PairInvalid(String),
    #[error("invalid catalog entry {name:?}: {reason}")]
    CatalogInvalid { name: String, reason: String },
    #[error("simple roots {0} and {1} meet at an angle that is not of the form pi - pi/l")]
    AngleViolation(usize, usize),
    #[error("no point is strictly positive on all simple roots")]
    NoInteriorPoint,
    #[error("simple root {0} is redundant")]
    Redundancy(usize),
    #[error("incoherent local root assignment: {0}")]
    IncoherentAssignment(String),
    #[error("global root system validation failed: {0}")]
    ValidationFailure(String),
    #[error("polytope misses the wall {0}")]
    WallNotMet(String),
    #[error("lattice is not of adjoint type: {0}")]
    NotAdjoint(String),
    #[error("{0}")]
    Format(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
