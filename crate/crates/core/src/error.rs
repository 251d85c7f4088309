use thiserror::Error;

use crate::int::Integer;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("composite map is nonzero (d∘d ≠ 0)")]
    CompositionNonzero,
    #[error("invalid abelian group: {0}")]
    InvalidGroup(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("coinvariants in degree {degree} are not free after inverting {p}: {group}")]
    NonFreeCoinvariants {
        degree: i64,
        p: Integer,
        group: String,
    },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(usize, usize),
    #[error("invalid Cayley table: {0}")]
    InvalidCayleyTable(String),
    #[error("{0} is not a prime")]
    NotPrime(Integer),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{p} divides {ell}: the mod-{ell} crossed product by C_{p}^k needs genuine homotopy orbits, which remain an open problem for p ≥ 5 and are not computed here")]
    PrimeDividesModulus { p: Integer, ell: Integer },
    #[error("{0} does not act invertibly on the module")]
    NotInvertible(String),
    #[error("no relation ξ² = c·ξ holds for n = {0}")]
    MissingRelation(usize),
    #[error("kernels or images of ξ did not stabilize within {0} steps")]
    NonStabilizing(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
