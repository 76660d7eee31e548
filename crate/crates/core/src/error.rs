use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::Place;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ValuationOfZero,
    #[error("factorization limit exceeded: |{0}| is above the configured bound")]
    FactorLimitExceeded(BigInt),
    #[error("{0} is not a prime")]
    NotPrime(BigInt),
    #[error("symbol entries must be nonzero")]
    ZeroSymbolEntry,
    #[error("ramification set has odd cardinality {0}")]
    RamificationParity(usize),

    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial degree {0} is not a prime")]
    CompositeDegree(usize),
    #[error("polynomial is reducible over Q")]
    Reducible,
    #[error("irreducibility could not be decided")]
    IrreducibilityUndecided,
    #[error("degree mismatch: expected {expected}, polynomial has degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid integral basis: {0}")]
    InvalidIntegralBasis(String),
    #[error("maximal order unavailable: Z[theta] not certified maximal and no integral basis given")]
    MaximalOrderUnavailable,
    #[error("automorphism search inconclusive")]
    AutomorphismInconclusive,
    #[error("index divisor at {0}: unsupported input")]
    IndexDivisor(BigInt),
    #[error("prime {0} too large for modular factorization")]
    PrimeTooLarge(BigInt),

    #[error("not full rank")]
    NotFullRank,
    #[error("does not contain 1")]
    MissingUnit,
    #[error("not multiplicatively closed")]
    NotClosed,
    #[error("not a sublattice")]
    NotSublattice,
    #[error("conductor must be a positive integer, got {0}")]
    InvalidConductor(BigInt),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("d = {0} defines no quadratic field")]
    NoQuadraticField(BigInt),
    #[error("L does not embed in A: place {0} splits in L")]
    NoEmbedding(Place),
    #[error("invalid ramification set (singleton)")]
    SingletonRamification,
    #[error("place {0} splits in L: no embedding")]
    SplitPlace(BigInt),
    #[error("degree {0} is not an odd prime")]
    NotOddDegree(usize),
    #[error("infinite ramification is only representable in degree 2")]
    InfiniteRamificationOddDegree,

    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Input problems, as opposed to limits of the computation or bugs.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::AutomorphismInconclusive | Error::IrreducibilityUndecided | Error::Internal(_))
    }
}
