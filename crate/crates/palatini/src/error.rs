//! Error type shared by all modules of the crate.

use thiserror::Error;

use crate::algebra::Domain;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coefficient domain mismatch: {left} vs {right}")]
    DomainMismatch { left: Domain, right: Domain },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial is not univariate")]
    NotUnivariate,

    #[error("matrix entry is not a linear form in the expected variables")]
    NotLinearForm,

    #[error("congruence matrix is singular")]
    SingularMatrix,

    #[error("the two points are proportional and do not span a line")]
    ProportionalPoints,

    #[error("coordinates do not satisfy the rank-2 condition of a line")]
    NotALine,

    #[error("the four generators do not span a 3-space of complexes")]
    DegenerateWeb,

    #[error("point does not lie on the degeneracy locus")]
    PointNotOnLocus,

    #[error("fiber is not unique: evaluated matrix has rank {rank}, expected 3")]
    AmbiguousFiber { rank: usize },

    #[error(
        "complex at the sampled point has rank {rank}, expected a first-type complex of rank 4"
    )]
    NotFirstType { rank: usize },

    #[error("direction system has projective solution dimension {solution_dim}, expected 1 (non-generic point)")]
    NonGenericDirection { solution_dim: usize },

    #[error("window not stabilized: third differences disagree")]
    WindowNotStabilized,

    #[error("prime {prime} divides a denominator; reduction undefined")]
    NonReducible { prime: u64 },

    #[error("sampling exhausted after {attempts} attempts without a generic draw")]
    SamplingExhausted { attempts: usize },

    #[error("intersection table is inconsistent: {0}")]
    InconsistentTable(String),

    #[error("primes disagree on a sampled invariant: {0}")]
    PrimesDisagree(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
