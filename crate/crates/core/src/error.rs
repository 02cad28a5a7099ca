use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkzError {
    #[error("matrix has rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("columns of the coefficient matrix are linearly dependent")]
    ColumnRankDeficient,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("no rational row vector c with c·a_j = 1 for every column")]
    HomogeneityViolation,
    #[error("weight is not generic: {0}")]
    NonGenericWeight(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("facet {0:?} has fewer than d elements")]
    FacetNotFullDim(Vec<usize>),
    #[error("g-vector {0} has nonpositive weight")]
    OrientationViolation(usize),
    #[error("lattice window of radius {0} contains no nonzero member of C(w)")]
    WindowTooSmall(i64),
    #[error("coefficient a_u(s) has a pole at s = 0 for u = {0:?}")]
    PoleAtOrigin(Vec<i64>),
    #[error("Hilbert function of the quotient has not vanished by degree {0}")]
    DegreeCapReached(usize),
    #[error("invalid perturbation basis: {0}")]
    InvalidBasis(String),
    #[error("integer {0} does not fit the machine-word lattice representation")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, GkzError>;
