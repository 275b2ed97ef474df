use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("input columns are linearly dependent")]
    DependentColumns,
    #[error("denominator vanishes at t = 0")]
    PoleAtZero,
    #[error("pole at t = 0 in entry ({row}, {col}) of differential {degree}")]
    PoleAt {
        degree: usize,
        row: usize,
        col: usize,
    },
    #[error("invalid graded dimensions: {0}")]
    InvalidDims(String),
    #[error("not a complex: D_{} * D_{index} != 0", index + 1)]
    NotAComplex { index: usize },
    #[error("rank vector {0} does not satisfy r_i + r_(i+1) <= n_i")]
    NotInPoset(String),
    #[error("rank vectors belong to different graded dimensions")]
    ContextMismatch,
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("spectral sequence is not reduced: {0}")]
    NotReduced(String),
    #[error("malformed spectral sequence: {0}")]
    MalformedSpectralSequence(String),
    #[error("projective normalization needs a nonzero initial differential")]
    VariantMismatch,
    #[error("census would enumerate {candidates} differentials, over the budget of {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("truncation order {n} too small: page data differs between filtration levels {p} and {}", p + 1)]
    TruncationTooSmall { n: usize, p: usize },
}
