use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a form or state needs at least one coefficient")]
    Empty,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("the zero form has no rank")]
    ZeroForm,
    #[error("linear form (0, 0) is not allowed")]
    ZeroLinearForm,
    #[error("catalecticant order {order} is out of range for degree {degree}")]
    OrderOutOfRange { order: usize, degree: usize },
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("singular value decomposition did not converge")]
    SvdNotConverged,
    #[error("eigenvalue iteration did not converge")]
    EigenNotConverged,
    #[error("root distinctness is indeterminate at tolerance (min chordal separation {separation:e})")]
    IndeterminateRoots { separation: f64 },
    #[error("no kernel element with distinct roots at order {order} after {attempts} candidates")]
    NoDistinctRootKernel { order: usize, attempts: usize },
    #[error("weight solve failed: condition number {condition:e}, residual {residual:e}")]
    IllConditioned { condition: f64, residual: f64 },
    #[error("root clustering is ambiguous at tolerance")]
    AmbiguousClustering,
    #[error("Fock index k = {k} is out of range for N = {n}")]
    FockIndex { n: usize, k: usize },
    #[error("squeezing parameter needs q >= 1")]
    ZeroDenominator,
    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: i64, q: u64 },
    #[error("q = {q} exceeds the generic rank {generic}; no closed-form cat decomposition")]
    BeyondGenericRank { q: u64, generic: usize },
    #[error("epsilon must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),
    #[error("exact kernel search at order {order} was inconclusive")]
    InconclusiveKernelSearch { order: usize },
    #[error("exact arithmetic exceeded the {cap}-bit cap")]
    BitLengthExceeded { cap: u64 },
}
