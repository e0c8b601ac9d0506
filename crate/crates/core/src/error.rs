use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coin is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },
    #[error("coin has a zero diagonal entry")]
    ReducibleCoin,
    #[error("constant coin is diagonal (c21 = 0): no localization")]
    DiagonalCoin,
    #[error("parameter a must be nonzero")]
    ZeroA,
    #[error("parameter {name} = {value:.6} lies outside the open unit disk")]
    ParameterOutOfDisk { name: &'static str, value: f64 },
    #[error("qubit is not normalized (norm² = {norm_sqr:.12})")]
    QubitNotNormalized { norm_sqr: f64 },
    #[error("transition matrix size {size} too small (need even size >= {min})")]
    SizeTooSmall { size: usize, min: usize },
    #[error("truncation {dim} too small for {steps} steps from site {site} (need >= {needed})")]
    TruncationTooSmall {
        dim: usize,
        steps: usize,
        site: i64,
        needed: usize,
    },
    #[error("site {0} is not on the lattice")]
    InvalidSite(i64),
    #[error("point lies on a branch point of the weight")]
    BranchPoint,
    #[error("zeta lies on the boundary of the arc (Re(conj(a) zeta) - |a|^2 = {gap:.3e})")]
    BoundaryZeta { gap: f64 },
    #[error("envelope parameter is a cusp (denominator {denominator:.3e})")]
    CuspParameter { denominator: f64 },
    #[error("a lies on the epitrochoid within {distance:.3e}")]
    BorderlineA { distance: f64 },
    #[error("quadrature did not converge (estimate {estimate:.3e})")]
    QuadratureNotConverged { estimate: f64 },
    #[error("dense brute-force limited to {max} steps, got {steps}")]
    TooLarge { steps: usize, max: usize },
    #[error("invalid report field: {0}")]
    InvalidReport(String),
}

pub type Result<T> = std::result::Result<T, Error>;
