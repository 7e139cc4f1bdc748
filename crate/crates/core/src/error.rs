use thiserror::Error;

/// Errors shared across the solver modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The indicial equation has no real root; the wave function cannot be
    /// regular at the origin for these couplings.
    #[error("overcritical vector coupling: indicial discriminant {discriminant} < 0")]
    OvercriticalCoupling { discriminant: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a bound state: |E| >= M")]
    NotBoundState,

    #[error("no root in bracket ({lo}, {hi})")]
    NoRootInBracket { lo: f64, hi: f64 },

    #[error("no bound state: {0}")]
    NoBoundState(String),

    #[error("spurious branch: candidate energy fails the eigenvalue sign check")]
    SpuriousBranch,

    #[error("coefficient overflow at iteration {iteration}")]
    CoefficientOverflow { iteration: usize },

    #[error("iteration scheme not converging: {0}")]
    NotConverging(String),

    #[error("irregular solution: exponent c = {c} <= 0")]
    IrregularSolution { c: f64 },

    #[error("exponential regularization absent: s2^2 <= v2^2")]
    NoRegularization,

    #[error("complex branch: discriminant {0} < 0")]
    ComplexBranch(f64),

    #[error("quadrature did not converge within the subdivision depth cap")]
    QuadratureDepthExceeded,

    #[error("shooting integration failed: {0}")]
    Shooting(String),

    #[error("Jacobian singular in constraint solve")]
    SingularJacobian,

    #[error("no solution found in search region: {0}")]
    NoSolution(String),

    #[error("grid too coarse: discretization estimate {estimate:.3e} exceeds target {target:.3e}")]
    GridTooCoarse { estimate: f64, target: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
