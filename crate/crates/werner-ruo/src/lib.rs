//! Random unitary operations for the asymptotic preparation of Werner states.
//!
//! A random unitary operation (RUO) is a quantum channel of the form
//! `X ↦ Σ p_i U_i X U_i†` with unitary `U_i` and probability weights `p_i`.
//! Iterating a suitably chosen RUO drives every initial state of a bipartite
//! d×d system towards a Werner state; the convergence rate is governed by the
//! largest eigenvalue modulus of the channel strictly inside the unit circle.
//!
//! The crate provides
//!
//! - [`mat`] — dense complex matrices, Kronecker products, vectorization and a
//!   general (non-normal) eigendecomposition,
//! - [`werner`] — flip operator, symmetric/antisymmetric projectors, the Werner
//!   family, the twirling projector and a seeded Haar sampler,
//! - [`channel`] — validated RUOs, their superoperator matrices, iteration and
//!   the symmetrize / augment-identity transforms,
//! - [`spectral`] — spectra, asymptotic eigenvectors, fixed spaces, attractor
//!   residuals and convergence bounds,
//! - [`construction`] — the concrete generator families (phase `h`, cyclic `U`,
//!   rotation-like `V`, the 2×2 SL(2,3) generators) and a small word grammar,
//! - [`group`] — finite matrix-group closure, generator censuses and finite
//!   twirling,
//! - [`optimize`] — the convergence-rate objective, feasible sampling,
//!   Nelder–Mead local search and the seeded multi-start protocol,
//! - [`cli`] — the `ruo` command-line surface with CSV/JSON outputs and run
//!   manifests.
//!
//! Runnable walkthroughs for each capability live under `examples/`.

pub mod channel;
pub mod cli;
pub mod construction;
pub mod group;
pub mod mat;
pub mod optimize;
pub mod reference;
pub mod spectral;
pub mod werner;

pub use channel::{RandomUnitaryOperation, Superoperator};
pub use construction::{GeneratorSet, GeneratorWord, ParamPoint};
pub use group::{CensusRecord, ClosureOutcome, FiniteMatrixGroup};
pub use mat::{CMat, CVec, C64, EigenDecomposition};
pub use optimize::{OptimizationProblem, OptimizationResult};
pub use spectral::SpectralReport;
pub use werner::{WernerKit, WernerState};

/// Global numeric tolerance for unitarity, eigenvalue residuals and
/// unit-modulus membership.
pub const TOL: f64 = 1e-8;

/// Stricter tolerance for user-supplied probability weights.
pub const WEIGHT_TOL: f64 = 1e-10;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("eigensolver failed: {0}")]
    EigFailure(String),
    #[error("vector length {0} is not a perfect square")]
    NotVectorized(usize),
    #[error("weights sum to {sum}, expected 1 within {tol}")]
    WeightSum { sum: f64, tol: f64 },
    #[error("weight {index} is {value}, must lie in (0, 1]")]
    WeightRange { index: usize, value: f64 },
    #[error("Kraus operator {index} is not unitary (deviation {deviation:.3e})")]
    NonUnitaryKraus { index: usize, deviation: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subsystem dimension must be >= 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("parameter out of range: {0}")]
    InfeasibleParams(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("element {0} is not a member of the group")]
    NotGroupElement(usize),
    #[error("group closure exceeded cap of {0} elements")]
    ClosureCap(usize),
    #[error("group closure is not product-closed at the working tolerance")]
    ClosureInconsistent,
    #[error("census of {order}^{size} tuples exceeds the supported size")]
    CensusTooLarge { order: usize, size: usize },
    #[error("operation requires an asymptotically stationary channel")]
    NotStationary,
    #[error("operation requires a diagonalizable channel")]
    NotDiagonalizable,
    #[error("convergence rate must be < 1, got {0}")]
    RateOutOfRange(f64),
    #[error("unknown coordinate {0:?}")]
    UnknownCoordinate(String),
    #[error("empty grid")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
