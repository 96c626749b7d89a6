use thiserror::Error;

/// Errors shared by every operation in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different algebra contexts")]
    ContextMismatch,

    #[error("bidegree mismatch: ({0},{1}) vs ({2},{3})")]
    BidegreeMismatch(usize, usize, usize, usize),

    #[error("degree overflow: bidegree ({p},{q}) does not fit in dimension {n}")]
    DegreeOverflow { p: usize, q: usize, n: usize },

    #[error("wedge of two bundle-valued forms is not defined")]
    TwoBundleOperands,

    #[error("operation requires a scalar-valued form, got bundle rank {0}")]
    BundleValued(usize),

    #[error("matrix is not Hermitian: residual {0:.3e}")]
    NotHermitian(f64),

    #[error("matrix is not symmetric: residual {0:.3e}")]
    NotSymmetric(f64),

    #[error("matrix is not antisymmetric: residual {0:.3e}")]
    NotAntisymmetric(f64),

    #[error("matrix is not positive definite: min eigenvalue {0:.3e}")]
    NotPositiveDefinite(f64),

    #[error("curvature symmetry violated at index ({i},{j},{k},{l}): residual {residual:.3e}")]
    SymmetryViolation {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        residual: f64,
    },

    #[error("frame columns are not orthonormal: residual {0:.3e}")]
    FrameNotOrthonormal(f64),

    #[error("form is not primitive: |lambda(phi)| = {0:.3e}")]
    NotPrimitive(f64),

    #[error("spectrum is empty")]
    EmptySpectrum,

    #[error("spectrum is not ascending at position {0}")]
    SpectrumNotAscending(usize),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("Lefschetz decomposition failed to reconstruct: residual {0:.3e}")]
    DecompositionFailed(f64),

    #[error("invalid curvature document: {0}")]
    InvalidDocument(String),

    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
