use thiserror::Error;

/// Everything that can go wrong outside of session-file parsing.
///
/// Parse errors carry positions and live in [`crate::session::ParseError`];
/// they are wrapped here so library callers see a single error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("zero series has no initial exponent")]
    ZeroSeries { bounded: bool },

    #[error("divisor {index} is zero")]
    ZeroDivisor { index: usize },

    #[error("division of exact polynomials did not terminate by degree {cap}; supply a finite degree bound")]
    DivisionNeedsBound { cap: u32 },

    #[error("series bound {bound} is below the requested degree {needed}")]
    InsufficientBound { bound: u32, needed: u32 },

    #[error("{0}")]
    BadArgument(String),

    #[error("initial exponents {got} do not match the diagram vertices {want}")]
    ExponentsVsVertices { got: String, want: String },

    #[error("points do not lie in a common fiber: {0}")]
    FiberMismatch(String),

    #[error("arc is not fiber-coherent: {0}")]
    ArcMismatch(String),

    #[error("diagram vertex {vertex} has degree {degree}, above the working degree {k}")]
    VertexDegreeAboveK { vertex: String, degree: u32, k: u32 },

    #[error("result is not certified ({status}); pass allow_unstable to accept it")]
    Uncertified { status: String },

    #[error("{0}")]
    Parse(#[from] crate::session::ParseError),

    #[error("internal cross-check failed: {0}")]
    Internal(String),
}
