//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the domain operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A pair of parabolics was required to be nested but is not.
    #[error("parabolic {0} is not contained in {1}")]
    NotNested(String, String),
    /// The Gram constant is undefined for the whole group.
    #[error("gram constant is undefined for G (empty index set)")]
    GramUndefined,
    /// An operation that needs a proper parabolic received G.
    #[error("operation requires a proper parabolic, got G")]
    ProperParabolicRequired,
    /// A limit direction pairs to zero with a chamber wall.
    #[error("direction is degenerate: pairing with root {root:?} is {pairing:e}")]
    DegenerateDirection {
        /// The offending root, in coordinates.
        root: [f64; 3],
        /// The pairing value that vanished.
        pairing: f64,
    },
    /// A matrix that must be invertible is singular.
    #[error("matrix is singular")]
    SingularMatrix,
    /// Evaluation at the pole s = 1.
    #[error("pole of the zeta function at s = 1")]
    Pole,
    /// A quadrature did not reach the requested tolerance.
    #[error("tolerance not met: best estimate {estimate:e} with error {error:e} (requested {requested:e})")]
    ToleranceNotMet {
        /// Best available value.
        estimate: f64,
        /// Error estimate attached to the value.
        error: f64,
        /// The tolerance that was requested.
        requested: f64,
    },
    /// Malformed input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
