use thiserror::Error;

/// Errors reported by group construction, search, and certificate handling.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    /// A modulus of zero was supplied where a positive integer is required.
    #[error("modulus must be a positive integer")]
    InvalidModulus,

    /// The group order does not fit in `usize`, so elements cannot be indexed.
    #[error("group order does not fit in a machine word")]
    OrderOverflow,

    /// The group order exceeds a configured memory cap.
    #[error("group order {order} exceeds the configured cap of {cap}")]
    OrderCap { order: usize, cap: usize },

    /// Too many prime power components for decomposition enumeration.
    #[error("total rank {rank} exceeds the decomposition cap of {cap}")]
    RankCap { rank: usize, cap: usize },

    /// An element has the wrong number of coordinates for the group.
    #[error("element has {got} coordinates, group has {want}")]
    CoordinateCount { got: usize, want: usize },

    /// A coordinate is not reduced modulo its modulus.
    #[error("coordinate {value} out of range for modulus {modulus}")]
    CoordinateRange { value: u64, modulus: u64 },

    /// An element index is outside `0..order`.
    #[error("index {index} out of range for a group of order {order}")]
    IndexRange { index: usize, order: usize },

    /// A group description string could not be parsed.
    #[error("cannot parse group: {0}")]
    GroupSyntax(String),

    /// A weight list was empty after reduction.
    #[error("weight set must contain at least one weight")]
    EmptyWeights,

    /// A weight set built for one exponent was applied to a group with another.
    #[error("weight set has exponent {weights}, group has exponent {group}")]
    ExponentMismatch { weights: u64, group: u64 },

    /// The brute force evaluator refuses groups above its order cap.
    #[error("brute force cap is {cap}, group has order {order}")]
    BruteCap { order: usize, cap: usize },

    /// A construction was invoked outside its domain of validity.
    #[error("construction precondition failed: {0}")]
    Precondition(String),

    /// A builder produced a certificate that failed verification. This is a
    /// hard error: it falsifies the builder, never the verifier.
    #[error("construction certificate failed verification: {0}")]
    ConstructionInvalid(String),

    /// A table row cross check failed, meaning two independent derivations of
    /// the same constant disagree.
    #[error("cross check failed: {0}")]
    CrossCheck(String),

    /// Malformed certificate JSON.
    #[error("certificate parse error: {0}")]
    CertificateParse(#[from] serde_json::Error),
}
