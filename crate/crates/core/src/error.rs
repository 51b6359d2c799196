use thiserror::Error;

/// Errors surfaced by the fallible operations across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed rational literal `{0}`: expected `p` or `p/q` with nonzero q")]
    MalformedRational(String),

    #[error("{0} must be nonzero (invertible) here")]
    NotInvertible(&'static str),

    #[error("series reciprocal requires an invertible constant term")]
    SeriesReciprocal,

    #[error("series composition requires the inner series to have zero constant term")]
    SeriesComposition,

    #[error("insufficient sequence data: need {needed} terms, have {have}")]
    InsufficientData { needed: usize, have: usize },

    #[error("the Frobenius-Euler generating function has a pole at u = 1")]
    FrobeniusEulerPole,

    #[error("parameter {0} must be positive")]
    NonPositiveParameter(&'static str),

    #[error("sample count must be positive")]
    ZeroSamples,

    #[error("sequence window must start at offset 0 for {0}")]
    WindowOffset(&'static str),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("unknown suite `{0}`: expected all, stirling, transform, polyfam, fps, or stochastic")]
    UnknownSuite(String),

    #[error("unknown polynomial family `{0}`")]
    UnknownFamily(String),
}
