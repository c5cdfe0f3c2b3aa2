use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("insufficient coefficients: need {needed}, have {available}")]
    InsufficientCoefficients { needed: usize, available: usize },

    #[error("homography denominator vanishes at t = {t}")]
    DenominatorVanishes { t: Complex64 },

    #[error("invalid prepended coefficient at position {index}: {reason}")]
    InvalidPrepend { index: usize, reason: &'static str },

    #[error("d_{index} = {value} is not positive")]
    NonPositiveD { index: usize, value: f64 },

    #[error("zero argument")]
    ZeroArgument,

    #[error("alpha_{index} = {value} has a nonzero imaginary part")]
    ComplexAlpha { index: usize, value: Complex64 },

    #[error("alpha_{index} = {value} lies outside the open unit disc")]
    AlphaOutOfRange { index: usize, value: Complex64 },

    /// A computed Verblunsky coefficient left (-1, 1): the measure is not
    /// supported in [-1, 1].
    #[error("support violation: alpha_{index} = {value}")]
    SupportViolation { index: usize, value: f64 },

    #[error("degenerate division while computing index {index}")]
    DivisionDegenerate { index: usize },

    #[error("xi_{index} = {value} must satisfy |xi| < 1")]
    InvalidXi { index: usize, value: Complex64 },

    #[error("eta = {value} must satisfy |eta| < 1")]
    InvalidEta { value: Complex64 },

    #[error("invalid perturbation: {0}")]
    InvalidSpec(String),

    #[error("convergent has a pole at {point}")]
    PoleHit { point: Complex64 },

    #[error("evaluation point {point} is too close to the support")]
    ForbiddenPoint { point: Complex64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
