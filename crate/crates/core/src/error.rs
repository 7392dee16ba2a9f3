use thiserror::Error;

/// Errors raised by the series, functional, and bound machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("divisor has a zero constant term")]
    ZeroConstantTerm,
    #[error("logarithm requires a unit series with constant term 1")]
    LogConstantNotOne,
    #[error("exponential requires a series with zero constant term")]
    ExpConstantNonZero,
    #[error("inner series of a composition must have zero constant term")]
    ComposeInnerConstant,
    #[error("series must have zero constant term to divide by z")]
    NotDivisibleByZ,
    #[error("non-finite coefficient produced at index {0}")]
    NonFinite(usize),
    #[error("series order {have} is too small, need at least {need}")]
    InsufficientOrder { have: usize, need: usize },
    #[error("function is not normalized (need a0 = 0, a1 = 1)")]
    Unnormalized,
    #[error("invalid Hankel parameters q = {q}, n = {n}")]
    InvalidHankel { q: usize, n: usize },
    #[error("Hankel entry kind does not match the requested determinant")]
    WrongEntryKind,
    #[error("Schwarz coefficients violate the admissibility inequalities")]
    InadmissibleSchwarz,
    #[error("Schwarz series must vanish at the origin")]
    NotSchwarz,
    #[error("Schur parameter t{index} lies outside the closed unit disk (|t| = {modulus})")]
    SchurOutOfDisk { index: usize, modulus: f64 },
    #[error("point ({x}, {y}) lies outside the region 0 <= x <= 1, 0 <= y <= 1 - x^2")]
    OutsideRegion { x: f64, y: f64 },
    #[error("point ({x}, {y}) is on the boundary of the region")]
    OnBoundary { x: f64, y: f64 },
    #[error("membership ratio denominator vanishes at z = {re} + {im}i")]
    VanishingDenominator { re: f64, im: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown function tag `{0}`")]
    UnknownFunction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
