use thiserror::Error;

/// Every failure the library can report.
///
/// Variants map one-to-one onto the stable error codes returned by
/// [`Error::code`], which the command-line front end emits verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero quaternion")]
    DivisionByZero,
    #[error("quaternion {0} is real; its imaginary unit is undefined")]
    RealInput(String),
    #[error("point does not lie on the sphere {x} + {y}S")]
    NotOnSphere { x: f64, y: f64 },
    #[error("matrix is singular (det_h = {det:e})")]
    Singular { det: f64 },
    #[error("internal numeric error: {0}")]
    InternalNumeric(String),
    #[error("fractional linear map is undefined: c = d = 0")]
    BothZero,
    #[error("point is a pole of the map")]
    PoleInput,
    #[error("points must be pairwise distinct")]
    CoincidentPoints,
    #[error("matrix is not in Sp(1,1)")]
    NotSp11,
    #[error("d must be nonzero")]
    ZeroD,
    #[error("Re(b d^-1) must vanish, got {0:e}")]
    NonImaginaryShift(f64),
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("points are not concyclic")]
    NotConcyclic,
    #[error("transformed quadric is degenerate")]
    DegenerateResult,
    #[error("point outside the domain: {0}")]
    OutOfDomain(String),
    #[error("path needs at least two samples")]
    TooFewSamples,
    #[error("invalid canonical parameters: {0}")]
    InvalidCanonical(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::RealInput(_) => "RealInput",
            Error::NotOnSphere { .. } => "NotOnSphere",
            Error::Singular { .. } => "Singular",
            Error::InternalNumeric(_) => "InternalNumericError",
            Error::BothZero => "BothZero",
            Error::PoleInput => "PoleInput",
            Error::CoincidentPoints => "CoincidentPoints",
            Error::NotSp11 => "NotSp11",
            Error::ZeroD => "ZeroD",
            Error::NonImaginaryShift(_) => "NonImaginaryShift",
            Error::ConstraintViolation(_) => "ConstraintViolation",
            Error::NotConcyclic => "NotConcyclic",
            Error::DegenerateResult => "DegenerateResult",
            Error::OutOfDomain(_) => "OutOfDomain",
            Error::TooFewSamples => "TooFewSamples",
            Error::InvalidCanonical(_) => "InvalidCanonical",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
