use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} outside supported range 2..=32")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#x} has degree {found}, expected {expected}")]
    DegreeMismatch { modulus: u64, expected: u32, found: u32 },
    #[error("modulus {0:#x} is reducible over F_2")]
    ReducibleModulus(u64),
    #[error("element {bits:#x} does not fit in F_2^{n}")]
    ElementOutOfRange { bits: u64, n: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{k} does not divide extension degree {n}")]
    NotADivisor { k: u32, n: u32 },
    #[error("3 does not divide 2^{0} - 1")]
    NotDivisible(u32),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("tower construction needs an even extension degree, got {0}")]
    OddDegree(u32),
    #[error("gamma {0:#x} lies in the subfield")]
    GammaInSubfield(u32),
    #[error("z = {0:#x} is not in the subfield")]
    ZNotInSubfield(u32),
    #[error("{0:#x} is not in the subfield")]
    NotInSubfield(u32),
    #[error("linear coefficient of the quadratic is zero")]
    ZeroLinearCoefficient,
    #[error("quartic needs a0 * a1 != 0")]
    ZeroCoefficient,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("denominator {den} not invertible modulo {modulus}")]
    NonInvertibleDenominator { den: i64, modulus: u64 },
    #[error("{family}: condition violated: {reason}")]
    ConditionViolated { family: String, reason: String },
    #[error("exhaustive check over F_2^{0} exceeds the 2^28 element guard")]
    FieldTooLarge(u32),
    #[error("{d} * {s} != 2^n - 1 = {order}")]
    BadFactorization { d: u64, s: u64, order: u64 },
    #[error("m = {0} too large for a full sweep (max 12)")]
    RangeTooLarge(u32),
    #[error("parse error: {0}")]
    Parse(String),
}
