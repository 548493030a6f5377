use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("order {order} does not divide p - 1 for p = {p}")]
    InvalidOrder { order: u64, p: u64 },
    #[error("{value} is not of the form s*{m} + t*{n}")]
    NotRepresentable { value: i64, m: u64, n: u64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("curve is not star-shaped about the origin")]
    NotStarShaped,
    #[error("coordinate {index} has modulus {modulus}, which is not on the unit circle")]
    NotOnTorus { index: usize, modulus: f64 },
    #[error("unsupported parameter family: {0}")]
    UnsupportedCase(String),
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error("image is empty")]
    EmptyImage,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
