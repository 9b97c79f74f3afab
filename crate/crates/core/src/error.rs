use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime below 2^32")]
    InvalidModulus(u64),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("denominator {denominator} is divisible by p = {p}")]
    DenominatorDivisibleByP { denominator: String, p: u32 },
    #[error("extension degree {0} is outside the supported range 1..={max}", max = crate::field::MAX_EXT_DEGREE)]
    InvalidExtensionDegree(usize),
    #[error("ideal is not zero-dimensional: no pure power of z{0} among the leading monomials")]
    NotZeroDimensional(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
