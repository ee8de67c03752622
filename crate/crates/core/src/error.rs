use thiserror::Error;

use crate::field::Elem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {n} out of range (supported: even 4..={max})")]
    DegreeOutOfRange { n: u32, max: u32 },
    #[error("extension degree {0} is odd; the field must be GF(2^2m)")]
    OddDegree(u32),
    #[error("polynomial {modulus:#x} is not an irreducible polynomial of degree {n}")]
    NotIrreducible { modulus: u64, n: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("zero raised to a non-positive power is undefined")]
    ZeroPower,
    #[error("frobenius exponent {e} out of range 0..{n}")]
    FrobeniusExponent { e: u32, n: u32 },
    #[error("{d} does not divide {n}")]
    NotDivisor { d: u32, n: u32 },
    #[error("element {value:#x} does not fit in {n} bits")]
    ElementOutOfRange { value: u64, n: u32 },
    #[error("parameter k = {k} out of range 1..{n}")]
    KOutOfRange { k: u32, n: u32 },
    #[error("{op}: argument must be nonzero")]
    ZeroArgument { op: &'static str },
    #[error("{op}: argument {elem} outside the domain ({domain})")]
    OutsideDomain {
        op: &'static str,
        elem: Elem,
        domain: &'static str,
    },
    #[error("derivative in direction {direction} is not a 2-to-1 map onto a hyperplane")]
    NotCrooked { direction: Elem },
    #[error("(m, k) = ({m}, {k}) is not an APN parameter pair for the trinomial family")]
    NonApnParameters { m: u32, k: u32 },
    #[error("function needs a field of degree {expected}, got {got}")]
    WrongField { expected: u32, got: u32 },
    #[error("lookup table has {got} entries, expected {expected}")]
    LutLength { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
