use core::fmt;

use crate::text::ParseError;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Domain errors raised by the algebraic operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The modulus must be at least 2.
    ModulusTooSmall(u64),
    /// Operands live over different rings.
    ModulusMismatch { left: u64, right: u64 },
    /// The operation needs a monic polynomial.
    NotMonic,
    /// The operation is undefined for the zero polynomial.
    ZeroPolynomial,
    /// The operation needs `Z/p` with `p` prime.
    CompositeModulus(u64),
    /// `m` was expected to divide `n`.
    NotADivisor { divisor: u64, modulus: u64 },
    /// CRT inputs must have pairwise coprime moduli.
    NotCoprime { left: u64, right: u64 },
    /// A result does not fit in a 64-bit modulus.
    Overflow,
    /// A degree argument is below what the formula is defined for.
    DegreeTooSmall { degree: u32, minimum: u32 },
    Parse(ParseError),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ModulusTooSmall(n) => write!(f, "modulus must be at least 2, got {n}"),
            Error::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: Z/{left} vs Z/{right}")
            }
            Error::NotMonic => f.write_str("polynomial must be monic"),
            Error::ZeroPolynomial => f.write_str("polynomial must be nonzero"),
            Error::CompositeModulus(n) => write!(f, "modulus {n} is not prime"),
            Error::NotADivisor { divisor, modulus } => {
                write!(f, "{divisor} does not divide {modulus}")
            }
            Error::NotCoprime { left, right } => {
                write!(f, "moduli {left} and {right} are not coprime")
            }
            Error::Overflow => f.write_str("result does not fit in a 64-bit modulus"),
            Error::DegreeTooSmall { degree, minimum } => {
                write!(f, "degree {degree} is below the minimum {minimum}")
            }
            Error::Parse(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}
