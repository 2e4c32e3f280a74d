//! Error type shared by all modules.

use std::fmt;

/// Errors raised on invalid inputs.
///
/// Structural misuse (mixing moduli, wrong arity, malformed exponent data)
/// panics instead; those conditions are programming errors, not inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The given modulus failed the primality check.
    NotPrime(u64),
    /// The modulus exceeds the supported word size.
    PrimeTooLarge(u64),
    /// The operation is defined for odd primes only.
    OddPrimeRequired,
    /// Inversion of zero in a field.
    ZeroInverse,
    /// The value has no inverse modulo the given modulus.
    NonUnit { value: u64, modulus: u64 },
    /// The argument must be a nonzero residue.
    ZeroArgument,
    /// Base-2 multiplication is not provided; every product carry vanishes
    /// there, so plain shift-and-add applies and is out of scope here.
    BinaryMulUnsupported,
    /// A truth-table file violated the expected format.
    TableFormat { line: usize, msg: String },
    /// A digit string contains a character outside the radix.
    BadDigit { ch: char, radix: u64 },
    /// Unknown verification suite name.
    UnknownSuite(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::PrimeTooLarge(p) => write!(f, "modulus {p} exceeds the supported 61-bit range"),
            Error::OddPrimeRequired => write!(f, "operation requires an odd prime modulus"),
            Error::ZeroInverse => write!(f, "zero has no multiplicative inverse"),
            Error::NonUnit { value, modulus } => {
                write!(f, "{value} is not invertible modulo {modulus}")
            }
            Error::ZeroArgument => write!(f, "argument must be a nonzero residue"),
            Error::BinaryMulUnsupported => write!(
                f,
                "multiplication over p = 2 is not supported (use shift-and-add; \
                 all product carries vanish in base 2)"
            ),
            Error::TableFormat { line, msg } => write!(f, "truth table, line {line}: {msg}"),
            Error::BadDigit { ch, radix } => {
                write!(f, "digit {ch:?} is out of range for radix {radix}")
            }
            Error::UnknownSuite(name) => write!(f, "unknown verification suite {name:?}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
