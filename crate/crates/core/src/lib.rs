// Divisibility reads as `a % b == 0` and indices are the mathematical
// objects themselves in this crate; the corresponding lints fight that.
#![allow(clippy::manual_is_multiple_of)]
#![allow(clippy::needless_range_loop)]
#![allow(clippy::type_complexity)]

//! Carry polynomials over prime fields, and arbitrary-precision base-`p`
//! arithmetic executed with field additions and multiplications only.
//!
//! The carry of adding `n` base-`p` digits to position `i`, and the carry of
//! multiplying digits to the next position, are functions `(F_p)^n -> F_p`
//! and therefore polynomials. This crate builds their minimal expressions in
//! closed form, cross-checks them against integer oracles and truth-table
//! interpolation, and runs full big-integer addition and multiplication
//! through them — including over an instrumented scalar type that exposes
//! nothing but addition, multiplication and constant injection, the contract
//! of computing on homomorphically encrypted digits.

pub mod add_carry;
pub mod bernoulli;
pub mod bignum;
pub mod error;
pub mod fp;
pub mod interp;
pub mod mpoly;
pub mod mul_carry;
pub mod suites;
pub mod tracked;

pub use error::{Error, Result};
pub use fp::{FpElem, Prime, Rat, Scalar};
pub use mpoly::MPoly;
