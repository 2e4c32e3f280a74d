//! Exact arithmetic in `F_p` and `Z/mZ`: certified primes, field elements,
//! rational lifting, Lucas binomial coefficients and primitive roots.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational. Denominators are kept positive and
/// fractions reduced by construction.
pub type Rat = num_rational::BigRational;

/// Shorthand for building a [`Rat`] from machine integers.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Moduli are capped so that a product of two residues fits in a `u128`
/// with headroom, and `p^2` (used by the Teichmuller section) fits in a
/// `u64` whenever `p < 2^32`.
pub const MAX_PRIME: u64 = 1 << 61;

/// A certified prime modulus, carrying a precomputed Barrett reciprocal so
/// residue products reduce without a hardware division.
#[derive(Clone, Copy, Debug)]
pub struct Prime {
    value: u64,
    /// `floor(2^64 / value)`; recoverable from `value`, kept for speed.
    magic: u64,
}

impl Prime {
    /// Certifies `p` by deterministic trial division.
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime {
            value: p,
            magic: ((1u128 << 64) / p as u128) as u64,
        })
    }

    pub fn get(self) -> u64 {
        self.value
    }

    /// The residue of `v` as a field element.
    pub fn elem(self, v: u64) -> FpElem {
        FpElem {
            value: v % self.value,
            modulus: self,
        }
    }

    pub fn is_odd(self) -> bool {
        self.value != 2
    }

    /// `(a * b) mod p` for reduced residues. For word-sized products the
    /// quotient estimate `hi(a b * magic)` is off by at most one, so a
    /// single conditional subtraction completes the reduction.
    #[inline]
    pub(crate) fn reduce_product(self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.value && b < self.value);
        if self.value <= u32::MAX as u64 {
            let n = a * b;
            let q = ((n as u128 * self.magic as u128) >> 64) as u64;
            let mut r = n - q * self.value;
            if r >= self.value {
                r -= self.value;
            }
            r
        } else {
            ((a as u128 * b as u128) % self.value as u128) as u64
        }
    }
}

impl PartialEq for Prime {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Eq for Prime {}

impl PartialOrd for Prime {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Prime {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.value.cmp(&other.value)
    }
}

impl std::hash::Hash for Prime {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// A residue in `[0, p-1]` tagged with its prime modulus.
///
/// Mixing moduli in an arithmetic operation is a structural bug and panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    modulus: Prime,
}

impl FpElem {
    pub fn value(self) -> u64 {
        self.value
    }

    /// The integer representative in `[0, p-1]`.
    pub fn lift(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut exp: u64) -> FpElem {
        let p = self.modulus;
        let mut base = self.value;
        let mut acc = 1u64 % p.get();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = p.reduce_product(acc, base);
            }
            base = p.reduce_product(base, base);
            exp >>= 1;
        }
        FpElem {
            value: acc,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse; zero is rejected.
    pub fn inv(self) -> Result<FpElem> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        let v = inv_mod(self.value, self.modulus.get()).expect("nonzero residue mod a prime");
        Ok(FpElem {
            value: v,
            modulus: self.modulus,
        })
    }

    fn check_same_modulus(self, other: FpElem) {
        assert_eq!(
            self.modulus, other.modulus,
            "field elements with mixed moduli: {} vs {}",
            self.modulus, other.modulus
        );
    }
}

impl Add for FpElem {
    type Output = FpElem;
    fn add(self, rhs: FpElem) -> FpElem {
        self.check_same_modulus(rhs);
        let p = self.modulus.get();
        let mut v = self.value + rhs.value; // p < 2^61, no overflow
        if v >= p {
            v -= p;
        }
        FpElem {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl Sub for FpElem {
    type Output = FpElem;
    fn sub(self, rhs: FpElem) -> FpElem {
        self + (-rhs)
    }
}

impl Mul for FpElem {
    type Output = FpElem;
    fn mul(self, rhs: FpElem) -> FpElem {
        self.check_same_modulus(rhs);
        FpElem {
            value: self.modulus.reduce_product(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        let p = self.modulus.get();
        FpElem {
            value: if self.value == 0 { 0 } else { p - self.value },
            modulus: self.modulus,
        }
    }
}

impl fmt::Debug for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Modular product of reduced residues (`a, b < m`).
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(a < m && b < m);
    if m <= u32::MAX as u64 {
        (a * b) % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let mut v = a % m + b % m;
    if v >= m {
        v -= m;
    }
    v
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    base %= m;
    let mut acc = 1u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` (any modulus), or `None` when `gcd(a, m) > 1`.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Image of a rational in `Z/mZ`: the numerator times the inverse of the
/// denominator. Well defined exactly when the denominator is a unit mod `m`,
/// and independent of the fraction representation.
pub fn rational_mod(a: &Rat, m: u64) -> Result<u64> {
    assert!(m >= 1, "modulus must be positive");
    let m_big = BigInt::from(m);
    let den = a
        .denom()
        .mod_floor(&m_big)
        .to_u64()
        .expect("residue fits u64");
    let inv = inv_mod(den, m).ok_or(Error::NonUnit {
        value: den,
        modulus: m,
    })?;
    let num = a
        .numer()
        .mod_floor(&m_big)
        .to_u64()
        .expect("residue fits u64");
    Ok(mul_mod(num, inv, m))
}

/// Binomial coefficient `C(a, b) mod p` via the digit-wise Lucas product
/// over the base-`p` expansions of `a` and `b`.
pub fn lucas_binom(a: &BigUint, b: &BigUint, p: Prime) -> FpElem {
    let pv = p.get();
    let p_big = BigUint::from(pv);
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = 1u64 % pv;
    while !b.is_zero() {
        let (aq, ar) = a.div_rem(&p_big);
        let (bq, br) = b.div_rem(&p_big);
        let digit = binom_mod(
            ar.to_u64().expect("digit below p"),
            br.to_u64().expect("digit below p"),
            pv,
        );
        if digit == 0 {
            return p.elem(0); // a zero factor kills the whole product
        }
        acc = mul_mod(acc, digit, pv);
        a = aq;
        b = bq;
    }
    p.elem(acc)
}

/// `C(a, b) mod p` for single digits `a, b < p`.
fn binom_mod(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut num = 1u64 % p;
    let mut den = 1u64 % p;
    for t in 0..b {
        num = mul_mod(num, (a - t) % p, p);
        den = mul_mod(den, (t + 1) % p, p);
    }
    mul_mod(
        num,
        inv_mod(den, p).expect("b! is a unit mod p for b < p"),
        p,
    )
}

/// The smallest positive residue of multiplicative order `p - 1`.
///
/// For `p = 2` the unit group is trivial and `1` is returned.
pub fn primitive_root(p: Prime) -> FpElem {
    let pv = p.get();
    if pv == 2 {
        return p.elem(1);
    }
    let phi = pv - 1;
    let factors = distinct_prime_factors(phi);
    for g in 2..pv {
        if factors.iter().all(|&q| pow_mod(g, phi / q, pv) != 1) {
            return p.elem(g);
        }
    }
    unreachable!("every prime has a primitive root");
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d as u128 * d as u128 <= n as u128 {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Arithmetic surface for computations that must be built from additions,
/// multiplications and injected constants only. Plain field elements
/// implement it directly; instrumented values implement it while recording
/// operation counts and multiplicative depth.
pub trait Scalar: Clone {
    fn s_add(&self, other: &Self) -> Self;
    fn s_mul(&self, other: &Self) -> Self;
    /// Multiplication by a known constant.
    fn s_mul_const(&self, c: FpElem) -> Self;
    /// A constant injected into the same evaluation context as `self`.
    fn s_const(&self, c: FpElem) -> Self;
    /// Integer representative; for oracles and debug assertions only.
    fn s_lift(&self) -> u64;
    fn s_modulus(&self) -> Prime;
}

impl Scalar for FpElem {
    fn s_add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn s_mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn s_mul_const(&self, c: FpElem) -> Self {
        *self * c
    }
    fn s_const(&self, c: FpElem) -> Self {
        assert_eq!(self.modulus, c.modulus(), "constant with foreign modulus");
        c
    }
    fn s_lift(&self) -> u64 {
        self.value
    }
    fn s_modulus(&self) -> Prime {
        self.modulus
    }
}
