//! Exact Bernoulli numbers and polynomials, Wilson and Fermat quotients,
//! and the classical identities connecting them.
//!
//! Convention: `B_1 = -1/2`, i.e. the exponential generating function is
//! `t / (e^t - 1)`.

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fp::{rational_mod, Prime, Rat};

/// Growable cache of Bernoulli numbers, filled by the defining recurrence
/// `sum_{s=0}^{m} C(m+1, s) B_s = 0`. Reads are concurrent; extensions take
/// the single write lock.
pub struct BernoulliCache {
    values: RwLock<Vec<Rat>>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache {
            values: RwLock::new(vec![Rat::one()]),
        }
    }

    pub fn get(&self, l: usize) -> Rat {
        {
            let values = self.values.read().unwrap();
            if let Some(v) = values.get(l) {
                return v.clone();
            }
        }
        let mut values = self.values.write().unwrap();
        while values.len() <= l {
            let m = values.len();
            // C(m+1, s) built incrementally along the row
            let mut binom = BigInt::one();
            let mut acc = Rat::zero();
            for (s, b) in values.iter().enumerate() {
                acc += b * Rat::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - s) / BigInt::from(s + 1);
            }
            let next = -acc / Rat::from_integer(BigInt::from(m + 1));
            values.push(next);
        }
        values[l].clone()
    }
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

fn cache() -> &'static BernoulliCache {
    static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
    CACHE.get_or_init(BernoulliCache::new)
}

/// The exact Bernoulli number `B_l`.
pub fn bernoulli(l: usize) -> Rat {
    cache().get(l)
}

/// Coefficients of the Bernoulli polynomial
/// `B_m(x) = sum_s C(m, s) B_{m-s} x^s`, indexed by power.
pub fn bernoulli_poly(m: usize) -> Vec<Rat> {
    let mut coeffs = Vec::with_capacity(m + 1);
    let mut binom = BigInt::one();
    for s in 0..=m {
        coeffs.push(bernoulli(m - s) * Rat::from_integer(binom.clone()));
        if s < m {
            binom = binom * BigInt::from(m - s) / BigInt::from(s + 1);
        }
    }
    coeffs
}

fn eval_rat_poly(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// `1^m + 2^m + ... + N^m`, through `(B_{m+1}(N+1) - B_{m+1}) / (m+1)`.
///
/// Panics if the closed form fails to produce a non-negative integer; that
/// would mean the Bernoulli values themselves are wrong.
pub fn power_sum(m: u32, n: u64) -> BigUint {
    assert!(m >= 1 && n >= 1, "defined for positive exponent and range");
    let coeffs = bernoulli_poly(m as usize + 1);
    let at_top = eval_rat_poly(&coeffs, &Rat::from_integer(BigInt::from(n + 1)));
    let diff = at_top - bernoulli(m as usize + 1);
    let total = diff / Rat::from_integer(BigInt::from(m + 1));
    assert!(
        total.is_integer(),
        "power sum must be integral: got {total}"
    );
    let v = total.to_integer();
    assert!(!v.is_negative(), "power sum must be non-negative");
    v.to_biguint().unwrap()
}

/// Wilson's quotient `w_p = ((p-1)! + 1) / p`, reduced mod `p`.
///
/// The division is exact by Wilson's theorem; a failure means the modulus
/// was not prime.
pub fn wilson_quotient(p: Prime) -> u64 {
    let pv = p.get();
    let mut fact = BigUint::one();
    for k in 2..pv {
        fact *= BigUint::from(k);
    }
    let numer = fact + BigUint::one();
    let (q, r) = numer.div_rem(&BigUint::from(pv));
    assert!(r.is_zero(), "(p-1)! + 1 must be divisible by a prime p");
    (q % BigUint::from(pv)).to_u64().expect("residue fits u64")
}

/// Wilson's quotient mod `p` from the Bernoulli side:
/// `B_{p-1} + 1/p - 1` has denominator coprime to `p` (the denominator of
/// `B_{p-1}` carries exactly one factor `p`), and its residue is `w_p`.
pub fn wilson_from_bernoulli(p: Prime) -> Result<u64> {
    if !p.is_odd() {
        return Err(Error::OddPrimeRequired);
    }
    let pv = p.get();
    let combined = bernoulli(pv as usize - 1) + crate::fp::ratio(1, pv as i64) - Rat::one();
    rational_mod(&combined, pv)
}

/// Fermat's quotient `q_p(a) = (a^(p-1) - 1) / p` mod `p`, for `a` coprime
/// to `p`.
pub fn fermat_quotient(a: u64, p: Prime) -> Result<u64> {
    let pv = p.get();
    if a == 0 || a % pv == 0 {
        return Err(Error::NonUnit {
            value: a % pv,
            modulus: pv,
        });
    }
    let power = BigUint::from(a).pow(pv as u32 - 1) - BigUint::one();
    let (q, r) = power.div_rem(&BigUint::from(pv));
    debug_assert!(r.is_zero(), "Fermat's little theorem");
    Ok((q % BigUint::from(pv)).to_u64().expect("residue fits u64"))
}

/// The denominator predicted by von Staudt-Clausen for an even index:
/// the product of all primes `q` with `(q - 1) | l`.
pub fn staudt_clausen_denominator(l: u64) -> BigUint {
    assert!(l >= 2 && l % 2 == 0);
    let mut den = BigUint::one();
    for q in 2..=(l + 1) {
        if crate::fp::is_prime(q) && l % (q - 1) == 0 {
            den *= BigUint::from(q);
        }
    }
    den
}
