//! Closed-form carry polynomials for base-`p` addition.
//!
//! The carry of `x_1 + ... + x_n` (digit lifts added in `Z`) into position
//! `i` is, by Lucas' theorem, the binomial coefficient of the sum over
//! `p^i` mod `p`. Splitting the choice of `p^i` objects across the `n`
//! addends turns that into a sum over the compositions of `p^i` with parts
//! below `p`, with one falling-factorial product and an inverse-factorial
//! coefficient per composition.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::fp::{inv_mod, mul_mod, FpElem, Prime};
use crate::interp::GammaPoly;
use crate::mpoly::MPoly;

/// The `i`-th base-`p` digit of the exact integer sum of the lifts.
pub fn carry_oracle_add(x: &[FpElem], i: u32) -> FpElem {
    assert!(!x.is_empty(), "oracle needs at least one summand");
    let p = x[0].modulus();
    let mut sum: u128 = x
        .iter()
        .map(|v| {
            assert_eq!(v.modulus(), p, "summands with mixed moduli");
            v.value() as u128
        })
        .sum();
    for _ in 0..i {
        sum /= p.get() as u128;
    }
    p.elem((sum % p.get() as u128) as u64)
}

/// All compositions of `target` into `n` parts from `[0, p-1]`, in
/// lexicographic order.
pub fn enumerate_compositions(target: u64, n: usize, p: Prime) -> Vec<Vec<u32>> {
    let cap = p.get() - 1;
    let mut out = Vec::new();
    let mut parts = vec![0u32; n];
    descend(&mut parts, 0, target, cap, n, &mut out);
    out
}

fn descend(
    parts: &mut Vec<u32>,
    pos: usize,
    remaining: u64,
    cap: u64,
    n: usize,
    out: &mut Vec<Vec<u32>>,
) {
    if pos == n {
        if remaining == 0 {
            out.push(parts.clone());
        }
        return;
    }
    // the slots left after this one can absorb at most (n - pos - 1) * cap
    let slack = (n - pos - 1) as u64 * cap;
    let lo = remaining.saturating_sub(slack);
    let hi = cap.min(remaining);
    for d in lo..=hi {
        parts[pos] = d as u32;
        descend(parts, pos + 1, remaining - d, cap, n, out);
    }
    parts[pos] = 0;
}

/// Coefficient of `X^target` in `(1 + X + ... + X^(p-1))^n`: the number of
/// restricted compositions, computed independently of the enumeration.
pub fn extended_binomial(target: u64, n: usize, p: Prime) -> BigUint {
    let width = (target + 1) as usize;
    let mut acc = vec![BigUint::zero(); width];
    acc[0] = BigUint::from(1u32);
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); width];
        for (deg, c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for step in 0..p.get().min((width - deg) as u64) {
                next[deg + step as usize] += c;
            }
        }
        acc = next;
    }
    acc.pop().unwrap_or_else(BigUint::zero)
}

/// The addition carry into position `i`, in the falling-factorial basis:
/// support is exactly the restricted compositions of `p^i`, and the
/// coefficient of a composition is the product of inverse factorials of its
/// parts mod `p`.
pub fn phi_gamma(i: u32, n: usize, p: Prime) -> GammaPoly {
    let pv = p.get();
    let target = (pv as u128).checked_pow(i).expect("carry index in range");
    if target > n as u128 * (pv - 1) as u128 {
        return GammaPoly::new(p, n, Vec::new());
    }
    let inv_fact = inverse_factorials(p);
    let terms = enumerate_compositions(target as u64, n, p)
        .into_iter()
        .map(|d| {
            let mut c = 1u64 % pv;
            for &dj in &d {
                c = mul_mod(c, inv_fact[dj as usize], pv);
            }
            (d, c)
        })
        .collect();
    GammaPoly::new(p, n, terms)
}

/// `inv_fact[d] = (d!)^(-1) mod p` for `d` in `[0, p-1]`.
fn inverse_factorials(p: Prime) -> Vec<u64> {
    let pv = p.get();
    let mut fact = vec![1u64 % pv; pv as usize];
    for d in 1..pv as usize {
        fact[d] = mul_mod(fact[d - 1], d as u64 % pv, pv);
    }
    fact.iter()
        .map(|&f| inv_mod(f, pv).expect("factorials below p are units"))
        .collect()
}

/// The reduced polynomial of the carry of an `n`-digit addition into
/// position `i`. Symmetric, with total degree at most `p^i`; zero whenever
/// `p^i` exceeds the largest possible sum `n(p-1)`; the digit sum itself
/// for `i = 0`.
pub fn phi_poly(i: u32, n: usize, p: Prime) -> MPoly {
    if i == 0 {
        // the composition sum for target 1 collapses to x1 + ... + xn
        let mut out = MPoly::zero(p, n);
        for j in 0..n {
            out = out.add(&MPoly::var(p, n, j));
        }
        return out;
    }
    let expanded = phi_gamma(i, n, p).to_mpoly();
    debug_assert!(expanded.is_reduced(), "composition parts stay below p");
    expanded
}

/// The two-addend carry in its single-sum form: pairing the parts
/// `d_2 = p - d_1` turns the inverse-factorial coefficients into
/// `(-1)^(d_1) / d_1` by Wilson's theorem. Equal to `phi_poly(1, 2, p)`;
/// for `p = 2` that general form is returned directly.
pub fn phi1_two_poly(p: Prime) -> MPoly {
    let pv = p.get();
    if pv == 2 {
        return phi_poly(1, 2, p);
    }
    let mut out = MPoly::zero(p, 2);
    for d1 in 1..pv {
        let inv_d1 = inv_mod(d1, pv).expect("unit");
        let sign_is_neg = d1 % 2 == 1;
        let coeff = if sign_is_neg { pv - inv_d1 } else { inv_d1 };
        let left = MPoly::from_univariate(
            p,
            2,
            0,
            &crate::mpoly::falling_factorial_coeffs(d1 as u32, p),
        );
        let right = MPoly::from_univariate(
            p,
            2,
            1,
            &crate::mpoly::falling_factorial_coeffs((pv - d1) as u32, p),
        );
        out = out.add(&left.mul(&right).scale(coeff));
    }
    out
}

/// Carry of `x1 + x2 + g` where the incoming carry `g` is `0` or `1`:
/// the two-addend carry plus `g * (1 - (x1 + x2 + 1)^(p-1))`, a three-
/// variable polynomial with the incoming carry as `x3`.
///
/// The correction term is the indicator of `x1 + x2 = p - 1`, the one case
/// where the incoming carry tips the column over. The polynomial agrees
/// with the true carry only for `g` in `{0, 1}`.
pub fn phi_prime_poly(p: Prime) -> MPoly {
    let pv = p.get();
    let phi1: MPoly = MPoly::from_terms(
        p,
        3,
        phi1_two_poly(p)
            .terms()
            .map(|(e, c)| (vec![e.exps()[0], e.exps()[1], 0], c)),
    );
    let x1 = MPoly::var(p, 3, 0);
    let x2 = MPoly::var(p, 3, 1);
    let g = MPoly::var(p, 3, 2);
    let base = x1.add(&x2).add(&MPoly::one(p, 3));
    let indicator = MPoly::one(p, 3).sub(&base.pow((pv - 1) as u32)).reduce();
    phi1.add(&g.mul(&indicator))
}
