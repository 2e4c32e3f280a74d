//! The carry of a base-`p` digit product to the next position.
//!
//! For odd `p` the carry of multiplying `n` digits is
//! `x1...xn * (Psi(x1...xn) - sum_j Psi(x_j) + (n-1) Psi(1))` where the
//! auxiliary polynomial `Psi` has coefficient `B_{p-1-i} / (p-1-i)` mod `p`
//! at `t^i`. Only even powers and the top power `t^(p-2)` survive, and
//! `Psi(1)` is Wilson's quotient mod `p`. The module also carries the
//! `Z/p^2` reading of `Psi`: the gap between the naive section of the unit
//! group and the Teichmuller section, which ties it to Fermat quotients.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::bernoulli::bernoulli;
use crate::error::{Error, Result};
use crate::fp::{add_mod, inv_mod, mul_mod, pow_mod, rational_mod, FpElem, Prime};
use crate::mpoly::MPoly;

/// The auxiliary polynomial `Psi` for one odd prime: coefficients of
/// `t^1 ... t^(p-2)` and the value `Psi(1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PsiAux {
    modulus: Prime,
    /// `coeffs[i - 1]` is the coefficient of `t^i`.
    coeffs: Vec<u64>,
    psi1_const: FpElem,
}

impl PsiAux {
    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    /// Coefficient of `t^i`, `1 <= i <= p-2`.
    pub fn coeff(&self, i: usize) -> FpElem {
        self.modulus.elem(self.coeffs[i - 1])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `Psi(1)`, the sum of the coefficients.
    pub fn at_one(&self) -> FpElem {
        self.psi1_const
    }

    pub fn eval(&self, t: FpElem) -> FpElem {
        assert_eq!(t.modulus(), self.modulus, "point with foreign modulus");
        let pv = self.modulus.get();
        let mut acc = 0u64;
        let mut power = t.value(); // t^i, starting at i = 1
        for &c in &self.coeffs {
            acc = add_mod(acc, mul_mod(c, power, pv), pv);
            power = mul_mod(power, t.value(), pv);
        }
        self.modulus.elem(acc)
    }

    /// The complementary map `t -> Psi(1) - Psi(t)`; vanishes at `1` and
    /// equals the negated Fermat quotient on nonzero residues.
    pub fn bar(&self, t: FpElem) -> FpElem {
        self.psi1_const - self.eval(t)
    }

    /// Text form with explicit coefficients and exponents, highest first,
    /// e.g. `2*t^3 + 3*t^2`.
    pub fn to_text(&self) -> String {
        let terms: Vec<String> = (1..=self.coeffs.len())
            .rev()
            .filter(|&i| self.coeffs[i - 1] != 0)
            .map(|i| format!("{}*t^{}", self.coeffs[i - 1], i))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

fn psi_cache() -> &'static RwLock<HashMap<u64, Arc<PsiAux>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<PsiAux>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Builds (and caches) the auxiliary polynomial for an odd prime.
///
/// Every coefficient is computed from the first form
/// `B_{p-1-i} / (p-1-i)` — including odd `i`, whose Bernoulli numerators
/// vanish — and the structural facts are then asserted: odd coefficients
/// below the top are zero and the top coefficient is `(p-1)/2`.
pub fn psi_aux(p: Prime) -> Result<Arc<PsiAux>> {
    if !p.is_odd() {
        return Err(Error::OddPrimeRequired);
    }
    if let Some(hit) = psi_cache().read().unwrap().get(&p.get()) {
        return Ok(hit.clone());
    }
    let pv = p.get();
    let mut coeffs = Vec::with_capacity(pv as usize - 2);
    for i in 1..=pv - 2 {
        let l = (pv - 1 - i) as usize;
        let b = bernoulli(l);
        let quotient = b / crate::fp::ratio(l as i64, 1);
        // Indices stay below p - 1, so von Staudt-Clausen keeps every
        // denominator coprime to p; a failure here is a convention bug.
        let c = rational_mod(&quotient, pv)
            .expect("Bernoulli denominators below B_{p-1} are coprime to p");
        coeffs.push(c);
    }
    for i in 1..pv - 2 {
        if i % 2 == 1 {
            assert_eq!(coeffs[i as usize - 1], 0, "odd coefficient {i} must vanish");
        }
    }
    assert_eq!(
        coeffs[pv as usize - 3],
        (pv - 1) / 2,
        "top coefficient must be (p-1)/2"
    );
    let psi1_const = p.elem(coeffs.iter().fold(0, |acc, &c| add_mod(acc, c, pv)));
    let aux = Arc::new(PsiAux {
        modulus: p,
        coeffs,
        psi1_const,
    });
    psi_cache()
        .write()
        .unwrap()
        .entry(pv)
        .or_insert_with(|| aux.clone());
    Ok(aux)
}

/// Digit 1 (the `p^1` place) of the exact integer product of the lifts.
pub fn carry_oracle_mul(x: &[FpElem]) -> FpElem {
    assert!(!x.is_empty(), "oracle needs at least one factor");
    let p = x[0].modulus();
    let mut prod = BigUint::from(1u32);
    for v in x {
        assert_eq!(v.modulus(), p, "factors with mixed moduli");
        prod *= BigUint::from(v.value());
    }
    let digit = (prod / BigUint::from(p.get())) % BigUint::from(p.get());
    p.elem(digit.to_u64().expect("digit below p"))
}

/// The reduced polynomial of the product carry for `n` digits over an odd
/// prime. Zero for `n = 1`; per-variable degrees stay below `p`, so the
/// assembled form needs no reduction.
pub fn psi1_poly(n: usize, p: Prime) -> Result<MPoly> {
    let aux = psi_aux(p)?;
    let pv = p.get();
    let mut out = MPoly::zero(p, n);
    if n == 1 {
        return Ok(out); // single digits never carry
    }
    // product * Psi(product): monomial (i+1, ..., i+1)
    for (idx, &c) in aux.coeffs().iter().enumerate() {
        let i = idx as u32 + 1;
        out.add_term(&vec![i + 1; n], c);
    }
    // -product * Psi(x_j): monomial with i+1 at j and 1 elsewhere
    for j in 0..n {
        for (idx, &c) in aux.coeffs().iter().enumerate() {
            let i = idx as u32 + 1;
            let mut exps = vec![1u32; n];
            exps[j] = i + 1;
            out.add_term(&exps, pv - c);
        }
    }
    // (n-1) * Psi(1) * product
    let constant = mul_mod((n as u64 - 1) % pv, aux.at_one().value(), pv);
    out.add_term(&vec![1u32; n], constant);
    debug_assert!(out.is_reduced());
    Ok(out)
}

/// Number of monomials in the reduced product carry. `(n+1)(p-1)/2` from
/// the power monomials, plus one for the product term unless
/// `(n-1) Psi(1)` vanishes mod `p` — which happens for Wilson primes and
/// whenever `p` divides `n - 1`.
pub fn monomial_count_psi1(n: usize, p: Prime) -> Result<usize> {
    Ok(psi1_poly(n, p)?.metrics().monomials)
}

fn require_squarable(p: Prime) -> Result<u64> {
    if !p.is_odd() {
        return Err(Error::OddPrimeRequired);
    }
    let pv = p.get();
    pv.checked_mul(pv).ok_or(Error::PrimeTooLarge(pv))
}

/// The Teichmuller lift of a nonzero residue into `Z/p^2`: the value
/// `x^p mod p^2`, the unique multiplicative section of the reduction map.
pub fn teichmuller_lift(x: FpElem) -> Result<u64> {
    let p2 = require_squarable(x.modulus())?;
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(pow_mod(x.value(), x.modulus().get(), p2))
}

/// The gap between the naive section `x -> x mod p^2` and the Teichmuller
/// section, read in `F_p`: `(x * [x]^(-1) - 1) / p`.
///
/// Equals `Psi(1) - Psi(x)` and the negated Fermat quotient of the lift.
pub fn section_alpha(x: FpElem) -> Result<FpElem> {
    let p2 = require_squarable(x.modulus())?;
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let pv = x.modulus().get();
    let teich = teichmuller_lift(x)?;
    let teich_inv = inv_mod(teich, p2).expect("units of Z/p^2 are invertible");
    let ratio = mul_mod(x.value(), teich_inv, p2);
    debug_assert_eq!(ratio % pv, 1, "the two sections agree mod p");
    Ok(x.modulus().elem((ratio - 1) / pv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::add_carry::phi_poly;
    use crate::bernoulli::{fermat_quotient, wilson_quotient};
    use crate::fp::is_prime;
    use crate::mpoly::agrees_on_domain;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn psi_coeff_map(aux: &PsiAux) -> Vec<(usize, u64)> {
        aux.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(idx, &c)| (idx + 1, c))
            .collect()
    }

    #[test]
    fn psi_for_small_primes_matches_known_tables() {
        // (p, nonzero coefficients of t^i as (i, c), Psi(1))
        let cases: &[(u64, &[(usize, u64)], u64)] = &[
            (3, &[(1, 1)], 1),
            (5, &[(2, 3), (3, 2)], 0),
            (7, &[(2, 6), (4, 3), (5, 3)], 5),
            (11, &[(2, 6), (4, 10), (6, 1), (8, 1), (9, 5)], 1),
            (13, &[(2, 7), (4, 2), (6, 8), (8, 4), (10, 12), (11, 6)], 0),
            (
                17,
                &[
                    (2, 10),
                    (4, 6),
                    (6, 4),
                    (8, 8),
                    (10, 11),
                    (12, 16),
                    (14, 10),
                    (15, 8),
                ],
                5,
            ),
            (
                19,
                &[
                    (2, 14),
                    (4, 8),
                    (6, 3),
                    (8, 18),
                    (10, 11),
                    (12, 4),
                    (14, 3),
                    (16, 8),
                    (17, 9),
                ],
                2,
            ),
        ];
        for &(pv, coeffs, at_one) in cases {
            let aux = psi_aux(p(pv)).unwrap();
            assert_eq!(psi_coeff_map(&aux), coeffs.to_vec(), "Psi for p = {pv}");
            assert_eq!(aux.at_one().value(), at_one, "Psi(1) for p = {pv}");
        }
        assert_eq!(psi_aux(p(2)), Err(Error::OddPrimeRequired));
    }

    #[test]
    fn psi_text_forms() {
        assert_eq!(psi_aux(p(5)).unwrap().to_text(), "2*t^3 + 3*t^2");
        assert_eq!(psi_aux(p(7)).unwrap().to_text(), "3*t^5 + 3*t^4 + 6*t^2");
        assert_eq!(
            psi_aux(p(11)).unwrap().to_text(),
            "5*t^9 + 1*t^8 + 1*t^6 + 10*t^4 + 6*t^2"
        );
        assert_eq!(psi_aux(p(3)).unwrap().to_text(), "1*t^1");
    }

    #[test]
    fn psi_structure_for_all_odd_primes_below_100() {
        for pv in (3..100).filter(|&v| is_prime(v)) {
            let aux = psi_aux(p(pv)).unwrap();
            assert_eq!(aux.coeffs().len() as u64, pv - 2);
            for i in 1..(pv - 2) as usize {
                if i % 2 == 1 {
                    assert_eq!(aux.coeff(i).value(), 0, "p = {pv}, i = {i}");
                }
            }
            assert_eq!(
                aux.coeff((pv - 2) as usize).value(),
                (pv - 1) / 2,
                "p = {pv}"
            );
        }
    }

    #[test]
    fn psi_at_one_is_wilsons_quotient_below_200() {
        for pv in (3..200).filter(|&v| is_prime(v)) {
            let aux = psi_aux(p(pv)).unwrap();
            assert_eq!(aux.at_one().value(), wilson_quotient(p(pv)), "p = {pv}");
        }
        // the two known small Wilson primes
        assert_eq!(psi_aux(p(5)).unwrap().at_one().value(), 0);
        assert_eq!(psi_aux(p(13)).unwrap().at_one().value(), 0);
    }

    #[test]
    fn oracle_examples() {
        let p7 = p(7);
        assert_eq!(carry_oracle_mul(&[p7.elem(6), p7.elem(6)]), p7.elem(5));
        let p5 = p(5);
        assert_eq!(
            carry_oracle_mul(&[p5.elem(4), p5.elem(4), p5.elem(4)]),
            p5.elem(2)
        );
        assert_eq!(
            carry_oracle_mul(&[p5.elem(0), p5.elem(3), p5.elem(4)]),
            p5.elem(0)
        );
    }

    #[test]
    fn product_carry_for_p3_is_the_double_falling_factorial() {
        // x(x-1) y(y-1) expanded over F_3
        let f = psi1_poly(2, p(3)).unwrap();
        assert_eq!(
            f,
            MPoly::from_terms(
                p(3),
                2,
                [
                    (vec![2, 2], 1),
                    (vec![2, 1], 2),
                    (vec![1, 2], 2),
                    (vec![1, 1], 1)
                ]
            )
        );
    }

    #[test]
    fn single_factor_carry_is_zero() {
        for pv in [3u64, 5, 7] {
            assert!(psi1_poly(1, p(pv)).unwrap().is_zero());
            // the assembled sum also collapses termwise: build it by hand
            let aux = psi_aux(p(pv)).unwrap();
            let mut by_hand = MPoly::zero(p(pv), 1);
            for (idx, &c) in aux.coeffs().iter().enumerate() {
                let i = idx as u32 + 1;
                by_hand.add_term(&[i + 1], c);
                by_hand.add_term(&[i + 1], pv - c);
            }
            assert!(by_hand.is_zero());
        }
        assert_eq!(psi1_poly(2, p(2)), Err(Error::OddPrimeRequired));
    }

    #[test]
    fn product_carry_matches_oracle_exhaustively() {
        for pv in [3u64, 5, 7, 11, 13] {
            let f = psi1_poly(2, p(pv)).unwrap();
            assert_eq!(
                agrees_on_domain(&f, carry_oracle_mul),
                Ok(()),
                "p = {pv}, n = 2"
            );
            assert!(f.is_symmetric());
        }
        for pv in [3u64, 5, 7] {
            let f = psi1_poly(3, p(pv)).unwrap();
            assert_eq!(
                agrees_on_domain(&f, carry_oracle_mul),
                Ok(()),
                "p = {pv}, n = 3"
            );
            assert!(f.is_symmetric());
        }
    }

    #[test]
    fn product_carry_matches_oracle_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for pv in [3u64, 5, 7] {
            let pp = p(pv);
            for n in 4..=6usize {
                let f = psi1_poly(n, pp).unwrap();
                assert!(f.is_symmetric());
                for _ in 0..10_000 {
                    let point: Vec<FpElem> =
                        (0..n).map(|_| pp.elem(rng.gen_range(0..pv))).collect();
                    assert_eq!(
                        f.evaluate(&point),
                        carry_oracle_mul(&point),
                        "p = {pv}, n = {n}, point {point:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn evaluation_example_p5() {
        let f = psi1_poly(2, p(5)).unwrap();
        assert_eq!(f.evaluate(&[p(5).elem(3), p(5).elem(4)]), p(5).elem(2));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_count_psi1(2, p(3)).unwrap(), 4);
        assert_eq!(monomial_count_psi1(3, p(7)).unwrap(), 13);
        // Wilson prime: the constant product term vanishes
        assert_eq!(monomial_count_psi1(2, p(5)).unwrap(), 6);
        // p | n - 1 kills the same term without a Wilson prime
        assert_eq!(monomial_count_psi1(4, p(3)).unwrap(), 5);
        for pv in [3u64, 7, 11, 17, 19] {
            for n in 2..=4usize {
                let aux = psi_aux(p(pv)).unwrap();
                let base = (n + 1) * (pv as usize - 1) / 2;
                let product_term_survives = (n as u64 - 1) % pv != 0 && !aux.at_one().is_zero();
                let want = base + usize::from(product_term_survives);
                assert_eq!(
                    monomial_count_psi1(n, p(pv)).unwrap(),
                    want,
                    "p = {pv}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn associativity_cocycle_identity() {
        // carry(x,y) z + carry(xy, z) = x carry(y,z) + carry(x, yz),
        // the shadow of associativity one digit up
        for pv in (2..=13u64).filter(|&v| is_prime(v)) {
            let pp = p(pv);
            let psi = |a: FpElem, b: FpElem| carry_oracle_mul(&[a, b]);
            for x in 0..pv {
                for y in 0..pv {
                    for z in 0..pv {
                        let (x, y, z) = (pp.elem(x), pp.elem(y), pp.elem(z));
                        let left = psi(x, y) * z + psi(x * y, z);
                        let right = x * psi(y, z) + psi(x, y * z);
                        assert_eq!(left, right, "p = {pv}, ({x:?}, {y:?}, {z:?})");
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_carry_relation() {
        // (x+1) y = xy + y links the product carry to the addition carry:
        //   psi1(x+1, y) = psi1(x, y) + phi1(xy, y)
        // whenever x + 1 does not wrap. At x = p-1 the left side sees the
        // lift of x+1 = 0 while the right side still carries the full
        // integer (p-1+1) y = p y, so the identity picks up exactly y.
        for pv in (3..=13u64).filter(|&v| is_prime(v)) {
            let pp = p(pv);
            let phi1 = phi_poly(1, 2, pp);
            let psi1 = psi1_poly(2, pp).unwrap();
            for xv in 0..pv {
                for yv in 0..pv {
                    let (x, y) = (pp.elem(xv), pp.elem(yv));
                    let one = pp.elem(1);
                    let left = psi1.evaluate(&[x + one, y]);
                    let right = psi1.evaluate(&[x, y]) + phi1.evaluate(&[x * y, y]);
                    if xv < pv - 1 {
                        assert_eq!(left, right, "p = {pv}, x = {xv}, y = {yv}");
                    } else {
                        assert_eq!(left + y, right, "wraparound at p = {pv}, y = {yv}");
                    }
                }
            }
        }
        // the wraparound counterexample pinned down: p = 3, x = 2, y = 2
        let p3 = p(3);
        let psi1 = psi1_poly(2, p3).unwrap();
        let phi1 = phi_poly(1, 2, p3);
        assert_eq!(psi1.evaluate(&[p3.elem(0), p3.elem(2)]), p3.elem(0));
        assert_eq!(
            psi1.evaluate(&[p3.elem(2), p3.elem(2)]) + phi1.evaluate(&[p3.elem(1), p3.elem(2)]),
            p3.elem(2)
        );
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(teichmuller_lift(p(5).elem(2)).unwrap(), 7); // 2^5 = 32 = 7 mod 25
        assert_eq!(pow_mod(7, 4, 25), 1);
        assert_eq!(teichmuller_lift(p(3).elem(2)).unwrap(), 8); // 2^3 = 8 mod 9
        assert_eq!(pow_mod(8, 2, 9), 1);
        for pv in [3u64, 5, 7, 11] {
            assert_eq!(teichmuller_lift(p(pv).elem(1)).unwrap(), 1);
        }
        assert_eq!(teichmuller_lift(p(5).elem(0)), Err(Error::ZeroArgument));
        assert_eq!(teichmuller_lift(p(2).elem(1)), Err(Error::OddPrimeRequired));
    }

    #[test]
    fn teichmuller_lift_is_multiplicative() {
        for pv in (3..=31u64).filter(|&v| is_prime(v)) {
            let pp = p(pv);
            let p2 = pv * pv;
            for x in 1..pv {
                let tx = teichmuller_lift(pp.elem(x)).unwrap();
                // order divides p - 1
                assert_eq!(tx % pv, x);
                assert_eq!(pow_mod(tx, pv - 1, p2), 1, "p = {pv}, x = {x}");
                for y in 1..pv {
                    let ty = teichmuller_lift(pp.elem(y)).unwrap();
                    let txy = teichmuller_lift(pp.elem(x) * pp.elem(y)).unwrap();
                    assert_eq!(mul_mod(tx, ty, p2), txy, "p = {pv}, x = {x}, y = {y}");
                }
            }
        }
    }

    #[test]
    fn section_gap_examples_and_link_to_psi() {
        assert_eq!(section_alpha(p(3).elem(2)).unwrap(), p(3).elem(2));
        for pv in (3..50u64).filter(|&v| is_prime(v)) {
            let pp = p(pv);
            let aux = psi_aux(pp).unwrap();
            for x in 1..pv {
                let alpha = section_alpha(pp.elem(x)).unwrap();
                assert_eq!(alpha, aux.bar(pp.elem(x)), "p = {pv}, x = {x}");
                // alpha is the negated Fermat quotient of the lift
                let q = fermat_quotient(x, pp).unwrap();
                assert_eq!(alpha, -pp.elem(q), "p = {pv}, x = {x}");
            }
            assert_eq!(section_alpha(pp.elem(1)).unwrap(), pp.elem(0));
        }
    }

    #[test]
    fn fermat_quotient_slice_below_100() {
        // Psi(x) - Psi(1) = q_p(x) for every nonzero x
        for pv in (3..100u64).filter(|&v| is_prime(v)) {
            let pp = p(pv);
            let aux = psi_aux(pp).unwrap();
            for x in 1..pv {
                let lhs = aux.eval(pp.elem(x)) - aux.at_one();
                assert_eq!(
                    lhs.value(),
                    fermat_quotient(x, pp).unwrap(),
                    "p = {pv}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn difference_equation_of_the_section_gap() {
        // (a+1) bar(a+1) - a bar(a) = ([a] + 1 - [a+1]) / p for a not in {0, -1}
        for pv in (3..=31u64).filter(|&v| is_prime(v)) {
            let pp = p(pv);
            let p2 = pv * pv;
            let aux = psi_aux(pp).unwrap();
            for a in 1..pv - 1 {
                let x = pp.elem(a);
                let x1 = pp.elem(a + 1);
                let lhs = x1 * aux.bar(x1) - x * aux.bar(x);
                let ta = teichmuller_lift(x).unwrap();
                let ta1 = teichmuller_lift(x1).unwrap();
                let gap = (ta + 1 + p2 - ta1) % p2;
                assert_eq!(gap % pv, 0, "p = {pv}, a = {a}");
                assert_eq!(lhs.value(), (gap / pv) % pv, "p = {pv}, a = {a}");
            }
        }
    }
}
