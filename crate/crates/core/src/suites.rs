//! Named verification suites over the whole crate: exhaustive oracle
//! equivalences, the classical number-theoretic identities, and the
//! end-to-end big-integer runs over tracked values.
//!
//! Each check reports a name, a verdict and a short detail line; the
//! command-line `verify` subcommand and the acceptance test target both
//! drive these functions, so the two surfaces can never drift apart.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::add_carry::{
    carry_oracle_add, enumerate_compositions, extended_binomial, phi1_two_poly, phi_gamma,
    phi_poly, phi_prime_poly,
};
use crate::bernoulli::{
    bernoulli, bernoulli_poly, fermat_quotient, power_sum, staudt_clausen_denominator,
    wilson_from_bernoulli, wilson_quotient,
};
use crate::bignum::{
    add_many_tracked, add_two_tracked, mul_listed_tracked, mul_schoolbook_tracked, Digits,
};
use crate::error::{Error, Result};
use crate::fp::{is_prime, ratio, FpElem, Prime, Rat};
use crate::interp::{interpolate, to_gamma_basis, TruthTable};
use crate::mpoly::agrees_on_domain;
use crate::mul_carry::{
    carry_oracle_mul, monomial_count_psi1, psi1_poly, psi_aux, section_alpha, teichmuller_lift,
};
use crate::tracked::CostTape;

/// Outcome of one named check.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: true,
            detail: detail.into(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: false,
            detail: detail.into(),
        }
    }
}

/// Optional overrides for the suite defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bounds {
    /// Caps every prime grid of the suite.
    pub p_max: Option<u64>,
    /// Caps the Bernoulli index grid.
    pub l_max: Option<u64>,
    /// Operand pairs per big-integer configuration.
    pub pairs: Option<usize>,
}

impl Bounds {
    fn primes(&self, default_max: u64) -> Vec<u64> {
        let cap = self.p_max.unwrap_or(default_max);
        (2..=cap).filter(|&v| is_prime(v)).collect()
    }

    fn odd_primes(&self, default_max: u64) -> Vec<u64> {
        self.primes(default_max)
            .into_iter()
            .filter(|&v| v != 2)
            .collect()
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "add-carry",
    "mul-carry",
    "bernoulli",
    "cocycle",
    "appendix",
    "bignum",
    "all",
];

/// Runs one suite by name; `all` concatenates every suite in a fixed order.
pub fn run_suite(name: &str, bounds: &Bounds) -> Result<Vec<Check>> {
    match name {
        "add-carry" => Ok(add_carry_suite(bounds)),
        "mul-carry" => Ok(mul_carry_suite(bounds)),
        "bernoulli" => Ok(bernoulli_suite(bounds)),
        "cocycle" => Ok(cocycle_suite(bounds)),
        "appendix" => Ok(appendix_suite(bounds)),
        "bignum" => Ok(bignum_suite(bounds)),
        "all" => {
            let mut checks = Vec::new();
            for suite in SUITE_NAMES.iter().filter(|&&s| s != "all") {
                checks.extend(run_suite(suite, bounds)?);
            }
            Ok(checks)
        }
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

fn p(v: u64) -> Prime {
    Prime::new(v).expect("suite primes are prime")
}

// ---------------------------------------------------------------------------
// addition carries
// ---------------------------------------------------------------------------

fn add_carry_suite(bounds: &Bounds) -> Vec<Check> {
    let mut checks = vec![addition_oracle_check(bounds)];
    checks.extend(gamma_support_checks(bounds));
    checks.push(two_addend_forms_check());
    checks.push(incoming_carry_check());
    checks.push(interpolation_uniqueness_check());
    checks
}

/// Every valid carry position for small grids: polynomial equals the digit
/// oracle on the whole domain, is symmetric, and respects the degree bound.
pub fn addition_oracle_check(bounds: &Bounds) -> Check {
    let name = "addition carries match the integer oracle";
    let mut points = 0u64;
    for pv in bounds.primes(7) {
        let pp = p(pv);
        for n in 1..=3usize {
            let mut i = 0u32;
            while (pv as u128).pow(i) <= n as u128 * (pv - 1) as u128 {
                let f = phi_poly(i, n, pp);
                if let Err(point) = agrees_on_domain(&f, |x| carry_oracle_add(x, i)) {
                    return Check::fail(name, format!("p={pv} n={n} i={i}: mismatch at {point:?}"));
                }
                if !f.is_symmetric() {
                    return Check::fail(name, format!("p={pv} n={n} i={i}: not symmetric"));
                }
                if f.metrics().total_degree > pv.pow(i) {
                    return Check::fail(name, format!("p={pv} n={n} i={i}: degree too high"));
                }
                points += pv.pow(n as u32);
                i += 1;
            }
            if !phi_poly(i, n, pp).is_zero() {
                return Check::fail(name, format!("p={pv} n={n} i={i}: expected zero"));
            }
        }
    }
    Check::pass(
        name,
        format!("{points} evaluations, n <= 3, all valid positions"),
    )
}

/// Falling-factorial support of each carry: exactly the bounded
/// compositions of `p^i`, counted by the extended binomial coefficient,
/// with inverse-factorial coefficients; cross-checked through table
/// interpolation and basis conversion.
pub fn gamma_support_checks(bounds: &Bounds) -> Vec<Check> {
    let name = "falling-factorial support of the addition carries";
    let mut instances = 0u32;
    for pv in bounds.odd_primes(5) {
        let pp = p(pv);
        for n in 1..=3usize {
            let mut i = 1u32;
            while (pv as u128).pow(i) <= n as u128 * (pv - 1) as u128 {
                let target = pv.pow(i);
                if phi_poly(i, n, pp).metrics().total_degree > target {
                    return vec![Check::fail(
                        name,
                        format!("p={pv} n={n} i={i}: total degree exceeds {target}"),
                    )];
                }
                let direct = phi_gamma(i, n, pp);
                let table = TruthTable::from_fn(pp, n, |x| carry_oracle_add(x, i));
                let converted = to_gamma_basis(&interpolate(&table));
                let supports_match = converted.len() == direct.terms().len()
                    && direct
                        .terms()
                        .iter()
                        .all(|(d, c)| converted.get(d) == Some(c));
                if !supports_match {
                    return vec![Check::fail(
                        name,
                        format!("p={pv} n={n} i={i}: basis mismatch"),
                    )];
                }
                let count = extended_binomial(target, n, pp).to_usize();
                if count != Some(direct.terms().len()) {
                    return vec![Check::fail(
                        name,
                        format!("p={pv} n={n} i={i}: support size vs extended binomial"),
                    )];
                }
                let compositions = enumerate_compositions(target, n, pp);
                if compositions.len() != direct.terms().len() {
                    return vec![Check::fail(
                        name,
                        format!("p={pv} n={n} i={i}: enumeration count"),
                    )];
                }
                instances += 1;
                i += 1;
            }
        }
    }
    vec![Check::pass(
        name,
        format!("{instances} carry instances with degree bound, p in {{3, 5}}, n <= 3"),
    )]
}

fn two_addend_forms_check() -> Check {
    let name = "two-addend carry single-sum form";
    for pv in [2u64, 3, 5, 7, 11] {
        if phi1_two_poly(p(pv)) != phi_poly(1, 2, p(pv)) {
            return Check::fail(name, format!("p={pv}: forms differ"));
        }
    }
    Check::pass(name, "identical to the composition sum for p <= 11")
}

fn incoming_carry_check() -> Check {
    let name = "incoming-carry polynomial on its 0/1 domain";
    for pv in [2u64, 3, 5, 7, 11] {
        let pp = p(pv);
        let f = phi_prime_poly(pp);
        for x1 in 0..pv {
            for x2 in 0..pv {
                for g in 0..=1u64 {
                    let got = f.evaluate(&[pp.elem(x1), pp.elem(x2), pp.elem(g)]);
                    let want = carry_oracle_add(&[pp.elem(x1), pp.elem(x2), pp.elem(g)], 1);
                    if got != want {
                        return Check::fail(name, format!("p={pv} at ({x1}, {x2}, {g})"));
                    }
                }
            }
        }
    }
    Check::pass(name, "exhaustive for p <= 11, incoming carry in {0, 1}")
}

/// Interpolating the truth table of a closed form returns it exactly.
pub fn interpolation_uniqueness_check() -> Check {
    let name = "interpolation reproduces the closed forms";
    for pv in [2u64, 3, 5] {
        let pp = p(pv);
        for n in 1..=3usize {
            let mut i = 0u32;
            while (pv as u128).pow(i) <= n as u128 * (pv - 1) as u128 {
                let f = phi_poly(i, n, pp);
                if interpolate(&TruthTable::tabulate(&f)) != f {
                    return Check::fail(name, format!("addition carry p={pv} n={n} i={i}"));
                }
                i += 1;
            }
            if pv != 2 {
                let f = psi1_poly(n, pp).expect("odd prime");
                if interpolate(&TruthTable::tabulate(&f)) != f {
                    return Check::fail(name, format!("product carry p={pv} n={n}"));
                }
            }
        }
    }
    Check::pass(name, "addition and product carries, p <= 5, n <= 3")
}

// ---------------------------------------------------------------------------
// multiplication carries
// ---------------------------------------------------------------------------

fn mul_carry_suite(bounds: &Bounds) -> Vec<Check> {
    let mut checks = vec![multiplication_oracle_check()];
    checks.push(psi_table_check());
    checks.push(psi_structure_check(bounds));
    checks.push(wilson_identity_check(bounds));
    checks.push(monomial_count_check());
    checks
}

/// Product-carry polynomial versus the integer oracle: exhaustive for the
/// two- and three-digit grids, randomized for wider ones.
pub fn multiplication_oracle_check() -> Check {
    let name = "product carries match the integer oracle";
    let mut points = 0u64;
    for pv in [3u64, 5, 7, 11, 13] {
        let f = psi1_poly(2, p(pv)).expect("odd prime");
        if let Err(point) = agrees_on_domain(&f, carry_oracle_mul) {
            return Check::fail(name, format!("p={pv} n=2: mismatch at {point:?}"));
        }
        points += pv * pv;
    }
    for pv in [3u64, 5, 7] {
        let f = psi1_poly(3, p(pv)).expect("odd prime");
        if let Err(point) = agrees_on_domain(&f, carry_oracle_mul) {
            return Check::fail(name, format!("p={pv} n=3: mismatch at {point:?}"));
        }
        points += pv.pow(3);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1357);
    for pv in [3u64, 5, 7] {
        let pp = p(pv);
        for n in 4..=6usize {
            let f = psi1_poly(n, pp).expect("odd prime");
            if !f.is_symmetric() {
                return Check::fail(name, format!("p={pv} n={n}: not symmetric"));
            }
            for _ in 0..10_000 {
                let point: Vec<FpElem> = (0..n).map(|_| pp.elem(rng.gen_range(0..pv))).collect();
                if f.evaluate(&point) != carry_oracle_mul(&point) {
                    return Check::fail(name, format!("p={pv} n={n}: mismatch at {point:?}"));
                }
                points += 1;
            }
        }
    }
    Check::pass(
        name,
        format!("{points} evaluations, exhaustive n <= 3 plus randomized n <= 6"),
    )
}

/// The auxiliary polynomial and its value at 1 for the small primes,
/// against the published coefficient tables.
pub fn psi_table_check() -> Check {
    let name = "auxiliary polynomial tables for p <= 19";
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
        let aux = psi_aux(p(pv)).expect("odd prime");
        let nonzero: Vec<(usize, u64)> = aux
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i + 1, c))
            .collect();
        if nonzero != coeffs.to_vec() {
            return Check::fail(name, format!("p={pv}: coefficients {nonzero:?}"));
        }
        if aux.at_one().value() != at_one {
            return Check::fail(name, format!("p={pv}: value at 1 is {}", aux.at_one()));
        }
    }
    Check::pass(
        name,
        "coefficients and values at 1 for the seven smallest odd primes",
    )
}

fn psi_structure_check(bounds: &Bounds) -> Check {
    let name = "auxiliary polynomial structure";
    for pv in bounds.odd_primes(100) {
        let aux = psi_aux(p(pv)).expect("odd prime");
        for i in 1..(pv - 2) as usize {
            if i % 2 == 1 && aux.coeff(i).value() != 0 {
                return Check::fail(name, format!("p={pv}: odd coefficient t^{i} nonzero"));
            }
        }
        if aux.coeff((pv - 2) as usize).value() != (pv - 1) / 2 {
            return Check::fail(name, format!("p={pv}: top coefficient"));
        }
    }
    Check::pass(
        name,
        "only even powers plus the top term (p-1)/2, odd p < 100",
    )
}

/// The value at 1 equals Wilson's quotient, vanishing exactly at the
/// Wilson primes in range.
pub fn wilson_identity_check(bounds: &Bounds) -> Check {
    let name = "auxiliary polynomial at 1 is Wilson's quotient";
    let mut wilson_primes = Vec::new();
    for pv in bounds.odd_primes(200) {
        let aux = psi_aux(p(pv)).expect("odd prime");
        let w = wilson_quotient(p(pv));
        if aux.at_one().value() != w {
            return Check::fail(name, format!("p={pv}: {} vs w_p = {w}", aux.at_one()));
        }
        if w == 0 {
            wilson_primes.push(pv);
        }
    }
    if bounds.p_max.unwrap_or(200) >= 13 && wilson_primes != vec![5, 13] {
        return Check::fail(name, format!("unexpected Wilson primes {wilson_primes:?}"));
    }
    Check::pass(
        name,
        "odd p < 200; Wilson primes in range are exactly {5, 13}",
    )
}

/// Monomial count of the product carry: `(n+1)(p-1)/2` power monomials,
/// plus the product term unless `(n-1)` times the value at 1 vanishes —
/// at Wilson primes and when `p` divides `n - 1`.
pub fn monomial_count_check() -> Check {
    let name = "product-carry monomial count";
    for pv in [3u64, 5, 7, 11, 13, 17, 19] {
        let pp = p(pv);
        let aux = psi_aux(pp).expect("odd prime");
        for n in 2..=4usize {
            let base = (n + 1) * (pv as usize - 1) / 2;
            let survives = (n as u64 - 1) % pv != 0 && !aux.at_one().is_zero();
            let want = base + usize::from(survives);
            let got = monomial_count_psi1(n, pp).expect("odd prime");
            if got != want {
                return Check::fail(
                    name,
                    format!("p={pv} n={n}: {got} monomials, expected {want}"),
                );
            }
        }
    }
    Check::pass(
        name,
        "(n+1)(p-1)/2 + 1 for odd p <= 19, n <= 4; one fewer at Wilson primes \
         and when p divides n-1 (p=3, n=4)",
    )
}

// ---------------------------------------------------------------------------
// Bernoulli machinery
// ---------------------------------------------------------------------------

fn bernoulli_suite(bounds: &Bounds) -> Vec<Check> {
    vec![
        bernoulli_table_check(),
        wilson_table_check(),
        staudt_clausen_check(bounds),
        power_sum_check(),
        multiplication_theorem_check(),
        lerch_check(bounds),
        glaisher_check(bounds),
    ]
}

/// Wilson's quotients mod `p` for the primes up to 31, against the
/// published table.
pub fn wilson_table_check() -> Check {
    let name = "Wilson quotients through p = 31";
    let table: &[(u64, u64)] = &[
        (3, 1),
        (5, 0),
        (7, 5),
        (11, 1),
        (13, 0),
        (17, 5),
        (19, 2),
        (23, 8),
        (29, 18),
        (31, 19),
    ];
    for &(pv, w) in table {
        if wilson_quotient(p(pv)) != w {
            return Check::fail(name, format!("p={pv}: {}", wilson_quotient(p(pv))));
        }
    }
    Check::pass(name, "exact residues for the ten smallest odd primes")
}

/// The published table of Bernoulli numbers through index 16.
pub fn bernoulli_table_check() -> Check {
    let name = "Bernoulli numbers through B_16";
    let table: &[(usize, (i64, i64))] = &[
        (0, (1, 1)),
        (1, (-1, 2)),
        (2, (1, 6)),
        (4, (-1, 30)),
        (6, (1, 42)),
        (8, (-1, 30)),
        (10, (5, 66)),
        (12, (-691, 2730)),
        (14, (7, 6)),
        (16, (-3617, 510)),
    ];
    for &(l, (num, den)) in table {
        if bernoulli(l) != ratio(num, den) {
            return Check::fail(name, format!("B_{l} = {}", bernoulli(l)));
        }
    }
    for l in (3..16usize).step_by(2) {
        if bernoulli(l) != ratio(0, 1) {
            return Check::fail(name, format!("B_{l} nonzero"));
        }
    }
    Check::pass(name, "exact values including the B_1 = -1/2 convention")
}

pub fn staudt_clausen_check(bounds: &Bounds) -> Check {
    let name = "von Staudt-Clausen denominators";
    let l_max = bounds.l_max.unwrap_or(60);
    for l in (2..=l_max).step_by(2) {
        let den = bernoulli(l as usize).denom().clone();
        if den != staudt_clausen_denominator(l).into() {
            return Check::fail(name, format!("l={l}: denominator {den}"));
        }
    }
    Check::pass(
        name,
        format!("product of primes q with (q-1) | l, even l <= {l_max}"),
    )
}

pub fn power_sum_check() -> Check {
    let name = "power sums via Bernoulli polynomials";
    for m in 1..=10u32 {
        for n in 1..=50u64 {
            let naive: num_bigint::BigUint =
                (1..=n).map(|k| num_bigint::BigUint::from(k).pow(m)).sum();
            if power_sum(m, n) != naive {
                return Check::fail(name, format!("m={m} N={n}"));
            }
        }
    }
    Check::pass(name, "matches naive loops for m <= 10, N <= 50")
}

pub fn multiplication_theorem_check() -> Check {
    let name = "Bernoulli multiplication theorem";
    for m in 1..=4i64 {
        for n in 0..=8usize {
            let base = bernoulli_poly(n);
            let mut left: Vec<Rat> = base.clone();
            for (s, c) in left.iter_mut().enumerate() {
                *c *= ratio(m, 1).pow(s as i32);
            }
            let mut right = vec![Rat::new(0.into(), 1.into()); n + 1];
            for k in 0..m {
                let shift = ratio(k, m);
                for (s, c) in base.iter().enumerate() {
                    let mut binom = ratio(1, 1);
                    for t in (0..=s).rev() {
                        right[t] += c.clone() * binom.clone() * shift.pow((s - t) as i32);
                        if t > 0 {
                            binom = binom * ratio(t as i64, 1) / ratio((s - t + 1) as i64, 1);
                        }
                    }
                }
            }
            let scale = ratio(m, 1).pow(n as i32 - 1);
            for c in right.iter_mut() {
                *c *= scale.clone();
            }
            if left != right {
                return Check::fail(name, format!("m={m} n={n}"));
            }
        }
    }
    Check::pass(name, "coefficient-level identity for m <= 4, n <= 8")
}

pub fn lerch_check(bounds: &Bounds) -> Check {
    let name = "Lerch: Fermat quotients sum to Wilson's quotient";
    for pv in bounds.odd_primes(100) {
        let pp = p(pv);
        let sum = (1..pv)
            .map(|a| fermat_quotient(a, pp).expect("coprime"))
            .fold(0u64, |acc, q| (acc + q) % pv);
        if sum != wilson_quotient(pp) {
            return Check::fail(name, format!("p={pv}"));
        }
    }
    Check::pass(name, "odd p < 100")
}

pub fn glaisher_check(bounds: &Bounds) -> Check {
    let name = "Wilson's quotient from the Bernoulli side";
    for pv in bounds.odd_primes(200) {
        if wilson_from_bernoulli(p(pv)).expect("odd prime") != wilson_quotient(p(pv)) {
            return Check::fail(name, format!("p={pv}"));
        }
    }
    Check::pass(name, "B_(p-1) + 1/p - 1 reduces to w_p, odd p < 200")
}

// ---------------------------------------------------------------------------
// cocycle and mixed relations
// ---------------------------------------------------------------------------

fn cocycle_suite(bounds: &Bounds) -> Vec<Check> {
    vec![cocycle_check(bounds), mixed_relation_check(bounds)]
}

/// The associativity shadow of the product carry:
/// `c(x,y) z + c(xy, z) = x c(y,z) + c(x, yz)` over the whole cube.
pub fn cocycle_check(bounds: &Bounds) -> Check {
    let name = "product-carry cocycle identity";
    let mut points = 0u64;
    for pv in bounds.primes(13) {
        let pp = p(pv);
        let psi = |a: FpElem, b: FpElem| carry_oracle_mul(&[a, b]);
        for x in 0..pv {
            for y in 0..pv {
                for z in 0..pv {
                    let (x, y, z) = (pp.elem(x), pp.elem(y), pp.elem(z));
                    if psi(x, y) * z + psi(x * y, z) != x * psi(y, z) + psi(x, y * z) {
                        return Check::fail(name, format!("p={pv} at ({x}, {y}, {z})"));
                    }
                    points += 1;
                }
            }
        }
    }
    Check::pass(name, format!("{points} triples, exhaustive for p <= 13"))
}

/// The link between the two carry families through `(x+1) y = xy + y`:
/// `psi1(x+1, y) = psi1(x, y) + phi1(xy, y)` whenever `x + 1` does not wrap
/// mod `p`. At `x = p-1` the left side sees the lift of `0` while the right
/// side accounts for the full integer `p * y`, so the identity gains
/// exactly `y`; the corrected form is checked on the whole square.
pub fn mixed_relation_check(bounds: &Bounds) -> Check {
    let name = "mixed addition/multiplication carry relation";
    let mut points = 0u64;
    for pv in bounds.odd_primes(13) {
        let pp = p(pv);
        let phi1 = phi_poly(1, 2, pp);
        let psi1 = psi1_poly(2, pp).expect("odd prime");
        for xv in 0..pv {
            for yv in 0..pv {
                let (x, y) = (pp.elem(xv), pp.elem(yv));
                let left = psi1.evaluate(&[x + pp.elem(1), y]);
                let right = psi1.evaluate(&[x, y]) + phi1.evaluate(&[x * y, y]);
                let ok = if xv < pv - 1 {
                    left == right
                } else {
                    left + y == right // wraparound correction
                };
                if !ok {
                    return Check::fail(name, format!("p={pv} at x={xv}, y={yv}"));
                }
                points += 1;
            }
        }
    }
    Check::pass(
        name,
        format!("{points} pairs for odd p <= 13; literal on x < p-1, corrected by y at x = p-1"),
    )
}

// ---------------------------------------------------------------------------
// the Z/p^2 section view
// ---------------------------------------------------------------------------

fn appendix_suite(bounds: &Bounds) -> Vec<Check> {
    vec![
        teichmuller_check(bounds),
        difference_equation_check(bounds),
        section_gap_check(bounds),
        fermat_slice_check(bounds),
    ]
}

pub fn teichmuller_check(bounds: &Bounds) -> Check {
    let name = "Teichmuller lift is multiplicative mod p^2";
    for pv in bounds.odd_primes(31) {
        let pp = p(pv);
        let p2 = pv * pv;
        for x in 1..pv {
            let tx = teichmuller_lift(pp.elem(x)).expect("nonzero");
            if tx % pv != x || crate::fp::pow_mod(tx, pv - 1, p2) != 1 {
                return Check::fail(
                    name,
                    format!("p={pv} x={x}: not a section of order dividing p-1"),
                );
            }
            for y in 1..pv {
                let ty = teichmuller_lift(pp.elem(y)).expect("nonzero");
                let txy = teichmuller_lift(pp.elem(x) * pp.elem(y)).expect("nonzero");
                if crate::fp::mul_mod(tx, ty, p2) != txy {
                    return Check::fail(name, format!("p={pv} at ({x}, {y})"));
                }
            }
        }
    }
    Check::pass(name, "exhaustive over the unit group, odd p <= 31")
}

/// `(a+1) bar(a+1) - a bar(a) = ([a] + 1 - [a+1]) / p` away from `0, -1`.
pub fn difference_equation_check(bounds: &Bounds) -> Check {
    let name = "difference equation of the section gap";
    for pv in bounds.odd_primes(31) {
        let pp = p(pv);
        let p2 = pv * pv;
        let aux = psi_aux(pp).expect("odd prime");
        for a in 1..pv - 1 {
            let x = pp.elem(a);
            let x1 = pp.elem(a + 1);
            let lhs = x1 * aux.bar(x1) - x * aux.bar(x);
            let ta = teichmuller_lift(x).expect("nonzero");
            let ta1 = teichmuller_lift(x1).expect("nonzero");
            let gap = (ta + 1 + p2 - ta1) % p2;
            if gap % pv != 0 || lhs.value() != (gap / pv) % pv {
                return Check::fail(name, format!("p={pv} a={a}"));
            }
        }
    }
    Check::pass(name, "exhaustive away from 0 and -1, odd p <= 31")
}

/// The gap between the two sections equals the complementary auxiliary map.
pub fn section_gap_check(bounds: &Bounds) -> Check {
    let name = "section gap equals the complementary auxiliary map";
    for pv in bounds.odd_primes(31) {
        let pp = p(pv);
        let aux = psi_aux(pp).expect("odd prime");
        for x in 1..pv {
            let alpha = section_alpha(pp.elem(x)).expect("nonzero");
            if alpha != aux.bar(pp.elem(x)) {
                return Check::fail(name, format!("p={pv} x={x}"));
            }
        }
    }
    Check::pass(name, "exhaustive over the unit group, odd p <= 31")
}

/// `Psi(x) - Psi(1)` is the Fermat quotient of the lift.
pub fn fermat_slice_check(bounds: &Bounds) -> Check {
    let name = "Fermat-quotient slice of the auxiliary polynomial";
    for pv in bounds.odd_primes(31) {
        let pp = p(pv);
        let aux = psi_aux(pp).expect("odd prime");
        for x in 1..pv {
            let lhs = aux.eval(pp.elem(x)) - aux.at_one();
            if lhs.value() != fermat_quotient(x, pp).expect("coprime") {
                return Check::fail(name, format!("p={pv} x={x}"));
            }
        }
    }
    Check::pass(name, "exhaustive over the unit group, odd p <= 31")
}

// ---------------------------------------------------------------------------
// big-integer arithmetic over tracked values
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum BignumAlgo {
    ColumnAdd,
    TwoAdd,
    SchoolbookMul,
    ListedMul,
}

impl BignumAlgo {
    fn label(self) -> &'static str {
        match self {
            BignumAlgo::ColumnAdd => "column addition",
            BignumAlgo::TwoAdd => "two-addend addition",
            BignumAlgo::SchoolbookMul => "schoolbook multiplication",
            BignumAlgo::ListedMul => "listed multiplication",
        }
    }
}

fn bignum_suite(bounds: &Bounds) -> Vec<Check> {
    bignum_tracked_checks(bounds)
}

/// Every algorithm, on every configured prime, over random operands up to
/// 64 digits, executed on tracked values: results must equal exact integer
/// arithmetic, and the tapes record nothing but additions, multiplications
/// and constant products. Configurations run on worker threads; the check
/// order and all samples are fixed by per-configuration seeds.
pub fn bignum_tracked_checks(bounds: &Bounds) -> Vec<Check> {
    let pairs = bounds.pairs.unwrap_or(1000);
    let algos = [
        BignumAlgo::ColumnAdd,
        BignumAlgo::TwoAdd,
        BignumAlgo::SchoolbookMul,
        BignumAlgo::ListedMul,
    ];
    let configs: Vec<(u64, BignumAlgo)> = bounds
        .odd_primes(13)
        .into_iter()
        .flat_map(|pv| algos.iter().map(move |&a| (pv, a)))
        .collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = configs
            .iter()
            .map(|&(pv, algo)| scope.spawn(move || bignum_config_check(pv, algo, pairs)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

fn bignum_config_check(pv: u64, algo: BignumAlgo, pairs: usize) -> Check {
    let name = format!("{} over tracked digits, p = {pv}", algo.label());
    let pp = p(pv);
    let seed = pv.wrapping_mul(0x9e37_79b9) ^ (algo as u64) << 32 ^ 0xfeed;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ops_total = 0u64;
    for k in 0..pairs {
        let a = random_digits(&mut rng, pp, 64);
        let b = random_digits(&mut rng, pp, 64);
        let (av, bv) = (a.to_biguint(), b.to_biguint());
        let tape = CostTape::new();
        let (got, want) = match algo {
            BignumAlgo::ColumnAdd => (add_many_tracked(&[a, b], &tape), &av + &bv),
            BignumAlgo::TwoAdd => (add_two_tracked(&a, &b, &tape), &av + &bv),
            BignumAlgo::SchoolbookMul => (
                mul_schoolbook_tracked(&a, &b, &tape).expect("odd prime"),
                &av * &bv,
            ),
            BignumAlgo::ListedMul => (
                mul_listed_tracked(&a, &b, &tape).expect("odd prime"),
                &av * &bv,
            ),
        };
        if got.to_biguint() != want {
            return Check::fail(name, format!("pair {k}: {av} and {bv}"));
        }
        let report = tape.report();
        ops_total += report.adds + report.muls + report.const_muls;
    }
    Check::pass(
        name,
        format!("{pairs} operand pairs, lengths <= 64; {ops_total} add/mul operations recorded"),
    )
}

fn random_digits(rng: &mut ChaCha8Rng, p: Prime, max_len: usize) -> Digits {
    let len = rng.gen_range(1..=max_len);
    let values: Vec<u64> = (0..len).map(|_| rng.gen_range(0..p.get())).collect();
    Digits::from_values(p, &values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(
            run_suite("nope", &Bounds::default()),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn quick_suites_pass() {
        let bounds = Bounds {
            p_max: Some(7),
            l_max: Some(20),
            pairs: Some(5),
        };
        for suite in ["add-carry", "cocycle", "appendix"] {
            let checks = run_suite(suite, &bounds).unwrap();
            assert!(!checks.is_empty());
            for c in &checks {
                assert!(c.pass, "{}: {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn bignum_suite_small_run() {
        let bounds = Bounds {
            p_max: Some(5),
            pairs: Some(3),
            ..Bounds::default()
        };
        for c in bignum_tracked_checks(&bounds) {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }
}
