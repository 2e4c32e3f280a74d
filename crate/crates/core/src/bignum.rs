//! Arbitrary-precision base-`p` integers whose addition and multiplication
//! are executed purely through carry-polynomial evaluations.
//!
//! Every algorithm is generic over [`Scalar`], so the same code runs on
//! plain field elements and on [`crate::tracked::TrackedValue`], where it is
//! add/mul-only by construction. Carry polynomials are evaluated in their
//! falling-factorial form (their natural closed form, and the cheaper one to
//! evaluate); the digit-product carry is evaluated in its compact monomial
//! form. All polynomial instances are cached per `(p, arity, position)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::add_carry::phi_gamma;
use crate::error::{Error, Result};
use crate::fp::{FpElem, Prime, Scalar};
use crate::interp::GammaPoly;
use crate::mpoly::MPoly;
use crate::mul_carry::psi1_poly;
use crate::tracked::{CostTape, TrackedValue};

/// A non-negative integer as little-endian base-`p` digits. Canonical form
/// carries no trailing zero digits; zero itself is the empty digit string.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Digits {
    modulus: Prime,
    digits: Vec<FpElem>,
}

impl Digits {
    pub fn zero(p: Prime) -> Self {
        Digits {
            modulus: p,
            digits: Vec::new(),
        }
    }

    /// Builds from little-endian digits, stripping trailing zeros.
    pub fn new(p: Prime, mut digits: Vec<FpElem>) -> Self {
        assert!(
            digits.iter().all(|d| d.modulus() == p),
            "digits with foreign modulus"
        );
        while digits.last().is_some_and(|d| d.is_zero()) {
            digits.pop();
        }
        Digits { modulus: p, digits }
    }

    /// Convenience constructor from raw digit values, each below `p`.
    pub fn from_values(p: Prime, values: &[u64]) -> Self {
        let digits = values
            .iter()
            .map(|&v| {
                assert!(v < p.get(), "digit {v} out of range for base {p}");
                p.elem(v)
            })
            .collect();
        Digits::new(p, digits)
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    /// Little-endian digits, canonical (no trailing zeros).
    pub fn digits(&self) -> &[FpElem] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn from_biguint(v: &BigUint, p: Prime) -> Self {
        let base = BigUint::from(p.get());
        let mut digits = Vec::new();
        let mut rest = v.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(&base);
            digits.push(p.elem(r.to_u64().expect("remainder below p")));
            rest = q;
        }
        Digits { modulus: p, digits }
    }

    pub fn to_biguint(&self) -> BigUint {
        let base = BigUint::from(self.modulus.get());
        let mut acc = BigUint::zero();
        for d in self.digits.iter().rev() {
            acc = acc * &base + BigUint::from(d.value());
        }
        acc
    }

    /// Parses a big-endian digit string like `1022`; digits above `9` use
    /// letters (`a` = 10, ...), limiting literals to bases up to 36.
    pub fn parse_literal(s: &str, p: Prime) -> Result<Self> {
        if p.get() > 36 {
            return Err(Error::BadDigit {
                ch: '?',
                radix: p.get(),
            });
        }
        let mut digits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let v = ch
                .to_digit(36)
                .filter(|&v| (v as u64) < p.get())
                .ok_or(Error::BadDigit { ch, radix: p.get() })? as u64;
            digits.push(p.elem(v));
        }
        digits.reverse();
        Ok(Digits::new(p, digits))
    }

    /// Big-endian digit string; `0` for zero.
    pub fn to_literal(&self) -> Result<String> {
        if self.modulus.get() > 36 {
            return Err(Error::BadDigit {
                ch: '?',
                radix: self.modulus.get(),
            });
        }
        if self.digits.is_empty() {
            return Ok("0".to_string());
        }
        Ok(self
            .digits
            .iter()
            .rev()
            .map(|d| char::from_digit(d.value() as u32, 36).unwrap())
            .collect())
    }
}

/// The carry lookahead window for `n`-addend column addition: the smallest
/// `d` with `(n + d)(p - 1) < p^(d+1)`, so that no column of `n` digits and
/// `d` pending carries ever carries further than `d` positions ahead.
pub fn lookahead_d(n: usize, p: Prime) -> u32 {
    assert!(n >= 1);
    let pv = p.get() as u128;
    let mut d = 0u32;
    loop {
        let lhs = (n as u128 + d as u128) * (pv - 1);
        match pv.checked_pow(d + 1) {
            Some(rhs) if lhs < rhs => return d,
            None => return d, // p^(d+1) overflowed u128, so it surely exceeds lhs
            _ => d += 1,
        }
    }
}

// ---------------------------------------------------------------------------
// cached polynomial instances
// ---------------------------------------------------------------------------

type PhiKey = (u64, usize, u32);

fn phi_cache() -> &'static RwLock<HashMap<PhiKey, Arc<GammaPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<PhiKey, Arc<GammaPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Carry polynomial for `arity` summands into position `k`, in
/// falling-factorial form, cached per `(p, arity, k)`.
fn phi_cached(p: Prime, arity: usize, k: u32) -> Arc<GammaPoly> {
    let key = (p.get(), arity, k);
    if let Some(hit) = phi_cache().read().unwrap().get(&key) {
        return hit.clone();
    }
    let poly = Arc::new(phi_gamma(k, arity, p));
    phi_cache()
        .write()
        .unwrap()
        .entry(key)
        .or_insert_with(|| poly.clone())
        .clone()
}

fn phi_prime_cache() -> &'static RwLock<HashMap<u64, Arc<GammaPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<GammaPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Two-addend carry with an incoming 0/1 carry as the third variable.
fn phi_prime_cached(p: Prime) -> Arc<GammaPoly> {
    if let Some(hit) = phi_prime_cache().read().unwrap().get(&p.get()) {
        return hit.clone();
    }
    let poly = Arc::new(GammaPoly::from_mpoly(&crate::add_carry::phi_prime_poly(p)));
    phi_prime_cache()
        .write()
        .unwrap()
        .entry(p.get())
        .or_insert_with(|| poly.clone())
        .clone()
}

/// A two-variable polynomial with its monomial data flattened for the
/// inner multiplication loops. Evaluation uses the same strategy as the
/// generic scalar path: per-variable power tables, one product per
/// monomial, constant products for non-unit coefficients.
struct PairPoly {
    modulus: Prime,
    max_x: u32,
    max_y: u32,
    /// `(x exponent, y exponent, coefficient)`, canonical descending order.
    terms: Vec<(u32, u32, u64)>,
}

impl PairPoly {
    fn compile(f: &MPoly) -> Self {
        assert_eq!(f.nvars(), 2);
        let mut terms: Vec<(u32, u32, u64)> = f
            .terms()
            .map(|(e, c)| (e.exps()[0], e.exps()[1], c))
            .collect();
        terms.reverse();
        let max_x = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let max_y = terms.iter().map(|t| t.1).max().unwrap_or(0);
        PairPoly {
            modulus: f.modulus(),
            max_x,
            max_y,
            terms,
        }
    }

    fn eval<T: Scalar>(&self, x: &T, y: &T) -> T {
        let p = self.modulus;
        // powers of x, then powers of y, in one buffer
        let mut pow: Vec<T> = Vec::with_capacity((self.max_x + self.max_y) as usize);
        if self.max_x >= 1 {
            pow.push(x.clone());
            for _ in 2..=self.max_x {
                let next = pow.last().unwrap().s_mul(x);
                pow.push(next);
            }
        }
        let oy = self.max_x as usize;
        if self.max_y >= 1 {
            pow.push(y.clone());
            for _ in 2..=self.max_y {
                let next = pow.last().unwrap().s_mul(y);
                pow.push(next);
            }
        }
        let mut acc: Option<T> = None;
        for &(ex, ey, c) in &self.terms {
            let prod = match (ex, ey) {
                (0, 0) => None,
                (_, 0) => Some(pow[(ex - 1) as usize].clone()),
                (0, _) => Some(pow[oy + (ey - 1) as usize].clone()),
                (_, _) => Some(pow[(ex - 1) as usize].s_mul(&pow[oy + (ey - 1) as usize])),
            };
            let term = match prod {
                None => x.s_const(p.elem(c)),
                Some(prod) if c == 1 => prod,
                Some(prod) => prod.s_mul_const(p.elem(c)),
            };
            acc = Some(match acc {
                None => term,
                Some(a) => a.s_add(&term),
            });
        }
        acc.unwrap_or_else(|| x.s_const(p.elem(0)))
    }
}

fn psi_pair_cache() -> &'static RwLock<HashMap<u64, Arc<PairPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<PairPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Product carry of two digits, in its compact monomial form.
fn psi_pair_cached(p: Prime) -> Result<Arc<PairPoly>> {
    if let Some(hit) = psi_pair_cache().read().unwrap().get(&p.get()) {
        return Ok(hit.clone());
    }
    let poly = Arc::new(PairPoly::compile(&psi1_poly(2, p)?));
    Ok(psi_pair_cache()
        .write()
        .unwrap()
        .entry(p.get())
        .or_insert_with(|| poly.clone())
        .clone())
}

// ---------------------------------------------------------------------------
// generic digit-level cores
// ---------------------------------------------------------------------------

fn scalar_zero<T: Scalar>(ctx: &T) -> T {
    ctx.s_const(ctx.s_modulus().elem(0))
}

fn fold_sum<T: Scalar>(values: &[T], ctx: &T) -> T {
    match values.split_first() {
        None => scalar_zero(ctx),
        Some((first, rest)) => rest.iter().fold(first.clone(), |acc, v| acc.s_add(v)),
    }
}

/// Column addition of `n` equal-length operands with a lookahead window of
/// `d` positions: column `i` emits its digit plus carries into the next
/// `min(d, ...)` columns, each carry one evaluation of the corresponding
/// carry polynomial over the column's digits and pending carries.
fn add_many_core<T: Scalar>(addends: &[Vec<T>], p: Prime, ctx: &T) -> Vec<T> {
    let n = addends.len();
    assert!(n >= 1);
    let m = addends[0].len() - 1;
    debug_assert!(addends.iter().all(|a| a.len() == m + 1));
    let d = lookahead_d(n, p);
    let width = m + d as usize + 2;

    let mut pending: Vec<Vec<T>> = vec![Vec::new(); width];
    let mut out: Vec<T> = Vec::with_capacity(width);
    for i in 0..width {
        let mut inputs: Vec<T> = Vec::with_capacity(n + d as usize);
        if i <= m {
            inputs.extend(addends.iter().map(|a| a[i].clone()));
        }
        inputs.extend(std::mem::take(&mut pending[i]));
        debug_assert!(
            {
                let sum: u128 = inputs.iter().map(|v| v.s_lift() as u128).sum();
                sum < (p.get() as u128).pow(d + 1)
            },
            "column {i} exceeds the lookahead bound"
        );
        out.push(fold_sum(&inputs, ctx));
        let kmax = (d as usize).min(width - 1 - i) as u32;
        for k in 1..=kmax {
            let carry = if inputs.is_empty() {
                scalar_zero(ctx)
            } else {
                phi_cached(p, inputs.len(), k).eval_scalar(&inputs)
            };
            pending[i + k as usize].push(carry);
        }
    }
    debug_assert!(pending.iter().all(|v| v.is_empty()));
    out
}

/// Two-addend addition: a plain carry at digit 0, then one evaluation of
/// the incoming-carry polynomial per digit. Yields `m + 2` digit slots.
fn add_two_core<T: Scalar>(a: &[T], b: &[T], p: Prime) -> Vec<T> {
    let m = a.len() - 1;
    debug_assert_eq!(a.len(), b.len());
    let phi1 = phi_cached(p, 2, 1);
    let phi_prime = phi_prime_cached(p);

    let mut out = Vec::with_capacity(m + 2);
    out.push(a[0].s_add(&b[0]));
    let mut carry = phi1.eval_scalar(&[a[0].clone(), b[0].clone()]);
    for i in 1..=m {
        out.push(a[i].s_add(&b[i]).s_add(&carry));
        carry = phi_prime.eval_scalar(&[a[i].clone(), b[i].clone(), carry]);
    }
    out.push(carry);
    out
}

/// Schoolbook multiplication: row-by-row accumulation where every cell
/// needs only the digit-product carry and two- or three-addend carries —
/// a cell's integer value `a_i b_j + c + g` stays below `p^2`.
fn mul_schoolbook_core<T: Scalar>(a: &[T], b: &[T], p: Prime) -> Vec<T> {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let m1 = a.len() - 1;
    let m2 = b.len() - 1;
    let psi = psi_pair_cached(p).expect("odd prime checked by callers");
    let phi1 = phi_cached(p, 2, 1);
    let phi1_3 = phi_cached(p, 3, 1);

    let bound_check = |x: &T, c: &T, g: u64| {
        debug_assert!(
            x.s_lift() as u128 + c.s_lift() as u128 + (g as u128) < (p.get() as u128).pow(2),
            "cell value exceeds two digits"
        );
    };

    let mut c: Vec<T> = vec![scalar_zero(&a[0]); m1 + m2 + 2];
    // first row: a * b_0
    c[0] = a[0].s_mul(&b[0]);
    let mut carry = psi.eval(&a[0], &b[0]);
    for i in 1..=m1 {
        let t = a[i].s_mul(&b[0]);
        bound_check(&t, &carry, 0);
        let digit = t.s_add(&carry);
        carry = psi.eval(&a[i], &b[0]).s_add(&phi1.eval_scalar(&[t, carry]));
        c[i] = digit;
    }
    c[m1 + 1] = carry;

    // remaining rows accumulate into c
    for j in 1..=m2 {
        let t = a[0].s_mul(&b[j]);
        bound_check(&t, &c[j], 0);
        let digit = t.s_add(&c[j]);
        let mut carry = psi
            .eval(&a[0], &b[j])
            .s_add(&phi1.eval_scalar(&[t, c[j].clone()]));
        c[j] = digit;
        for i in 1..=m1 {
            let t = a[i].s_mul(&b[j]);
            bound_check(&t, &c[i + j], carry.s_lift());
            let digit = t.s_add(&c[i + j]).s_add(&carry);
            let next =
                psi.eval(&a[i], &b[j])
                    .s_add(&phi1_3.eval_scalar(&[t, c[i + j].clone(), carry]));
            c[i + j] = digit;
            carry = next;
        }
        c[m1 + j + 1] = carry;
    }
    c
}

/// Adds one digit into a little-endian accumulator wide enough for the
/// final sum; the carry out of the top slot is identically zero by the
/// width bound, so it is never computed.
fn accumulate_digit<T: Scalar>(acc: &mut [T], v: T, phi1: &GammaPoly, p: Prime) {
    let mut carry = v;
    let last = acc.len() - 1;
    for (idx, slot) in acc.iter_mut().enumerate() {
        let digit = slot.s_add(&carry);
        if idx < last {
            carry = phi1.eval_scalar(&[slot.clone(), carry]);
        } else {
            debug_assert!(
                slot.s_lift() + carry.s_lift() < p.get(),
                "accumulator top slot overflowed"
            );
        }
        *slot = digit;
    }
}

/// List-based multiplication: partial products and their carries are
/// scattered into per-position lists, then each position is collapsed by
/// summing its list; the higher digits of that column sum are exactly the
/// carries the column sends ahead, `max{k : p^k <= n(p-1)}` of them.
fn mul_listed_core<T: Scalar>(a: &[T], b: &[T], p: Prime) -> Vec<T> {
    let psi = psi_pair_cached(p).expect("odd prime checked by callers");
    let phi1 = phi_cached(p, 2, 1);
    let mut lists: Vec<Vec<T>> = vec![Vec::new(); a.len() + b.len() + 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            lists[i + j].push(ai.s_mul(bj));
            lists[i + j + 1].push(psi.eval(ai, bj));
        }
    }

    let pv = p.get() as u128;
    let mut out: Vec<T> = Vec::with_capacity(lists.len());
    let mut i = 0usize;
    while i < lists.len() && !lists[i].is_empty() {
        let entries = std::mem::take(&mut lists[i]);
        let n = entries.len() as u128;
        // widest the column sum can get: max k with p^k <= n(p-1)
        let mut kmax = 0u32;
        while pv
            .checked_pow(kmax + 1)
            .is_some_and(|pk| pk <= n * (pv - 1))
        {
            kmax += 1;
        }
        let mut entries = entries.into_iter();
        let first = entries.next().unwrap();
        let mut acc: Vec<T> = Vec::with_capacity(kmax as usize + 1);
        acc.push(first);
        for _ in 0..kmax {
            let zero = scalar_zero(&acc[0]);
            acc.push(zero);
        }
        for v in entries {
            accumulate_digit(&mut acc, v, &phi1, p);
        }
        let mut acc = acc.into_iter();
        out.push(acc.next().unwrap());
        for (k, carry) in acc.enumerate() {
            let target = i + k + 1;
            if target >= lists.len() {
                lists.resize_with(target + 1, Vec::new);
            }
            lists[target].push(carry);
        }
        i += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// public entry points
// ---------------------------------------------------------------------------

fn common_modulus(operands: &[&Digits]) -> Prime {
    let p = operands.first().expect("at least one operand").modulus();
    assert!(
        operands.iter().all(|o| o.modulus() == p),
        "operands with mixed moduli"
    );
    p
}

fn padded_plain(x: &Digits, len: usize) -> Vec<FpElem> {
    let p = x.modulus();
    let mut v: Vec<FpElem> = x.digits().to_vec();
    v.resize(len.max(1), p.elem(0));
    v
}

fn padded_tracked<'t>(x: &Digits, len: usize, tape: &'t CostTape) -> Vec<TrackedValue<'t>> {
    let p = x.modulus();
    let mut v: Vec<TrackedValue<'t>> = x.digits().iter().map(|&d| tape.input(d)).collect();
    v.resize_with(len.max(1), || tape.input(p.elem(0)));
    v
}

fn collect_plain(p: Prime, digits: Vec<FpElem>) -> Digits {
    Digits::new(p, digits)
}

fn collect_tracked(p: Prime, digits: Vec<TrackedValue<'_>>) -> Digits {
    Digits::new(p, digits.into_iter().map(|v| v.value()).collect())
}

/// Sum of any number of operands via column addition.
pub fn add_many(addends: &[Digits]) -> Digits {
    let p = common_modulus(&addends.iter().collect::<Vec<_>>());
    let len = addends.iter().map(Digits::len).max().unwrap_or(0);
    let rows: Vec<Vec<FpElem>> = addends.iter().map(|a| padded_plain(a, len)).collect();
    let ctx = rows[0][0];
    collect_plain(p, add_many_core(&rows, p, &ctx))
}

/// Same computation over tracked values; costs land on `tape`.
pub fn add_many_tracked(addends: &[Digits], tape: &CostTape) -> Digits {
    let p = common_modulus(&addends.iter().collect::<Vec<_>>());
    let len = addends.iter().map(Digits::len).max().unwrap_or(0);
    let rows: Vec<Vec<TrackedValue>> = addends
        .iter()
        .map(|a| padded_tracked(a, len, tape))
        .collect();
    let ctx = rows[0][0];
    collect_tracked(p, add_many_core(&rows, p, &ctx))
}

/// Sum of two operands via the incoming-carry polynomial.
pub fn add_two(a: &Digits, b: &Digits) -> Digits {
    let p = common_modulus(&[a, b]);
    let len = a.len().max(b.len());
    collect_plain(
        p,
        add_two_core(&padded_plain(a, len), &padded_plain(b, len), p),
    )
}

pub fn add_two_tracked(a: &Digits, b: &Digits, tape: &CostTape) -> Digits {
    let p = common_modulus(&[a, b]);
    let len = a.len().max(b.len());
    collect_tracked(
        p,
        add_two_core(
            &padded_tracked(a, len, tape),
            &padded_tracked(b, len, tape),
            p,
        ),
    )
}

fn require_odd_for_mul(p: Prime) -> Result<()> {
    if !p.is_odd() {
        return Err(Error::BinaryMulUnsupported);
    }
    Ok(())
}

/// Product via row-by-row accumulation.
pub fn mul_schoolbook(a: &Digits, b: &Digits) -> Result<Digits> {
    let p = common_modulus(&[a, b]);
    require_odd_for_mul(p)?;
    Ok(collect_plain(
        p,
        mul_schoolbook_core(&padded_plain(a, a.len()), &padded_plain(b, b.len()), p),
    ))
}

pub fn mul_schoolbook_tracked(a: &Digits, b: &Digits, tape: &CostTape) -> Result<Digits> {
    let p = common_modulus(&[a, b]);
    require_odd_for_mul(p)?;
    Ok(collect_tracked(
        p,
        mul_schoolbook_core(
            &padded_tracked(a, a.len(), tape),
            &padded_tracked(b, b.len(), tape),
            p,
        ),
    ))
}

/// Product via per-position partial-product lists.
pub fn mul_listed(a: &Digits, b: &Digits) -> Result<Digits> {
    let p = common_modulus(&[a, b]);
    require_odd_for_mul(p)?;
    Ok(collect_plain(
        p,
        mul_listed_core(&padded_plain(a, a.len()), &padded_plain(b, b.len()), p),
    ))
}

pub fn mul_listed_tracked(a: &Digits, b: &Digits, tape: &CostTape) -> Result<Digits> {
    let p = common_modulus(&[a, b]);
    require_odd_for_mul(p)?;
    Ok(collect_tracked(
        p,
        mul_listed_core(
            &padded_tracked(a, a.len(), tape),
            &padded_tracked(b, b.len(), tape),
            p,
        ),
    ))
}
