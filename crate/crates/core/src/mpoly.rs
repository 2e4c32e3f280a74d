//! Sparse multivariate polynomials over `F_p` with explicit reduction
//! `x^p -> x`, evaluation, and structural metrics.
//!
//! Terms are keyed by exponent vectors under a graded-lexicographic order,
//! so iteration and the text form are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::fp::{add_mod, mul_mod, FpElem, Prime, Scalar};

/// Exponent vector of a monomial. Ordered by total degree first, then
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpVec(Vec<u32>);

impl ExpVec {
    pub fn new(exps: Vec<u32>) -> Self {
        ExpVec(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural metrics of a reduced polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Metrics {
    pub monomials: usize,
    pub total_degree: u64,
    pub max_var_degree: u32,
}

/// A polynomial over `F_p` in `nvars` variables, stored as a sparse map
/// from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    modulus: Prime,
    nvars: usize,
    terms: BTreeMap<ExpVec, u64>,
}

impl MPoly {
    pub fn zero(p: Prime, nvars: usize) -> Self {
        MPoly {
            modulus: p,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: Prime, nvars: usize, c: u64) -> Self {
        let mut poly = MPoly::zero(p, nvars);
        poly.add_term(&vec![0; nvars], c);
        poly
    }

    pub fn one(p: Prime, nvars: usize) -> Self {
        MPoly::constant(p, nvars, 1)
    }

    /// The variable `x_{j+1}` (zero-based index `j`).
    pub fn var(p: Prime, nvars: usize, j: usize) -> Self {
        assert!(
            j < nvars,
            "variable index {j} out of range for {nvars} variables"
        );
        let mut exps = vec![0u32; nvars];
        exps[j] = 1;
        let mut poly = MPoly::zero(p, nvars);
        poly.add_term(&exps, 1);
        poly
    }

    pub fn from_terms<I>(p: Prime, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, u64)>,
    {
        let mut poly = MPoly::zero(p, nvars);
        for (exps, c) in terms {
            poly.add_term(&exps, c);
        }
        poly
    }

    /// A univariate polynomial in `x_{var+1}` with `coeffs[e]` the
    /// coefficient of the `e`-th power.
    pub fn from_univariate(p: Prime, nvars: usize, var: usize, coeffs: &[u64]) -> Self {
        assert!(var < nvars);
        let mut poly = MPoly::zero(p, nvars);
        for (e, &c) in coeffs.iter().enumerate() {
            let mut exps = vec![0u32; nvars];
            exps[var] = e as u32;
            poly.add_term(&exps, c);
        }
        poly
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, u64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coeff(&self, exps: &[u32]) -> u64 {
        self.terms.get(&ExpVec(exps.to_vec())).copied().unwrap_or(0)
    }

    /// Accumulates `c` into the coefficient of `exps`, dropping the term if
    /// it cancels.
    pub fn add_term(&mut self, exps: &[u32], c: u64) {
        assert_eq!(exps.len(), self.nvars, "exponent vector of wrong length");
        let p = self.modulus.get();
        let c = c % p;
        if c == 0 {
            return;
        }
        let key = ExpVec(exps.to_vec());
        let entry = self.terms.entry(key).or_insert(0);
        *entry = add_mod(*entry, c, p);
        if *entry == 0 {
            self.terms.remove(&ExpVec(exps.to_vec()));
        }
    }

    fn check_compatible(&self, other: &MPoly) {
        assert_eq!(self.modulus, other.modulus, "polynomials with mixed moduli");
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials with mixed variable counts"
        );
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.check_compatible(other);
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.exps(), c);
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        self.scale(self.modulus.get() - 1)
    }

    pub fn scale(&self, c: u64) -> MPoly {
        let p = self.modulus.get();
        let c = c % p;
        let mut out = MPoly::zero(self.modulus, self.nvars);
        if c == 0 {
            return out;
        }
        for (e, coeff) in self.terms() {
            out.add_term(e.exps(), mul_mod(coeff, c, p));
        }
        out
    }

    /// Exact product; exponents add without reduction.
    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.check_compatible(other);
        let p = self.modulus.get();
        let mut out = MPoly::zero(self.modulus, self.nvars);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let exps: Vec<u32> = ea
                    .exps()
                    .iter()
                    .zip(eb.exps())
                    .map(|(&a, &b)| a + b)
                    .collect();
                out.add_term(&exps, mul_mod(ca, cb, p));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.modulus, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The pointwise-equal polynomial with every per-variable degree at most
    /// `p - 1`. A positive exponent `e` maps to `1 + (e - 1) mod (p - 1)`,
    /// the fixpoint of iterating `x^p -> x`; exponent `0` stays `0`.
    pub fn reduce(&self) -> MPoly {
        let p = self.modulus.get();
        let span = (p - 1) as u32;
        let mut out = MPoly::zero(self.modulus, self.nvars);
        for (e, c) in self.terms() {
            let exps: Vec<u32> = e
                .exps()
                .iter()
                .map(|&e| if e == 0 { 0 } else { 1 + (e - 1) % span })
                .collect();
            out.add_term(&exps, c);
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        let bound = (self.modulus.get() - 1) as u32;
        self.terms
            .keys()
            .all(|e| e.exps().iter().all(|&x| x <= bound))
    }

    /// Direct evaluation over plain field elements. Kept independent of
    /// [`MPoly::eval_scalar`] so the two paths can cross-check each other.
    pub fn evaluate(&self, point: &[FpElem]) -> FpElem {
        assert_eq!(point.len(), self.nvars, "evaluation point of wrong arity");
        let p = self.modulus.get();
        for x in point {
            assert_eq!(x.modulus(), self.modulus, "point with foreign modulus");
        }
        let mut acc = 0u64;
        for (e, c) in self.terms() {
            let mut term = c;
            for (j, &exp) in e.exps().iter().enumerate() {
                if exp > 0 {
                    term = mul_mod(term, point[j].pow(exp as u64).value(), p);
                }
            }
            acc = add_mod(acc, term, p);
        }
        self.modulus.elem(acc)
    }

    /// Evaluation through the restricted add/mul surface.
    ///
    /// The strategy is fixed so operation counts are reproducible: a table
    /// of powers per variable built by repeated multiplication, then one
    /// balanced product per monomial, a constant multiplication for
    /// non-unit coefficients, and a running sum.
    pub fn eval_scalar<T: Scalar>(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.nvars, "evaluation point of wrong arity");
        assert!(
            self.nvars > 0,
            "scalar evaluation needs at least one variable"
        );

        let mut max_exp = vec![0u32; self.nvars];
        for e in self.terms.keys() {
            for (j, &x) in e.exps().iter().enumerate() {
                max_exp[j] = max_exp[j].max(x);
            }
        }
        // powers[offsets[j] + e - 1] = x_j^e
        let mut offsets = vec![0usize; self.nvars + 1];
        for j in 0..self.nvars {
            offsets[j + 1] = offsets[j] + max_exp[j] as usize;
        }
        let mut powers: Vec<T> = Vec::with_capacity(offsets[self.nvars]);
        for j in 0..self.nvars {
            if max_exp[j] >= 1 {
                powers.push(point[j].clone());
                for _ in 2..=max_exp[j] {
                    let next = powers.last().unwrap().s_mul(&point[j]);
                    powers.push(next);
                }
            }
        }

        let mut acc: Option<T> = None;
        let mut factors: Vec<T> = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            factors.clear();
            factors.extend(
                e.exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(j, &x)| powers[offsets[j] + (x - 1) as usize].clone()),
            );
            let term = if factors.is_empty() {
                point[0].s_const(self.modulus.elem(*c))
            } else {
                let prod = balanced_product(&mut factors);
                if *c == 1 {
                    prod
                } else {
                    prod.s_mul_const(self.modulus.elem(*c))
                }
            };
            acc = Some(match acc {
                None => term,
                Some(a) => a.s_add(&term),
            });
        }
        acc.unwrap_or_else(|| point[0].s_const(self.modulus.elem(0)))
    }

    pub fn metrics(&self) -> Metrics {
        Metrics {
            monomials: self.terms.len(),
            total_degree: self
                .terms
                .keys()
                .map(|e| e.total_degree())
                .max()
                .unwrap_or(0),
            max_var_degree: self
                .terms
                .keys()
                .flat_map(|e| e.exps().iter().copied())
                .max()
                .unwrap_or(0),
        }
    }

    /// Invariance under every adjacent transposition of the variables.
    pub fn is_symmetric(&self) -> bool {
        for j in 0..self.nvars.saturating_sub(1) {
            let swapped = MPoly::from_terms(
                self.modulus,
                self.nvars,
                self.terms().map(|(e, c)| {
                    let mut exps = e.exps().to_vec();
                    exps.swap(j, j + 1);
                    (exps, c)
                }),
            );
            if swapped != *self {
                return false;
            }
        }
        true
    }
}

/// Product of the factors as a balanced tree (adjacent pairs per round),
/// keeping multiplicative depth logarithmic in the factor count. Consumes
/// the buffer in place.
fn balanced_product<T: Scalar>(layer: &mut Vec<T>) -> T {
    assert!(!layer.is_empty());
    while layer.len() > 1 {
        let mut write = 0;
        let mut read = 0;
        while read + 1 < layer.len() {
            let prod = layer[read].s_mul(&layer[read + 1]);
            layer[write] = prod;
            write += 1;
            read += 2;
        }
        if read < layer.len() {
            let last = layer[read].clone();
            layer[write] = last;
            write += 1;
        }
        layer.truncate(write);
    }
    layer.pop().unwrap()
}

/// Coefficients of the falling factorial `x (x-1) ... (x-d+1)` over `F_p`,
/// indexed by power (length `d + 1`). Built by the coefficient-vector
/// recurrence that multiplies one linear factor at a time, which is the
/// signed Stirling-number recurrence.
pub fn falling_factorial_coeffs(d: u32, p: Prime) -> Vec<u64> {
    let pv = p.get();
    let mut coeffs = vec![1u64 % pv];
    for t in 0..d as u64 {
        let shift = (pv - t % pv) % pv; // the constant of (x - t), as a residue
        let mut next = vec![0u64; coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] = add_mod(next[k + 1], c, pv);
            next[k] = add_mod(next[k], mul_mod(c, shift, pv), pv);
        }
        coeffs = next;
    }
    coeffs
}

/// The elementary symmetric polynomial `e_k` in `n` variables; zero when
/// `k > n`.
pub fn elementary_symmetric(k: usize, n: usize, p: Prime) -> MPoly {
    let mut out = MPoly::zero(p, n);
    if k > n {
        return out;
    }
    let mut subset: Vec<usize> = Vec::with_capacity(k);
    emit_subsets(&mut subset, 0, k, n, &mut |chosen| {
        let mut exps = vec![0u32; n];
        for &j in chosen {
            exps[j] = 1;
        }
        out.add_term(&exps, 1);
    });
    out
}

fn emit_subsets(
    subset: &mut Vec<usize>,
    start: usize,
    k: usize,
    n: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if subset.len() == k {
        visit(subset);
        return;
    }
    let needed = k - subset.len();
    for j in start..=(n - needed) {
        subset.push(j);
        emit_subsets(subset, j + 1, k, n, visit);
        subset.pop();
    }
}

impl fmt::Display for MPoly {
    /// Canonical text form: terms in descending graded-lexicographic order,
    /// `c*x1^a*x2^b` with unit coefficients and zero exponents omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if *c != 1 || e.is_constant() {
                parts.push(c.to_string());
            }
            for (j, &exp) in e.exps().iter().enumerate() {
                match exp {
                    0 => {}
                    1 => parts.push(format!("x{}", j + 1)),
                    _ => parts.push(format!("x{}^{}", j + 1, exp)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Evaluates `f` at every point of its domain and reports the first
/// mismatch against `expect`; a cheap full-domain equality harness.
pub fn agrees_on_domain(
    f: &MPoly,
    expect: impl Fn(&[FpElem]) -> FpElem,
) -> std::result::Result<(), Vec<u64>> {
    let p = f.modulus();
    let n = f.nvars();
    let total = (p.get() as u128).pow(n as u32);
    let mut idx = 0u128;
    while idx < total {
        let point = decode_point(idx, p, n);
        if f.evaluate(&point) != expect(&point) {
            return Err(point.iter().map(|x| x.value()).collect());
        }
        idx += 1;
    }
    Ok(())
}

/// Decodes `idx` into a point of `(F_p)^n` with `x1` most significant.
pub fn decode_point(mut idx: u128, p: Prime, n: usize) -> Vec<FpElem> {
    let pv = p.get() as u128;
    let mut point = vec![p.elem(0); n];
    for j in (0..n).rev() {
        point[j] = p.elem((idx % pv) as u64);
        idx /= pv;
    }
    point
}

/// Ok(()) or the first point where the polynomials differ.
pub fn pointwise_equal(f: &MPoly, g: &MPoly) -> std::result::Result<(), Vec<u64>> {
    agrees_on_domain(f, |x| g.evaluate(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn random_poly(
        rng: &mut ChaCha8Rng,
        pp: Prime,
        nvars: usize,
        max_exp: u32,
        terms: usize,
    ) -> MPoly {
        MPoly::from_terms(
            pp,
            nvars,
            (0..terms).map(|_| {
                let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
                (exps, rng.gen_range(0..pp.get()))
            }),
        )
    }

    #[test]
    fn product_adds_exponents_without_reduction() {
        let pp = p(5);
        let x = MPoly::var(pp, 1, 0);
        let x4 = MPoly::from_terms(pp, 1, [(vec![4], 1)]);
        let prod = x.mul(&x4);
        assert_eq!(prod.coeff(&[5]), 1);
        assert!(!prod.is_reduced());
    }

    #[test]
    fn scaling_by_minus_one_cancels() {
        let pp = p(7);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let f = random_poly(&mut rng, pp, 2, 6, 5);
            assert!(f.add(&f.scale(6)).is_zero());
        }
    }

    #[test]
    fn small_product_mod_3() {
        // (x + 1)(x + 2) = x^2 + 2 over F_3
        let pp = p(3);
        let f = MPoly::from_univariate(pp, 1, 0, &[1, 1]);
        let g = MPoly::from_univariate(pp, 1, 0, &[2, 1]);
        let prod = f.mul(&g);
        assert_eq!(prod, MPoly::from_univariate(pp, 1, 0, &[2, 0, 1]));
    }

    #[test]
    fn reduce_examples() {
        let p3 = p(3);
        let x_p = MPoly::from_terms(p3, 1, [(vec![3], 1)]);
        assert_eq!(x_p.reduce(), MPoly::var(p3, 1, 0));
        let x5 = MPoly::from_terms(p3, 1, [(vec![5], 1)]);
        assert_eq!(x5.reduce(), MPoly::var(p3, 1, 0));
        let x4 = MPoly::from_terms(p3, 1, [(vec![4], 1)]);
        assert_eq!(x4.reduce(), MPoly::from_terms(p3, 1, [(vec![2], 1)]));
    }

    #[test]
    fn reduce_preserves_the_function_and_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for pv in [2u64, 3, 5, 7] {
            let pp = p(pv);
            for nvars in 1..=3usize {
                for _ in 0..8 {
                    let f = random_poly(&mut rng, pp, nvars, 3 * pv as u32, 6);
                    let r = f.reduce();
                    assert!(r.is_reduced());
                    assert_eq!(r.reduce(), r, "idempotence");
                    assert!(r.metrics().total_degree <= f.metrics().total_degree);
                    assert_eq!(pointwise_equal(&f, &r), Ok(()));
                }
            }
        }
    }

    #[test]
    fn ring_laws_hold_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for pv in [2u64, 3, 5] {
            let pp = p(pv);
            for _ in 0..6 {
                let f = random_poly(&mut rng, pp, 2, 4, 4);
                let g = random_poly(&mut rng, pp, 2, 4, 4);
                let h = random_poly(&mut rng, pp, 2, 4, 4);
                let assoc = f.mul(&g).mul(&h);
                let assoc2 = f.mul(&g.mul(&h));
                assert_eq!(pointwise_equal(&assoc, &assoc2), Ok(()));
                let dist = f.mul(&g.add(&h));
                let dist2 = f.mul(&g).add(&f.mul(&h));
                assert_eq!(pointwise_equal(&dist, &dist2), Ok(()));
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        let p3 = p(3);
        let c = MPoly::constant(p3, 2, 2);
        assert_eq!(c.evaluate(&[p3.elem(0), p3.elem(2)]), p3.elem(2));

        let p2 = p(2);
        let and = MPoly::from_terms(p2, 2, [(vec![1, 1], 1)]);
        assert_eq!(and.evaluate(&[p2.elem(1), p2.elem(1)]), p2.elem(1));

        // x(x-1) y(y-1) at (2, 2) over F_3: the next digit of 2*2
        let ff = falling_factorial_coeffs(2, p3);
        let fx = MPoly::from_univariate(p3, 2, 0, &ff);
        let fy = MPoly::from_univariate(p3, 2, 1, &ff);
        let f = fx.mul(&fy);
        assert_eq!(f.evaluate(&[p3.elem(2), p3.elem(2)]), p3.elem(1));
    }

    #[test]
    fn metrics_examples() {
        let p3 = p(3);
        assert_eq!(
            MPoly::zero(p3, 2).metrics(),
            Metrics {
                monomials: 0,
                total_degree: 0,
                max_var_degree: 0
            }
        );
        let ff = falling_factorial_coeffs(2, p3);
        let f = MPoly::from_univariate(p3, 2, 0, &ff).mul(&MPoly::from_univariate(p3, 2, 1, &ff));
        let m = f.metrics();
        assert_eq!(m.monomials, 4);
        assert_eq!(m.total_degree, 4);
        assert_eq!(m.max_var_degree, 2);
    }

    #[test]
    fn elementary_symmetric_examples() {
        let p2 = p(2);
        assert_eq!(elementary_symmetric(0, 3, p2), MPoly::one(p2, 3));
        assert_eq!(
            elementary_symmetric(2, 2, p2),
            MPoly::from_terms(p2, 2, [(vec![1, 1], 1)])
        );
        let p5 = p(5);
        let e2 = elementary_symmetric(2, 3, p5);
        assert_eq!(
            e2,
            MPoly::from_terms(
                p5,
                3,
                [(vec![1, 1, 0], 1), (vec![1, 0, 1], 1), (vec![0, 1, 1], 1)]
            )
        );
        assert!(elementary_symmetric(4, 3, p5).is_zero());
    }

    #[test]
    fn symmetry_detection() {
        let p5 = p(5);
        let sym = MPoly::var(p5, 2, 0).add(&MPoly::var(p5, 2, 1));
        assert!(sym.is_symmetric());
        assert!(!MPoly::var(p5, 2, 0).is_symmetric());
        assert!(elementary_symmetric(2, 4, p5).is_symmetric());
    }

    #[test]
    fn display_is_canonical() {
        let p3 = p(3);
        assert_eq!(MPoly::zero(p3, 2).to_string(), "0");
        assert_eq!(MPoly::constant(p3, 2, 1).to_string(), "1");
        let f = MPoly::from_terms(
            p3,
            2,
            [
                (vec![2, 2], 1),
                (vec![2, 1], 2),
                (vec![1, 2], 2),
                (vec![1, 1], 1),
            ],
        );
        assert_eq!(f.to_string(), "x1^2*x2^2 + 2*x1^2*x2 + 2*x1*x2^2 + x1*x2");
    }

    #[test]
    fn falling_factorial_small_cases() {
        let p5 = p(5);
        assert_eq!(falling_factorial_coeffs(0, p5), vec![1]);
        assert_eq!(falling_factorial_coeffs(1, p5), vec![0, 1]);
        // x(x-1) = x^2 - x = x^2 + 4x
        assert_eq!(falling_factorial_coeffs(2, p5), vec![0, 4, 1]);
        // values match the defining product
        for d in 0..5u32 {
            let coeffs = falling_factorial_coeffs(d, p5);
            let f = MPoly::from_univariate(p5, 1, 0, &coeffs);
            for x in 0..5u64 {
                let mut want = p5.elem(1);
                for t in 0..d as u64 {
                    want = want * (p5.elem(x) - p5.elem(t));
                }
                assert_eq!(f.evaluate(&[p5.elem(x)]), want);
            }
        }
    }

    #[test]
    fn scalar_eval_agrees_with_plain_eval() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for pv in [2u64, 5, 11] {
            let pp = p(pv);
            for _ in 0..50 {
                let f = random_poly(&mut rng, pp, 3, (pv - 1) as u32, 6);
                let point: Vec<FpElem> = (0..3).map(|_| pp.elem(rng.gen_range(0..pv))).collect();
                assert_eq!(f.eval_scalar(&point), f.evaluate(&point));
            }
        }
    }

    // Property coverage beyond the fixed seeds above.
    proptest::proptest! {
        #[test]
        fn prop_reduce_is_pointwise_identity(
            pv in proptest::sample::select(vec![2u64, 3, 5]),
            seed in 0u64..5000,
        ) {
            let pp = p(pv);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let nvars = rng.gen_range(1..=3);
            let f = random_poly(&mut rng, pp, nvars, 3 * pv as u32, 5);
            let r = f.reduce();
            proptest::prop_assert!(r.is_reduced());
            proptest::prop_assert_eq!(pointwise_equal(&f, &r), Ok(()));
        }
    }
}
