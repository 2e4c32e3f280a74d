//! Truth-table interpolation and the falling-factorial basis.
//!
//! Interpolation produces the unique polynomial of per-variable degree at
//! most `p - 1` realizing a given function on `(F_p)^n`; it is the
//! module-independent oracle for every closed form in this crate. The
//! falling-factorial products form a second basis of the same space in
//! which the addition carries have one coefficient per bounded composition.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fp::{add_mod, inv_mod, mul_mod, FpElem, Prime, Scalar};
use crate::mpoly::{decode_point, falling_factorial_coeffs, MPoly};

/// A function `(F_p)^n -> F_p` tabulated over the whole domain.
///
/// Entry `i` holds the value at the point whose base-`p` encoding is `i`
/// with `x1` most significant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruthTable {
    modulus: Prime,
    nvars: usize,
    values: Vec<FpElem>,
}

impl TruthTable {
    pub fn new(p: Prime, nvars: usize, values: Vec<FpElem>) -> Self {
        let len = (p.get() as u128).pow(nvars as u32);
        assert_eq!(
            values.len() as u128,
            len,
            "table must cover the domain exactly"
        );
        assert!(
            values.iter().all(|v| v.modulus() == p),
            "values with foreign modulus"
        );
        TruthTable {
            modulus: p,
            nvars,
            values,
        }
    }

    pub fn from_fn(p: Prime, nvars: usize, mut f: impl FnMut(&[FpElem]) -> FpElem) -> Self {
        let len = (p.get() as u128).pow(nvars as u32);
        assert!(len <= usize::MAX as u128, "domain too large to tabulate");
        let values = (0..len).map(|i| f(&decode_point(i, p, nvars))).collect();
        TruthTable::new(p, nvars, values)
    }

    /// Tabulates a polynomial; with [`interpolate`] this closes the
    /// round-trip used by the uniqueness tests.
    pub fn tabulate(f: &MPoly) -> Self {
        TruthTable::from_fn(f.modulus(), f.nvars(), |x| f.evaluate(x))
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn values(&self) -> &[FpElem] {
        &self.values
    }

    pub fn get(&self, point: &[FpElem]) -> FpElem {
        self.values[self.index(point)]
    }

    fn index(&self, point: &[FpElem]) -> usize {
        assert_eq!(point.len(), self.nvars);
        let p = self.modulus.get() as u128;
        let mut idx = 0u128;
        for x in point {
            idx = idx * p + x.value() as u128;
        }
        idx as usize
    }

    /// Text form: header `p n`, then one `x1 x2 ... xn -> v` line per point
    /// in index order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.modulus, self.nvars);
        for (i, v) in self.values.iter().enumerate() {
            let point = decode_point(i as u128, self.modulus, self.nvars);
            let coords: Vec<String> = point.iter().map(|x| x.value().to_string()).collect();
            out.push_str(&format!("{} -> {}\n", coords.join(" "), v.value()));
        }
        out
    }

    /// Parses the text form. Lines may appear in any order but must cover
    /// the domain exactly once.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (line_no, header) = lines.next().ok_or(Error::TableFormat {
            line: 1,
            msg: "missing `p n` header".into(),
        })?;
        let mut head = header.split_whitespace();
        let p_raw: u64 = head
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad_line(line_no, "header must be `p n`"))?;
        let nvars: usize = head
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad_line(line_no, "header must be `p n`"))?;
        if head.next().is_some() {
            return Err(bad_line(line_no, "header must be `p n`"));
        }
        let p = Prime::new(p_raw)?;
        let len_u128 = (p.get() as u128).pow(nvars as u32);
        if len_u128 > (1 << 24) {
            return Err(bad_line(line_no, "domain too large"));
        }
        let len = len_u128 as usize;

        let mut values: Vec<Option<FpElem>> = vec![None; len];
        for (line_no, line) in lines {
            let (coords, value) = line
                .split_once("->")
                .ok_or_else(|| bad_line(line_no, "expected `x1 x2 ... xn -> v`"))?;
            let point: Vec<u64> = coords
                .split_whitespace()
                .map(|t| {
                    t.parse::<u64>()
                        .map_err(|_| bad_line(line_no, "bad coordinate"))
                })
                .collect::<Result<_>>()?;
            if point.len() != nvars {
                return Err(bad_line(line_no, &format!("expected {nvars} coordinates")));
            }
            if let Some(&x) = point.iter().find(|&&x| x >= p.get()) {
                return Err(bad_line(
                    line_no,
                    &format!("coordinate {x} outside [0, {})", p.get()),
                ));
            }
            let v: u64 = value
                .trim()
                .parse()
                .map_err(|_| bad_line(line_no, "bad value"))?;
            if v >= p.get() {
                return Err(bad_line(
                    line_no,
                    &format!("value {v} outside [0, {})", p.get()),
                ));
            }
            let mut idx = 0usize;
            for &x in &point {
                idx = idx * p.get() as usize + x as usize;
            }
            if values[idx].is_some() {
                return Err(bad_line(
                    line_no,
                    &format!("tuple ({}) listed twice", fmt_tuple(&point)),
                ));
            }
            values[idx] = Some(p.elem(v));
        }
        if let Some(missing) = values.iter().position(|v| v.is_none()) {
            let point = decode_point(missing as u128, p, nvars);
            let coords: Vec<u64> = point.iter().map(|x| x.value()).collect();
            return Err(Error::TableFormat {
                line: 0,
                msg: format!("tuple ({}) is missing", fmt_tuple(&coords)),
            });
        }
        Ok(TruthTable::new(
            p,
            nvars,
            values.into_iter().map(|v| v.unwrap()).collect(),
        ))
    }
}

fn bad_line(line_no: usize, msg: &str) -> Error {
    Error::TableFormat {
        line: line_no + 1,
        msg: msg.to_string(),
    }
}

fn fmt_tuple(xs: &[u64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// The reduced polynomial that is `1` at `a` and `0` elsewhere:
/// the product over variables of `1 - (x_i - a_i)^(p-1)`.
pub fn indicator_poly(a: &[FpElem]) -> MPoly {
    assert!(!a.is_empty());
    let p = a[0].modulus();
    let n = a.len();
    let mut out = MPoly::one(p, n);
    for (j, &aj) in a.iter().enumerate() {
        let row = indicator_row(aj.value(), p);
        out = out.mul(&MPoly::from_univariate(p, n, j, &row));
    }
    out
}

/// Coefficients (by power) of the univariate `1 - (x - a)^(p-1)`.
fn indicator_row(a: u64, p: Prime) -> Vec<u64> {
    let pv = p.get();
    // (x - a)^(p-1) by repeated multiplication with (x - a)
    let mut coeffs = vec![1u64 % pv];
    let neg_a = (pv - a % pv) % pv;
    for _ in 0..pv - 1 {
        let mut next = vec![0u64; coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] = add_mod(next[k + 1], c, pv);
            next[k] = add_mod(next[k], mul_mod(c, neg_a, pv), pv);
        }
        coeffs = next;
    }
    let mut row = vec![0u64; pv as usize];
    for (k, &c) in coeffs.iter().enumerate() {
        if k < row.len() {
            row[k] = add_mod(row[k], pv - c, pv); // negate
        }
    }
    row[0] = add_mod(row[0], 1, pv);
    row
}

/// The unique reduced polynomial reproducing the table: the sum over points
/// `a` of `f(a)` times the indicator of `a`, assembled one variable at a
/// time so the cost stays `n * p^(n+1)` instead of `p^(2n)`.
pub fn interpolate(t: &TruthTable) -> MPoly {
    let p = t.modulus();
    let pv = p.get() as usize;
    let n = t.nvars();
    if n == 0 {
        let c = t.values()[0];
        return MPoly::constant(p, 0, c.value());
    }
    // rows[a][k]: coefficient of x^k in the indicator of a
    let rows: Vec<Vec<u64>> = (0..p.get()).map(|a| indicator_row(a, p)).collect();

    // data[i] indexed like the table; repeatedly transform the axis of x_n,
    // then rotate so each axis becomes last exactly once.
    let mut data: Vec<u64> = t.values().iter().map(|v| v.value()).collect();
    let len = data.len();
    for _ in 0..n {
        let mut next = vec![0u64; len];
        for block in 0..len / pv {
            let base = block * pv;
            for a in 0..pv {
                let v = data[base + a];
                if v == 0 {
                    continue;
                }
                for k in 0..pv {
                    let c = rows[a][k];
                    if c != 0 {
                        next[base + k] = add_mod(next[base + k], mul_mod(v, c, p.get()), p.get());
                    }
                }
            }
        }
        // rotate axes: index (x1 ... xn) -> (xn x1 ... x(n-1))
        let stride = len / pv;
        let mut rotated = vec![0u64; len];
        for (i, &v) in next.iter().enumerate() {
            let (rest, last) = (i / pv, i % pv);
            rotated[last * stride + rest] = v;
        }
        data = rotated;
    }
    MPoly::from_terms(
        p,
        n,
        data.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let mut idx = i;
                let mut exps = vec![0u32; n];
                for j in (0..n).rev() {
                    exps[j] = (idx % pv) as u32;
                    idx /= pv;
                }
                (exps, c)
            }),
    )
}

/// A polynomial written in the falling-factorial basis: a sum of
/// `coeff * prod_j x_j (x_j - 1) ... (x_j - d_j + 1)` over compositions
/// `d` with every part at most `p - 1`.
///
/// Term data is flattened at construction (`parts` holds the compositions
/// back to back) so evaluation walks contiguous memory; these evaluations
/// sit in the inner loops of the big-integer algorithms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GammaPoly {
    modulus: Prime,
    nvars: usize,
    /// Sorted by composition for deterministic iteration.
    terms: Vec<(Vec<u32>, u64)>,
    parts: Vec<u32>,
    coeffs: Vec<u64>,
    /// Largest part per variable, and cumulative table offsets.
    max_parts: Vec<u32>,
    offsets: Vec<usize>,
}

impl GammaPoly {
    pub fn new(p: Prime, nvars: usize, mut terms: Vec<(Vec<u32>, u64)>) -> Self {
        let bound = (p.get() - 1) as u32;
        for (d, c) in &terms {
            assert_eq!(d.len(), nvars, "composition of wrong length");
            assert!(
                d.iter().all(|&x| x <= bound),
                "composition part exceeds p - 1"
            );
            assert!(
                *c != 0 && *c < p.get(),
                "coefficients must be reduced and nonzero"
            );
        }
        terms.sort();
        let mut parts = Vec::with_capacity(terms.len() * nvars);
        let mut coeffs = Vec::with_capacity(terms.len());
        let mut max_parts = vec![0u32; nvars];
        for (d, c) in &terms {
            parts.extend_from_slice(d);
            coeffs.push(*c);
            for (j, &x) in d.iter().enumerate() {
                max_parts[j] = max_parts[j].max(x);
            }
        }
        let mut offsets = vec![0usize; nvars + 1];
        for j in 0..nvars {
            offsets[j + 1] = offsets[j] + max_parts[j] as usize;
        }
        GammaPoly {
            modulus: p,
            nvars,
            terms,
            parts,
            coeffs,
            max_parts,
            offsets,
        }
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Vec<u32>, u64)] {
        &self.terms
    }

    pub fn from_mpoly(f: &MPoly) -> Self {
        let coeffs = to_gamma_basis(f);
        GammaPoly::new(f.modulus(), f.nvars(), coeffs.into_iter().collect())
    }

    pub fn to_mpoly(&self) -> MPoly {
        gamma_to_poly(
            &self.terms.iter().cloned().collect(),
            self.nvars,
            self.modulus,
        )
    }

    /// Evaluation through the restricted add/mul surface, using one table of
    /// falling-factorial values per variable. Each table step multiplies by
    /// `x_j - t`, i.e. `x_j` plus an injected constant. Allocates only the
    /// table buffer.
    pub fn eval_scalar<T: Scalar>(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.nvars, "evaluation point of wrong arity");
        assert!(self.nvars > 0);
        let p = self.modulus;
        let pv = p.get();

        // falling[offsets[j] + d - 1] = x_j (x_j - 1) ... (x_j - d + 1)
        let mut falling: Vec<T> = Vec::with_capacity(self.offsets[self.nvars]);
        for j in 0..self.nvars {
            if self.max_parts[j] >= 1 {
                falling.push(point[j].clone());
                for t in 1..self.max_parts[j] as u64 {
                    let shifted = point[j].s_add(&point[j].s_const(p.elem(pv - t % pv)));
                    let next = falling.last().unwrap().s_mul(&shifted);
                    falling.push(next);
                }
            }
        }

        let mut acc: Option<T> = None;
        for (d, &c) in self.parts.chunks_exact(self.nvars).zip(&self.coeffs) {
            let mut prod: Option<T> = None;
            for (j, &dj) in d.iter().enumerate() {
                if dj > 0 {
                    let f = &falling[self.offsets[j] + (dj - 1) as usize];
                    prod = Some(match prod {
                        None => f.clone(),
                        Some(acc) => acc.s_mul(f),
                    });
                }
            }
            let term = match prod {
                None => point[0].s_const(p.elem(c)),
                Some(prod) if c == 1 => prod,
                Some(prod) => prod.s_mul_const(p.elem(c)),
            };
            acc = Some(match acc {
                None => term,
                Some(a) => a.s_add(&term),
            });
        }
        acc.unwrap_or_else(|| point[0].s_const(p.elem(0)))
    }
}

/// Coefficients of `f` in the falling-factorial basis.
///
/// Solved by the triangular recursion: visit compositions in an order
/// compatible with the componentwise partial order, evaluate `f` there,
/// subtract the contributions of dominated compositions, and divide by the
/// diagonal value `prod d_j!`, which is a unit.
pub fn to_gamma_basis(f: &MPoly) -> BTreeMap<Vec<u32>, u64> {
    assert!(f.is_reduced(), "convert reduced polynomials only");
    let p = f.modulus();
    let pv = p.get();
    let n = f.nvars();
    // ff_val[d][x] = x (x-1) ... (x-d+1) mod p
    let ff_val: Vec<Vec<u64>> = (0..pv as usize)
        .map(|d| {
            (0..pv)
                .map(|x| {
                    let mut acc = 1u64 % pv;
                    for t in 0..d as u64 {
                        acc = mul_mod(acc, (x + pv - t % pv) % pv, pv);
                    }
                    acc
                })
                .collect()
        })
        .collect();

    let mut gamma: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let full = vec![(pv - 1) as u32; n];
    let mut d = vec![0u32; n];
    loop {
        let point: Vec<FpElem> = d.iter().map(|&x| p.elem(x as u64)).collect();
        let mut value = f.evaluate(&point).value();
        // subtract the contributions of dominated compositions e <= d, e != d
        let mut e = vec![0u32; n];
        loop {
            if e != d {
                if let Some(&g) = gamma.get(&e) {
                    let mut w = g;
                    for j in 0..n {
                        w = mul_mod(w, ff_val[e[j] as usize][d[j] as usize], pv);
                    }
                    value = add_mod(value, pv - w, pv);
                }
            }
            if !next_in_box(&mut e, &d) {
                break;
            }
        }
        if value != 0 {
            let mut diag = 1u64 % pv;
            for &x in &d {
                diag = mul_mod(diag, ff_val[x as usize][x as usize], pv);
            }
            let c = mul_mod(value, inv_mod(diag, pv).expect("d! is a unit"), pv);
            gamma.insert(d.clone(), c);
        }
        if !next_in_box(&mut d, &full) {
            break;
        }
    }
    gamma
}

/// Advances `d` through the box `[0, bounds]` in row-major order; `false`
/// once the box is exhausted.
fn next_in_box(d: &mut [u32], bounds: &[u32]) -> bool {
    for j in (0..d.len()).rev() {
        if d[j] < bounds[j] {
            d[j] += 1;
            for t in &mut d[j + 1..] {
                *t = 0;
            }
            return true;
        }
    }
    false
}

/// Expands falling-factorial coefficients back into a reduced polynomial.
pub fn gamma_to_poly(coeffs: &BTreeMap<Vec<u32>, u64>, n: usize, p: Prime) -> MPoly {
    let bound = (p.get() - 1) as u32;
    let mut out = MPoly::zero(p, n);
    for (d, &c) in coeffs {
        assert_eq!(d.len(), n, "composition of wrong length");
        assert!(
            d.iter().all(|&x| x <= bound),
            "composition part exceeds p - 1"
        );
        if c % p.get() == 0 {
            continue;
        }
        let mut term = MPoly::constant(p, n, c);
        for (j, &dj) in d.iter().enumerate() {
            if dj > 0 {
                let ff = falling_factorial_coeffs(dj, p);
                term = term.mul(&MPoly::from_univariate(p, n, j, &ff));
            }
        }
        out = out.add(&term);
    }
    out
}
