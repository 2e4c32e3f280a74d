//! Field values wrapped so that only addition, multiplication and constant
//! injection are possible — the shape of computing on encrypted digits.
//!
//! Every operation is recorded on a [`CostTape`]: additions, proper
//! (value-by-value) multiplications, multiplications by constants, and the
//! running maximum of multiplicative depth, the dominant cost driver of
//! leveled homomorphic schemes. There is no subtraction, division,
//! comparison or branch-on-value surface; algorithms compiled against
//! [`TrackedValue`] are add/mul-only by construction.

use std::cell::Cell;
use std::fmt;

use crate::fp::{FpElem, Prime, Scalar};
use crate::mpoly::MPoly;

/// Operation counters for one logical computation. Single-threaded by
/// contract: concurrent computations each own a tape.
#[derive(Debug, Default)]
pub struct CostTape {
    adds: Cell<u64>,
    muls: Cell<u64>,
    const_muls: Cell<u64>,
    max_depth: Cell<u32>,
}

impl CostTape {
    pub fn new() -> Self {
        CostTape::default()
    }

    /// Wraps a fresh input value (depth 0, not a constant).
    pub fn input(&self, value: FpElem) -> TrackedValue<'_> {
        TrackedValue {
            value,
            depth: 0,
            konst: false,
            tape: self,
        }
    }

    /// Injects a known constant (depth 0; products with it are cheap).
    pub fn constant(&self, value: FpElem) -> TrackedValue<'_> {
        TrackedValue {
            value,
            depth: 0,
            konst: true,
            tape: self,
        }
    }

    pub fn report(&self) -> CostReport {
        CostReport {
            adds: self.adds.get(),
            muls: self.muls.get(),
            const_muls: self.const_muls.get(),
            max_depth: self.max_depth.get(),
        }
    }

    fn saw_depth(&self, depth: u32) {
        if depth > self.max_depth.get() {
            self.max_depth.set(depth);
        }
    }
}

/// Snapshot of a tape. Counters only ever grow while a computation runs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct CostReport {
    pub adds: u64,
    pub muls: u64,
    pub const_muls: u64,
    pub max_depth: u32,
}

impl fmt::Display for CostReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "adds = {}", self.adds)?;
        writeln!(f, "muls = {}", self.muls)?;
        writeln!(f, "const_muls = {}", self.const_muls)?;
        write!(f, "max_depth = {}", self.max_depth)
    }
}

/// A field element that can only be added, multiplied, or combined with
/// injected constants, with costs recorded on its tape.
#[derive(Clone, Copy)]
pub struct TrackedValue<'t> {
    value: FpElem,
    depth: u32,
    konst: bool,
    tape: &'t CostTape,
}

impl<'t> TrackedValue<'t> {
    /// The plain field value. Reading it is the "decryption" boundary;
    /// the arithmetic surface never branches on it.
    pub fn value(self) -> FpElem {
        self.value
    }

    pub fn depth(self) -> u32 {
        self.depth
    }

    pub fn is_constant(self) -> bool {
        self.konst
    }

    fn check_tape(self, other: TrackedValue<'t>) {
        assert!(
            std::ptr::eq(self.tape, other.tape),
            "values from different cost tapes combined"
        );
    }
}

impl<'t> std::ops::Add for TrackedValue<'t> {
    type Output = TrackedValue<'t>;

    fn add(self, other: TrackedValue<'t>) -> TrackedValue<'t> {
        self.check_tape(other);
        self.tape.adds.set(self.tape.adds.get() + 1);
        // the max of two already-recorded depths cannot set a new maximum
        TrackedValue {
            value: self.value + other.value,
            depth: self.depth.max(other.depth),
            konst: self.konst && other.konst,
            tape: self.tape,
        }
    }
}

impl<'t> std::ops::Mul for TrackedValue<'t> {
    type Output = TrackedValue<'t>;

    fn mul(self, other: TrackedValue<'t>) -> TrackedValue<'t> {
        self.check_tape(other);
        let konst = self.konst || other.konst;
        let depth = if konst {
            // scaling by a constant does not consume a level
            self.tape.const_muls.set(self.tape.const_muls.get() + 1);
            self.depth.max(other.depth)
        } else {
            let depth = self.depth.max(other.depth) + 1;
            self.tape.muls.set(self.tape.muls.get() + 1);
            self.tape.saw_depth(depth);
            depth
        };
        TrackedValue {
            value: self.value * other.value,
            depth,
            konst: self.konst && other.konst,
            tape: self.tape,
        }
    }
}

impl fmt::Debug for TrackedValue<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} @depth {}{}",
            self.value,
            self.depth,
            if self.konst { " (const)" } else { "" }
        )
    }
}

impl<'t> Scalar for TrackedValue<'t> {
    fn s_add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn s_mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn s_mul_const(&self, c: FpElem) -> Self {
        *self * self.tape.constant(c)
    }
    fn s_const(&self, c: FpElem) -> Self {
        self.tape.constant(c)
    }
    fn s_lift(&self) -> u64 {
        self.value.value()
    }
    fn s_modulus(&self) -> Prime {
        self.value.modulus()
    }
}

/// Evaluates a reduced polynomial over tracked values with the fixed
/// power-table strategy, so costs are reproducible bit for bit.
///
/// The multiplicative depth added on top of the inputs is at most
/// `ceil(log2 D) + (p - 2)` where `D` is the largest total monomial degree:
/// a power `x^e` costs depth `e - 1 <= p - 2` and the balanced per-monomial
/// product adds `ceil(log2 k)` over its `k <= D` factors.
pub fn eval_tracked<'t>(f: &MPoly, point: &[TrackedValue<'t>]) -> TrackedValue<'t> {
    let max_in = point.iter().map(|v| v.depth).max().unwrap_or(0);
    let out = f.eval_scalar(point);
    debug_assert!(
        {
            let d = f.metrics().total_degree.max(1);
            let budget = (u64::BITS - (d - 1).leading_zeros()) + f.modulus().get() as u32 - 2;
            out.depth <= max_in + budget
        },
        "depth bound exceeded for {f}"
    );
    out
}
