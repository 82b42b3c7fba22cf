//! Nilpotent, k-potent and (m,k)-type elements of `A_t`.
//!
//! Every element of `A_t` satisfies `x^2 - t(x) x + n(x) = 0`, so the
//! subalgebra generated by `x` is at most two-dimensional. That gives a
//! closed-form classification ([`classify_structured`]) which is checked
//! against a plain power-iteration oracle ([`classify_iterative`]).
//!
//! Conventions:
//!
//! - `x` is *k-potent* when `k >= 2` is the smallest exponent with `x^k = x`.
//!   When `x` is a unit of order `s`, `k = s + 1`.
//! - Nilpotent elements always have index 2: `n(x) = t(x) = 0` and `x^2 = 0`.
//! - The zero element is its own class.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cayley::{AlgebraCtx, BasisProductTable, Element};
use crate::modp::{Prime, Residue};

pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PotencyError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("algebra has {size} elements, above the enumeration limit of {limit}")]
    TooLarge { size: String, limit: u64 },
}

/// Search bound `p^2 + 1` for power iteration.
///
/// `Z_p[x]` has at most `p^2` elements, so the order of a unit divides one
/// of `p^2 - 1`, `(p-1)^2` or `p(p-1)`, all below `p^2`.
pub fn default_bound(p: Prime) -> u64 {
    let p = p.get() as u64;
    p * p + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PotencyClass {
    Zero,
    Nilpotent,
    KPotent,
    Unclassified,
}

/// Which branch of the classifier produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Zero,
    /// Nonzero scalar `a`: `k = ord(a) + 1`.
    Scalar,
    /// `n(x) = 0`, `t(x) != 0`: `x^k = t(x)^(k-1) x`, so `k = ord(t(x)) + 1`.
    TraceOrder,
    /// `n(x) = t(x) = 0`.
    Nilpotent,
    /// `x = eta + w` with `w` nilpotent: `x^n = eta^n + n eta^(n-1) w`.
    NilpotentShift,
    /// Scalar-sequence scan stopped at `C_m = 0`: `x^m = D_m w`.
    SequenceC,
    /// Scalar-sequence scan stopped at `D_m = 0`: `x^m = C_m`.
    SequenceD,
    /// Brute-force power iteration.
    Iterative,
    Unresolved,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Route::Zero => "zero",
            Route::Scalar => "scalar",
            Route::TraceOrder => "trace-order",
            Route::Nilpotent => "nilpotent",
            Route::NilpotentShift => "nilpotent-shift",
            Route::SequenceC => "sequence-c",
            Route::SequenceD => "sequence-d",
            Route::Iterative => "iterative",
            Route::Unresolved => "unresolved",
        };
        f.write_str(s)
    }
}

/// Intermediate quantities of the structured classification.
///
/// - `m`: first index `>= 2` with `C_m = 0` or `D_m = 0`
/// - `M`: order of the scalar `z^(2m)` (when `C_m = 0`)
/// - `theta`: order of `D_m` (when `C_m = 0`), or of `eta` for nilpotent shifts
/// - `tau`: order of `beta = w^2` (recorded only; no formula uses it)
/// - `upsilon`: order of `C_m` (when `D_m = 0`)
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub m: Option<u64>,
    #[serde(rename = "M")]
    pub big_m: Option<u64>,
    pub theta: Option<u64>,
    pub tau: Option<u64>,
    pub upsilon: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PotencyReport {
    pub class: PotencyClass,
    /// Potency index (`KPotent`) or nilpotency index (`Nilpotent`).
    pub k: Option<u64>,
    /// Order of the element when it is a unit.
    pub s: Option<u64>,
    /// Smallest `(m, k)` with `x^m = x^k`, `m > k`.
    pub mk_type: Option<(u64, u64)>,
    pub route: Route,
    pub witnesses: Witnesses,
    pub trace: Residue,
    pub norm: Residue,
}

impl PotencyReport {
    fn new(x: &Element, class: PotencyClass, route: Route) -> Self {
        PotencyReport {
            class,
            k: None,
            s: None,
            mk_type: None,
            route,
            witnesses: Witnesses::default(),
            trace: x.trace(),
            norm: x.norm(),
        }
    }

    fn with_mk(mut self, mk: (u64, u64)) -> Self {
        self.mk_type = Some(mk);
        self
    }

    fn k_potent(mut self, k: u64) -> Self {
        self.k = Some(k);
        self.mk_type = Some((k, 1));
        self
    }

    fn unit_of_order(self, s: u64) -> Self {
        let mut r = self.k_potent(s + 1);
        r.s = Some(s);
        r
    }
}

/// `Some(2)` for nonzero `x` with `n(x) = t(x) = 0`; `None` otherwise.
pub fn nilpotency_index(x: &Element) -> Option<u32> {
    (!x.is_zero() && x.norm().is_zero() && x.trace().is_zero()).then_some(2)
}

/// Smallest `2 <= k <= bound` with `x^k = x`, by repeated multiplication.
pub fn potency_index_iterative(x: &Element, bound: u64) -> Option<u64> {
    let mut cur = x.clone();
    for k in 2..=bound {
        cur = &cur * x;
        if &cur == x {
            return Some(k);
        }
    }
    None
}

/// Potency index of a nonzero element with `n(x) = 0` and `t(x) != 0`.
///
/// The result never exceeds `p`.
pub fn potency_via_trace(x: &Element) -> Result<u64, PotencyError> {
    if !x.norm().is_zero() {
        return Err(PotencyError::PreconditionViolated("norm must be zero"));
    }
    let t = x.trace();
    let order = t
        .order()
        .map_err(|_| PotencyError::PreconditionViolated("trace must be nonzero"))?;
    Ok(order + 1)
}

/// Coefficients of `z^r = C_r + D_r w` for `z = a + w`, `w^2 = beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScalarPair {
    pub r: u64,
    #[serde(rename = "C")]
    pub c: Residue,
    #[serde(rename = "D")]
    pub d: Residue,
}

impl ScalarPair {
    fn start(a: Residue) -> Self {
        let p = a.modulus();
        ScalarPair {
            r: 0,
            c: p.one(),
            d: p.zero(),
        }
    }

    fn next(self, a: Residue, beta: Residue) -> Self {
        ScalarPair {
            r: self.r + 1,
            c: a * self.c + beta * self.d,
            d: self.c + a * self.d,
        }
    }
}

/// `(C_r, D_r)` for `r = 0..=r_max`.
pub fn scalar_sequence(a: Residue, beta: Residue, r_max: u64) -> Vec<ScalarPair> {
    let mut out = Vec::with_capacity(r_max as usize + 1);
    let mut cur = ScalarPair::start(a);
    out.push(cur);
    for _ in 0..r_max {
        cur = cur.next(a, beta);
        out.push(cur);
    }
    out
}

/// Closed-form classification.
///
/// Writes `z = a + w` with `a` the real part and `w` the imaginary part, so
/// `t(w) = 0` and `w^2 = beta = -n(w)` is a scalar. Then:
///
/// - `n(z) = 0`: nilpotent if `t(z) = 0`, else `k = ord(t(z)) + 1`;
/// - `w = 0`: `k = ord(a) + 1`;
/// - `n(w) = 0`: `z = a + w` with `w` nilpotent has order `p ord(a)`;
/// - otherwise scan `(C_r, D_r)` for the first `m >= 2` where one vanishes.
///   `D_m = 0` means `z^m = C_m` is scalar and `s = m ord(C_m)`. `C_m = 0`
///   means `z^m = D_m w`, so `z^(2m) = D_m^2 beta` and `s = 2m ord(z^(2m))`.
///
/// The scan starts at 2 so that a pure imaginary `z` resolves through
/// `z^2 = beta` rather than the trivial `C_1 = 0`.
pub fn classify_structured(z: &Element) -> PotencyReport {
    use PotencyClass::*;

    let p = z.prime();
    if z.is_zero() {
        return PotencyReport::new(z, Zero, Route::Zero).with_mk((2, 1));
    }
    if z.norm().is_zero() {
        if z.trace().is_zero() {
            let mut r = PotencyReport::new(z, Nilpotent, Route::Nilpotent).with_mk((3, 2));
            r.k = Some(2);
            return r;
        }
        let k = potency_via_trace(z).expect("norm zero and trace nonzero");
        return PotencyReport::new(z, KPotent, Route::TraceOrder).k_potent(k);
    }

    let a = z.real_part();
    let w = z.imaginary_part();
    if w.is_zero() {
        let s = a.order().expect("nonzero scalar");
        return PotencyReport::new(z, KPotent, Route::Scalar).unit_of_order(s);
    }

    let beta = -w.norm();
    if beta.is_zero() {
        // n(z) = a^2 here, so a != 0.
        let theta = a.order().expect("unit real part");
        let mut r = PotencyReport::new(z, KPotent, Route::NilpotentShift)
            .unit_of_order(p.get() as u64 * theta);
        r.witnesses.theta = Some(theta);
        return r;
    }

    let tau = beta.order().ok();
    let bound = default_bound(p) - 1;
    let mut pair = ScalarPair::start(a).next(a, beta);
    while pair.r < bound {
        pair = pair.next(a, beta);
        let m = pair.r;
        if pair.d.is_zero() {
            let upsilon = pair.c.order().expect("unit power is nonzero");
            let mut r = PotencyReport::new(z, KPotent, Route::SequenceD).unit_of_order(m * upsilon);
            r.witnesses = Witnesses {
                m: Some(m),
                tau,
                upsilon: Some(upsilon),
                ..Witnesses::default()
            };
            return r;
        }
        if pair.c.is_zero() {
            let square = pair.d * pair.d * beta;
            let big_m = square.order().expect("unit power is nonzero");
            let mut r =
                PotencyReport::new(z, KPotent, Route::SequenceC).unit_of_order(2 * m * big_m);
            r.witnesses = Witnesses {
                m: Some(m),
                big_m: Some(big_m),
                theta: pair.d.order().ok(),
                tau,
                upsilon: None,
            };
            return r;
        }
    }
    PotencyReport::new(z, Unclassified, Route::Unresolved)
}

/// Outcome of plain power iteration on raw coefficients.
enum IterOutcome {
    Zero,
    Nilpotent(u64),
    KPotent(u64),
    Unresolved,
}

fn iterate_powers(
    x: &[u32],
    bound: u64,
    mut mul: impl FnMut(&[u32], &[u32], &mut [u32]),
) -> IterOutcome {
    if x.iter().all(|&c| c == 0) {
        return IterOutcome::Zero;
    }
    let mut cur = x.to_vec();
    let mut next = vec![0; x.len()];
    for k in 2..=bound {
        mul(&cur, x, &mut next);
        std::mem::swap(&mut cur, &mut next);
        if cur == x {
            return IterOutcome::KPotent(k);
        }
        if cur.iter().all(|&c| c == 0) {
            return IterOutcome::Nilpotent(k);
        }
    }
    IterOutcome::Unresolved
}

/// Brute-force oracle: classifies `x` by computing `x^2, x^3, ...` until a
/// power equals `x` or vanishes.
pub fn classify_iterative(x: &Element, bound: u64) -> PotencyReport {
    let outcome = iterate_powers(x.coeffs(), bound, |a, b, out| {
        let ctx = x.ctx();
        let prod = ctx
            .element_from_raw(a.to_vec())
            .and_then(|l| l.mul(&ctx.element_from_raw(b.to_vec())?))
            .expect("same context");
        out.copy_from_slice(prod.coeffs());
    });
    let mut r = PotencyReport::new(x, PotencyClass::Unclassified, Route::Iterative);
    match outcome {
        IterOutcome::Zero => r.class = PotencyClass::Zero,
        IterOutcome::Nilpotent(k) => {
            r.class = PotencyClass::Nilpotent;
            r.k = Some(k);
        }
        IterOutcome::KPotent(k) => {
            r.class = PotencyClass::KPotent;
            r.k = Some(k);
            if !x.norm().is_zero() {
                r.s = Some(k - 1);
            }
        }
        IterOutcome::Unresolved => {}
    }
    r.mk_type = mk_type(x, bound.max(3));
    r
}

/// Smallest `(m, k)` with `m > k >= 1` and `x^m = x^k`, or `None` if no
/// repeat occurs among `x^1, ..., x^bound`.
pub fn mk_type(x: &Element, bound: u64) -> Option<(u64, u64)> {
    let mut seen: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut cur = x.clone();
    for m in 1..=bound {
        if m > 1 {
            cur = &cur * x;
        }
        if let Some(&k) = seen.get(cur.coeffs()) {
            return Some((m, k));
        }
        seen.insert(cur.coeffs().to_vec(), m);
    }
    None
}

/// Solutions of `x^n = 1` built from scalars and nilpotent shifts.
///
/// Returns every scalar `eta` with `ord(eta) | n` and, when `p | n`, every
/// `eta + w` with `p ord(eta) | n` and `w` among the first `sample_budget`
/// nilpotents in lexicographic order. Each returned element is verified.
pub fn unit_root_solutions(ctx: &AlgebraCtx, n: u64, sample_budget: usize) -> Vec<Element> {
    let p = ctx.prime();
    let units: Vec<(Residue, u64)> = p
        .residues()
        .skip(1)
        .map(|eta| (eta, eta.order().expect("nonzero")))
        .collect();

    let mut found: BTreeSet<Vec<u32>> = units
        .iter()
        .filter(|(_, ord)| n.is_multiple_of(*ord))
        .map(|(eta, _)| ctx.scalar(eta.value() as i64).coeffs().to_vec())
        .collect();

    let pl = p.get() as u64;
    if n.is_multiple_of(pl) {
        let nilpotents: Vec<Element> = ctx
            .elements()
            .take_while(|e| e.coeffs()[0] == 0)
            .filter(|e| nilpotency_index(e).is_some())
            .take(sample_budget)
            .collect();
        for (eta, ord) in &units {
            if !n.is_multiple_of(pl * ord) {
                continue;
            }
            let shift = ctx.scalar(eta.value() as i64);
            for w in &nilpotents {
                found.insert((&shift + w).coeffs().to_vec());
            }
        }
    }

    let one = ctx.one();
    found
        .into_iter()
        .map(|c| ctx.element_from_raw(c).expect("dimension matches"))
        .filter(|z| z.pow(n) == one)
        .collect()
}

/// Exact element counts of `A_t` by class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub p: u32,
    pub t: usize,
    pub total: u64,
    pub zero: u64,
    pub nilpotent: u64,
    /// Count of k-potent elements for each `k`.
    pub k_potent: BTreeMap<u64, u64>,
    pub unclassified: u64,
}

impl Census {
    pub fn idempotents(&self) -> u64 {
        self.k_potent.get(&2).copied().unwrap_or(0)
    }
}

/// Classifies every element of `A_t` by power iteration.
///
/// Elements are visited in lexicographic order and products go through the
/// precomputed [`BasisProductTable`].
pub fn enumerate_classify(ctx: &AlgebraCtx, limit: u64) -> Result<Census, PotencyError> {
    let size = ctx.cardinality();
    match size {
        Some(n) if n <= limit => {}
        _ => {
            return Err(PotencyError::TooLarge {
                size: size.map_or_else(
                    || format!("{}^{}", ctx.prime(), ctx.dim()),
                    |n| n.to_string(),
                ),
                limit,
            })
        }
    }
    let table = BasisProductTable::new(ctx);
    let bound = default_bound(ctx.prime());
    let mut census = Census {
        p: ctx.prime().get(),
        t: ctx.level(),
        total: 0,
        zero: 0,
        nilpotent: 0,
        k_potent: BTreeMap::new(),
        unclassified: 0,
    };
    for x in ctx.elements() {
        census.total += 1;
        match iterate_powers(x.coeffs(), bound, |a, b, out| table.mul_raw(a, b, out)) {
            IterOutcome::Zero => census.zero += 1,
            IterOutcome::Nilpotent(_) => census.nilpotent += 1,
            IterOutcome::KPotent(k) => *census.k_potent.entry(k).or_default() += 1,
            IterOutcome::Unresolved => census.unclassified += 1,
        }
    }
    Ok(census)
}
