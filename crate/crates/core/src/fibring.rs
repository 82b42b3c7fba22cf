//! Fibonacci numbers mod `p`, Pisano periods and Fibonacci quaternions
//! `F_n = f_n + f_(n+1) i + f_(n+2) j + f_(n+3) k` over `Z_p`.
//!
//! For `p = 3` the eight Fibonacci quaternions together with `0` are closed
//! under addition and multiplication and form a noncommutative ring without
//! unity; [`build_tables`] and [`ring_verify`] construct and check it.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::cayley::{AlgebraCtx, Element};
use crate::modp::Prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibError {
    #[error("index {index} is outside the Pisano period {period}")]
    IndexOutOfPeriod { index: usize, period: usize },
    #[error("not closed: {left} {op} {right} = {result} is not a carrier element")]
    NotClosed {
        left: String,
        right: String,
        op: char,
        result: String,
    },
}

/// Period of the Fibonacci sequence mod `m` (any `m >= 2`).
pub fn pisano_period(m: u32) -> usize {
    assert!(m >= 2, "modulus must be at least 2");
    let m = m as u64;
    let (mut a, mut b) = (0u64, 1u64);
    let mut n = 0;
    loop {
        (a, b) = (b, (a + b) % m);
        n += 1;
        if a == 0 && b == 1 {
            return n;
        }
    }
}

pub fn pisano(p: Prime) -> usize {
    pisano_period(p.get())
}

/// `f_0, ..., f_(period + 3)` mod `p`.
#[derive(Debug, Clone)]
pub struct FibCache {
    p: Prime,
    values: Vec<u32>,
    period: usize,
}

impl FibCache {
    pub fn new(p: Prime) -> Self {
        let period = pisano(p);
        let mut values = vec![0, 1];
        while values.len() < period + 4 {
            let n = values.len();
            values.push(p.add(values[n - 1], values[n - 2]));
        }
        FibCache { p, values, period }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// `f_n` for any `n`, using periodicity.
    pub fn get(&self, n: usize) -> u32 {
        self.values[n % self.period]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }
}

fn quaternions(p: Prime) -> AlgebraCtx {
    AlgebraCtx::standard(p, 2).expect("level 2 is always valid")
}

fn fib_quat_in(ctx: &AlgebraCtx, fib: &FibCache, n: usize) -> Element {
    let c: Vec<u32> = (n..n + 4).map(|i| fib.get(i)).collect();
    ctx.element_from_raw(c).expect("four coefficients")
}

/// The `n`-th Fibonacci quaternion over `Z_p`, `0 <= n < pi(p)`.
pub fn fib_quat(n: usize, p: Prime) -> Result<Element, FibError> {
    let fib = FibCache::new(p);
    if n >= fib.period() {
        return Err(FibError::IndexOutOfPeriod {
            index: n,
            period: fib.period(),
        });
    }
    Ok(fib_quat_in(&quaternions(p), &fib, n))
}

/// Checks `n(F_n) = 3 f_(2n+3)` mod `p`.
pub fn norm_identity_check(n: usize, p: Prime) -> bool {
    let fib = FibCache::new(p);
    let f = fib_quat_in(&quaternions(p), &fib, n);
    f.norm().value() == p.mul(3, fib.get(2 * n + 3))
}

/// `(A, B)` when `x = A + B i + (A+B) j + (A+2B) k`.
///
/// Always `None` outside the quaternions.
pub fn product_form(x: &Element) -> Option<(u32, u32)> {
    if x.ctx().level() != 2 {
        return None;
    }
    let p = x.prime();
    let c = x.coeffs();
    let (a, b) = (c[0], c[1]);
    (c[2] == p.add(a, b) && c[3] == p.add(a, p.mul(2, b))).then_some((a, b))
}

/// Whether `F F'` and `F' F` keep the Fibonacci shape, for
/// `F = a + b i + (a+b) j + (a+2b) k` and `F' = c + d i + (c+d) j + (c+2d) k`.
///
/// Evaluates the two linear systems in `(c, d)`:
///
/// ```text
/// (-3a-3b) c + (-3a-6b) d = 0        (-3a+3b) c + (-3a) d    = 0
/// (-6b-3a) c + (-6b)    d = 0        (-3a)    c + (-6a-6b) d = 0
/// ```
///
/// The left system governs `F F'`, the right one `F' F`. The coefficients
/// are kept as published. The left system matches the explicit product, but
/// the first row of the right system does not: from `F' F` it should read
/// `(-3a-3b) c + (-3a-6b) d = 0`. With `a = b = c = d = 1` mod 5 the two flags
/// differ even though `F' F = F F'`.
pub fn closure_systems(a: u32, b: u32, c: u32, d: u32, p: Prime) -> (bool, bool) {
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
    let zero = |x: i64| p.reduce(x) == 0;
    let left = zero((-3 * a - 3 * b) * c + (-3 * a - 6 * b) * d)
        && zero((-6 * b - 3 * a) * c + (-6 * b) * d);
    let right =
        zero((-3 * a + 3 * b) * c + (-3 * a) * d) && zero((-3 * a) * c + (-6 * a - 6 * b) * d);
    (left, right)
}

/// The distinct Fibonacci quaternions over `Z_p`.
#[derive(Debug, Clone)]
pub struct FibQuatSet {
    p: Prime,
    members: Vec<Element>,
    /// `index_map[n]` is the position of `F_n` in `members`.
    index_map: Vec<usize>,
}

impl FibQuatSet {
    pub fn new(p: Prime) -> Self {
        let fib = FibCache::new(p);
        let ctx = quaternions(p);
        let mut members: Vec<Element> = Vec::new();
        let mut index_map = Vec::with_capacity(fib.period());
        for n in 0..fib.period() {
            let f = fib_quat_in(&ctx, &fib, n);
            let pos = match members.iter().position(|m| *m == f) {
                Some(pos) => pos,
                None => {
                    members.push(f);
                    members.len() - 1
                }
            };
            index_map.push(pos);
        }
        FibQuatSet {
            p,
            members,
            index_map,
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn get(&self, n: usize) -> &Element {
        &self.members[self.index_map[n % self.index_map.len()]]
    }

    pub fn index_map(&self) -> &[usize] {
        &self.index_map
    }
}

/// Addition and multiplication tables over `{F_0, ..., F_(r-1), 0}`.
///
/// Carrier index `i < r` stands for the `i`-th distinct Fibonacci quaternion;
/// the last index is zero.
#[derive(Debug, Clone, Serialize)]
pub struct RingTables {
    #[serde(serialize_with = "serialize_carrier")]
    pub carrier: Vec<Element>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

fn serialize_carrier<S: serde::Serializer>(c: &[Element], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(|e| e.to_string()))
}

impl RingTables {
    pub fn zero_index(&self) -> usize {
        self.carrier.len() - 1
    }

    pub fn label(&self, i: usize) -> String {
        if i == self.zero_index() {
            "0".to_string()
        } else {
            format!("F{i}")
        }
    }

    /// Text grid of one table with `F0 .. Fr, 0` headers.
    pub fn render(&self, which: char) -> String {
        let table = if which == '+' { &self.add } else { &self.mul };
        let n = self.carrier.len();
        let mut out = format!("{which:>3} |");
        for j in 0..n {
            let _ = write!(out, "{:>3}", self.label(j));
        }
        out.push('\n');
        out.push_str(&"-".repeat(5 + 3 * n));
        out.push('\n');
        for (i, row) in table.iter().enumerate() {
            let _ = write!(out, "{:>3} |", self.label(i));
            for &e in row {
                let _ = write!(out, "{:>3}", self.label(e));
            }
            out.push('\n');
        }
        out
    }
}

/// Builds the Cayley tables of the Fibonacci quaternions and zero.
pub fn build_tables(p: Prime) -> Result<RingTables, FibError> {
    let set = FibQuatSet::new(p);
    let mut carrier = set.members().to_vec();
    carrier.push(quaternions(p).zero());
    let lookup: HashMap<&[u32], usize> = carrier
        .iter()
        .enumerate()
        .map(|(i, e)| (e.coeffs(), i))
        .collect();
    let label = |i: usize| {
        if i == carrier.len() - 1 {
            "0".to_string()
        } else {
            format!("F{i}")
        }
    };

    let build = |op: char, f: &dyn Fn(&Element, &Element) -> Element| {
        let mut table = Vec::with_capacity(carrier.len());
        for (i, x) in carrier.iter().enumerate() {
            let mut row = Vec::with_capacity(carrier.len());
            for (j, y) in carrier.iter().enumerate() {
                let r = f(x, y);
                match lookup.get(r.coeffs()) {
                    Some(&k) => row.push(k),
                    None => {
                        return Err(FibError::NotClosed {
                            left: label(i),
                            right: label(j),
                            op,
                            result: r.to_string(),
                        })
                    }
                }
            }
            table.push(row);
        }
        Ok(table)
    };
    let add = build('+', &|x, y| x + y)?;
    let mul = build('*', &|x, y| x * y)?;
    Ok(RingTables { carrier, add, mul })
}

/// One checked axiom. `witness` names a counterexample on failure, or the
/// supporting instance for existence checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
}

impl fmt::Display for AxiomCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} {}",
            self.name,
            if self.pass { "ok" } else { "FAIL" }
        )?;
        if let Some(w) = &self.witness {
            write!(f, "  ({w})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RingReport {
    pub order: usize,
    /// Largest additive order of any element.
    pub additive_exponent: usize,
    /// Set when the additive group is elementary abelian of order `q^2`.
    pub additive_group: Option<String>,
    pub checks: Vec<AxiomCheck>,
    /// Elements `e` with `e x = x` for every `x`.
    pub left_identities: Vec<String>,
    /// Elements `e` with `x e = x` for every `x`.
    pub right_identities: Vec<String>,
}

impl RingReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &'static str, failure: Option<String>) -> AxiomCheck {
    AxiomCheck {
        name,
        pass: failure.is_none(),
        witness: failure,
    }
}

/// An abelian group of order `q^2` and exponent `q`, `q` prime, is `Z_q x Z_q`.
fn is_elementary_of_rank_two(n: usize, q: usize) -> bool {
    q > 1
        && q * q == n
        && (2..q)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// Exhaustively checks the ring axioms on the tables.
///
/// Additive closure, commutativity, associativity, neutral element and
/// inverses; multiplicative closure and associativity; both distributive
/// laws; a noncommutativity witness; and absence of a two-sided unity.
pub fn ring_verify(tables: &RingTables) -> RingReport {
    let n = tables.carrier.len();
    let z = tables.zero_index();
    let (add, mul) = (&tables.add, &tables.mul);
    let l = |i: usize| tables.label(i);
    let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));
    let triples =
        || (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))));

    let closed = |t: &Vec<Vec<usize>>| {
        pairs()
            .find(|&(i, j)| t[i][j] >= n)
            .map(|(i, j)| format!("{} {}", l(i), l(j)))
    };
    let assoc = |t: &Vec<Vec<usize>>, op: &str| {
        triples()
            .find(|&(i, j, k)| t[t[i][j]][k] != t[i][t[j][k]])
            .map(|(i, j, k)| format!("({} {op} {}) {op} {}", l(i), l(j), l(k)))
    };

    let mut checks = vec![
        check("additive closure", closed(add)),
        check(
            "additive commutativity",
            pairs()
                .find(|&(i, j)| add[i][j] != add[j][i])
                .map(|(i, j)| format!("{} + {}", l(i), l(j))),
        ),
        check("additive associativity", assoc(add, "+")),
        check(
            "additive identity",
            (0..n)
                .find(|&i| add[i][z] != i || add[z][i] != i)
                .map(|i| format!("{} + 0", l(i))),
        ),
        check(
            "additive inverses",
            (0..n)
                .find(|&i| !(0..n).any(|j| add[i][j] == z))
                .map(|i| format!("{} has no negative", l(i))),
        ),
        check("multiplicative closure", closed(mul)),
        check("multiplicative associativity", assoc(mul, "*")),
        check(
            "left distributivity",
            triples()
                .find(|&(i, j, k)| mul[i][add[j][k]] != add[mul[i][j]][mul[i][k]])
                .map(|(i, j, k)| format!("{} ({} + {})", l(i), l(j), l(k))),
        ),
        check(
            "right distributivity",
            triples()
                .find(|&(i, j, k)| mul[add[i][j]][k] != add[mul[i][k]][mul[j][k]])
                .map(|(i, j, k)| format!("({} + {}) {}", l(i), l(j), l(k))),
        ),
    ];

    let noncomm = pairs().find(|&(i, j)| mul[i][j] != mul[j][i]);
    checks.push(AxiomCheck {
        name: "noncommutative",
        pass: noncomm.is_some(),
        witness: noncomm.map(|(i, j)| {
            format!(
                "{}{} = {} but {}{} = {}",
                l(i),
                l(j),
                l(mul[i][j]),
                l(j),
                l(i),
                l(mul[j][i])
            )
        }),
    });

    let left_ids: Vec<usize> = (0..n).filter(|&e| (0..n).all(|x| mul[e][x] == x)).collect();
    let right_ids: Vec<usize> = (0..n).filter(|&e| (0..n).all(|x| mul[x][e] == x)).collect();
    let unity = left_ids.iter().find(|e| right_ids.contains(e));
    // For every left identity, name an element it fails to fix from the right.
    let why_not = left_ids
        .iter()
        .filter_map(|&e| {
            (0..n)
                .find(|&x| mul[x][e] != x)
                .map(|x| format!("{}{} = {} != {}", l(x), l(e), l(mul[x][e]), l(x)))
        })
        .collect::<Vec<_>>();
    checks.push(AxiomCheck {
        name: "no two-sided unity",
        pass: unity.is_none(),
        witness: match unity {
            Some(&e) => Some(format!("{} is a unity", l(e))),
            None if why_not.is_empty() => None,
            None => Some(why_not.join("; ")),
        },
    });

    let additive_order = |i: usize| {
        let mut acc = i;
        let mut k = 1;
        while acc != z {
            acc = add[acc][i];
            k += 1;
            if k > n {
                return usize::MAX;
            }
        }
        k
    };
    let additive_exponent = (0..n).map(additive_order).max().unwrap_or(1);
    let group_ok = checks.iter().take(5).all(|c| c.pass);
    let additive_group = (group_ok && is_elementary_of_rank_two(n, additive_exponent))
        .then(|| format!("Z{0} x Z{0}", additive_exponent));

    RingReport {
        order: n,
        additive_exponent,
        additive_group,
        checks,
        left_identities: left_ids.into_iter().map(l).collect(),
        right_identities: right_ids.into_iter().map(l).collect(),
    }
}
