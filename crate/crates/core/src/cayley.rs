//! The algebra `A_t` obtained from `Z_p` by `t` Cayley-Dickson doublings.
//!
//! An element is a coefficient vector of length `2^t` in the basis
//! `{1, f_1, ..., f_{2^t - 1}}`. The vector is split recursively: the first
//! half holds `a_1`, the second half `a_2`, for the pair `(a_1, a_2)`. At
//! level 2 this gives the labels `(1, i, j, k)` with `k = ij`.
//!
//! Doubling with parameter `delta` multiplies pairs as
//!
//! ```text
//! (a1, a2)(b1, b2) = (a1 b1 + delta conj(b2) a2,  a2 conj(b1) + b2 a1)
//! ```
//!
//! and conjugates as `conj(a1, a2) = (conj(a1), -a2)`. The parameter of the
//! outermost doubling is the last entry of [`AlgebraCtx::deltas`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::modp::{ModpError, Prime, Residue};

/// Largest supported level; `2^12 = 4096` coefficients.
pub const MAX_LEVEL: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements belong to different algebras")]
    ContextMismatch,
    #[error("element has zero norm and is not invertible")]
    NotInvertible,
    #[error("doubling parameter delta_{index} is zero mod p")]
    ZeroDelta { index: usize },
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("level {0} exceeds the supported maximum of {MAX_LEVEL}")]
    LevelTooLarge(usize),
    #[error("cannot parse element: {0}")]
    Parse(String),
    #[error(transparent)]
    Modp(#[from] ModpError),
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct CtxInner {
    p: Prime,
    deltas: Vec<u32>,
}

/// The ambient algebra: prime `p`, level `t` and doubling parameters
/// `delta_1, ..., delta_t`. Cheap to clone.
#[derive(Debug, Clone)]
pub struct AlgebraCtx(Arc<CtxInner>);

impl AlgebraCtx {
    pub fn new(p: Prime, deltas: &[i64]) -> Result<Self, AlgebraError> {
        if deltas.len() > MAX_LEVEL {
            return Err(AlgebraError::LevelTooLarge(deltas.len()));
        }
        let deltas = deltas
            .iter()
            .enumerate()
            .map(|(i, &d)| match p.reduce(d) {
                0 => Err(AlgebraError::ZeroDelta { index: i + 1 }),
                r => Ok(r),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AlgebraCtx(Arc::new(CtxInner { p, deltas })))
    }

    /// `A_t` with every `delta_i = -1` (real quaternions, octonions, ... pattern).
    pub fn standard(p: Prime, t: usize) -> Result<Self, AlgebraError> {
        Self::new(p, &vec![-1; t])
    }

    pub fn prime(&self) -> Prime {
        self.0.p
    }

    pub fn level(&self) -> usize {
        self.0.deltas.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.level()
    }

    pub fn deltas(&self) -> &[u32] {
        &self.0.deltas
    }

    pub fn zero(&self) -> Element {
        Element {
            ctx: self.clone(),
            coeffs: vec![0; self.dim()],
        }
    }

    pub fn one(&self) -> Element {
        self.scalar(1)
    }

    pub fn scalar(&self, v: i64) -> Element {
        let mut e = self.zero();
        e.coeffs[0] = self.prime().reduce(v);
        e
    }

    /// The basis unit `f_index` (`index = 0` is the identity).
    pub fn basis(&self, index: usize) -> Element {
        assert!(index < self.dim(), "basis index {index} out of range");
        let mut e = self.zero();
        e.coeffs[index] = 1;
        e
    }

    pub fn element(&self, coeffs: &[i64]) -> Result<Element, AlgebraError> {
        if coeffs.len() != self.dim() {
            return Err(AlgebraError::WrongLength {
                expected: self.dim(),
                got: coeffs.len(),
            });
        }
        let p = self.prime();
        Ok(Element {
            ctx: self.clone(),
            coeffs: coeffs.iter().map(|&c| p.reduce(c)).collect(),
        })
    }

    /// Builds an element from already-reduced coefficients.
    pub fn element_from_raw(&self, coeffs: Vec<u32>) -> Result<Element, AlgebraError> {
        if coeffs.len() != self.dim() {
            return Err(AlgebraError::WrongLength {
                expected: self.dim(),
                got: coeffs.len(),
            });
        }
        let p = self.prime().get();
        Ok(Element {
            ctx: self.clone(),
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        })
    }

    /// Parses the canonical comma-separated form, e.g. `"18,8,13,4"`.
    pub fn parse_element(&self, s: &str) -> Result<Element, AlgebraError> {
        let coeffs = s
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| AlgebraError::Parse(format!("bad coefficient {c:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.element(&coeffs)
    }

    /// Iterates over every element in lexicographic coefficient order.
    ///
    /// The caller is responsible for keeping `p^(2^t)` reasonable.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let p = self.prime().get();
        let n = self.dim();
        let mut next = Some(vec![0u32; n]);
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            for i in (0..n).rev() {
                succ[i] += 1;
                if succ[i] < p {
                    next = Some(succ);
                    break;
                }
                succ[i] = 0;
            }
            Some(Element {
                ctx: self.clone(),
                coeffs: cur,
            })
        })
    }

    /// Number of elements, or `None` if it overflows `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        (self.prime().get() as u64).checked_pow(self.dim() as u32)
    }
}

impl PartialEq for AlgebraCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for AlgebraCtx {}

fn conj_raw(p: Prime, a: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = a.iter().map(|&c| p.neg(c)).collect();
    out[0] = a[0];
    out
}

/// Recursive Cayley-Dickson product.
fn mul_raw(p: Prime, deltas: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let Some((&delta, inner)) = deltas.split_last() else {
        return vec![p.mul(a[0], b[0])];
    };
    let h = a.len() / 2;
    let (a1, a2) = a.split_at(h);
    let (b1, b2) = b.split_at(h);

    let mut out = Vec::with_capacity(a.len());
    let left = mul_raw(p, inner, a1, b1);
    let cross = mul_raw(p, inner, &conj_raw(p, b2), a2);
    out.extend(
        left.iter()
            .zip(&cross)
            .map(|(&x, &y)| p.add(x, p.mul(delta, y))),
    );
    let right = mul_raw(p, inner, a2, &conj_raw(p, b1));
    let tail = mul_raw(p, inner, b2, a1);
    out.extend(right.iter().zip(&tail).map(|(&x, &y)| p.add(x, y)));
    out
}

fn norm_raw(p: Prime, deltas: &[u32], a: &[u32]) -> u32 {
    let Some((&delta, inner)) = deltas.split_last() else {
        return p.mul(a[0], a[0]);
    };
    let (a1, a2) = a.split_at(a.len() / 2);
    p.sub(norm_raw(p, inner, a1), p.mul(delta, norm_raw(p, inner, a2)))
}

/// An element of `A_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    ctx: AlgebraCtx,
    coeffs: Vec<u32>,
}

impl Element {
    pub fn ctx(&self) -> &AlgebraCtx {
        &self.ctx
    }

    pub fn prime(&self) -> Prime {
        self.ctx.prime()
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Residue {
        self.prime().residue(self.coeffs[i] as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// True when every coefficient except the first vanishes.
    pub fn is_scalar(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The coefficient of `1`.
    pub fn real_part(&self) -> Residue {
        self.coeff(0)
    }

    /// `x - real_part(x)`, which has trace zero.
    pub fn imaginary_part(&self) -> Element {
        let mut w = self.clone();
        w.coeffs[0] = 0;
        w
    }

    fn same_ctx(&self, other: &Element) -> Result<(), AlgebraError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch)
        }
    }

    pub fn mul(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.same_ctx(other)?;
        Ok(Element {
            ctx: self.ctx.clone(),
            coeffs: mul_raw(self.prime(), self.ctx.deltas(), &self.coeffs, &other.coeffs),
        })
    }

    pub fn add(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.same_ctx(other)?;
        let p = self.prime();
        Ok(self.map2(other, |a, b| p.add(a, b)))
    }

    pub fn sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.same_ctx(other)?;
        let p = self.prime();
        Ok(self.map2(other, |a, b| p.sub(a, b)))
    }

    fn map2(&self, other: &Element, f: impl Fn(u32, u32) -> u32) -> Element {
        Element {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: u32) -> Element {
        let p = self.prime();
        Element {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|&c| p.mul(c, s)).collect(),
        }
    }

    pub fn conj(&self) -> Element {
        Element {
            ctx: self.ctx.clone(),
            coeffs: conj_raw(self.prime(), &self.coeffs),
        }
    }

    /// `x + conj(x)`, i.e. twice the real part.
    pub fn trace(&self) -> Residue {
        let p = self.prime();
        p.residue(p.add(self.coeffs[0], self.coeffs[0]) as i64)
    }

    /// `x conj(x)`, computed by the recursion `n(a1) - delta n(a2)`.
    pub fn norm(&self) -> Residue {
        let p = self.prime();
        p.residue(norm_raw(p, self.ctx.deltas(), &self.coeffs) as i64)
    }

    /// `x^m` by binary exponentiation. Cayley-Dickson algebras are power
    /// associative, so the grouping of factors does not matter.
    pub fn pow(&self, mut m: u64) -> Element {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = &acc * &base;
            }
            m >>= 1;
            if m > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `conj(x) / n(x)`.
    pub fn inverse(&self) -> Result<Element, AlgebraError> {
        let n = self.norm();
        let inv = n.inverse().map_err(|_| AlgebraError::NotInvertible)?;
        Ok(self.conj().scale(inv.value()))
    }

    /// Canonical comma-separated form, e.g. `"18,8,13,4"`.
    pub fn to_csv(&self) -> String {
        self.coeffs
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

const QUATERNION_UNITS: [&str; 4] = ["", "i", "j", "k"];

/// Symbolic form: `18+8i+13j+4k` for quaternions, `3+2f1+f2+...` otherwise.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let quaternion = self.ctx.level() == 2;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if c != 1 {
                write!(f, "{c}")?;
            }
            if quaternion {
                f.write_str(QUATERNION_UNITS[i])?;
            } else {
                write!(f, "f{i}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

macro_rules! panicking_op {
    ($tr:ident, $method:ident) => {
        /// Panics if the operands live in different algebras; use the
        /// inherent method for a fallible version.
        impl $tr<&Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                Element::$method(self, rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

panicking_op!(Add, add);
panicking_op!(Sub, sub);
panicking_op!(Mul, mul);

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let p = self.prime();
        Element {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|&c| p.neg(c)).collect(),
        }
    }
}

/// One entry of the basis product table: `f_i f_j = scalar * f_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasisProduct {
    pub scalar: u32,
    pub index: usize,
}

/// Structure constants of `A_t`: every product of two basis units is a
/// nonzero multiple of a single basis unit.
#[derive(Debug, Clone)]
pub struct BasisProductTable {
    ctx: AlgebraCtx,
    entries: Vec<BasisProduct>,
}

impl BasisProductTable {
    /// Computes the table by multiplying every pair of basis units with the
    /// recursive product.
    pub fn new(ctx: &AlgebraCtx) -> Self {
        let n = ctx.dim();
        let units: Vec<Element> = (0..n).map(|i| ctx.basis(i)).collect();
        let mut entries = Vec::with_capacity(n * n);
        for fi in &units {
            for fj in &units {
                let prod = fi * fj;
                let mut nonzero = prod.coeffs.iter().enumerate().filter(|(_, &c)| c != 0);
                let (index, &scalar) = nonzero
                    .next()
                    .expect("product of basis units is never zero");
                debug_assert!(nonzero.next().is_none());
                entries.push(BasisProduct { scalar, index });
            }
        }
        BasisProductTable {
            ctx: ctx.clone(),
            entries,
        }
    }

    pub fn ctx(&self) -> &AlgebraCtx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    pub fn entry(&self, i: usize, j: usize) -> BasisProduct {
        self.entries[i * self.dim() + j]
    }

    /// Table-driven product on raw coefficient slices, `O(4^t)`.
    pub fn mul_raw(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        let p = self.ctx.prime();
        let n = self.dim();
        out.iter_mut().for_each(|c| *c = 0);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let row = &self.entries[i * n..(i + 1) * n];
            for (e, &y) in row.iter().zip(b) {
                if y != 0 {
                    let term = p.mul(p.mul(x, y), e.scalar);
                    out[e.index] = p.add(out[e.index], term);
                }
            }
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        if x.ctx != self.ctx || y.ctx != self.ctx {
            return Err(AlgebraError::ContextMismatch);
        }
        let mut out = vec![0; self.dim()];
        self.mul_raw(&x.coeffs, &y.coeffs, &mut out);
        Ok(Element {
            ctx: self.ctx.clone(),
            coeffs: out,
        })
    }

    /// Rows of `(scalar, index)` pairs, for rendering.
    pub fn rows(&self) -> impl Iterator<Item = &[BasisProduct]> {
        self.entries.chunks(self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, t: usize) -> AlgebraCtx {
        AlgebraCtx::standard(Prime::new(p).unwrap(), t).unwrap()
    }

    #[test]
    fn generator_squares_to_minus_one() {
        for t in 1..=4 {
            let a = ctx(7, t);
            let f1 = a.basis(1);
            assert_eq!(&f1 * &f1, a.scalar(-1));
        }
    }

    #[test]
    fn hamilton_labels() {
        let h = ctx(11, 2);
        let (i, j, k) = (h.basis(1), h.basis(2), h.basis(3));
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&j * &i, -&k);
    }

    #[test]
    fn key_times_first_block() {
        let h = ctx(29, 2);
        let q = h.element(&[18, 8, 13, 4]).unwrap();
        let v = h.element(&[12, 0, 19, 7]).unwrap();
        assert_eq!(q.mul(&v).unwrap().coeffs(), &[28, 24, 7, 7]);
    }

    #[test]
    fn mismatched_contexts() {
        let a = ctx(5, 2).one();
        let b = ctx(7, 2).one();
        let c = ctx(5, 3).one();
        assert_eq!(a.mul(&b), Err(AlgebraError::ContextMismatch));
        assert_eq!(a.add(&c), Err(AlgebraError::ContextMismatch));
        // Separately constructed but identical contexts are interchangeable.
        assert!(a.mul(&ctx(5, 2).one()).is_ok());
    }

    #[test]
    fn conj_trace_norm() {
        let h = ctx(29, 2);
        let q = h.element(&[18, 8, 13, 4]).unwrap();
        assert_eq!(q.conj().coeffs(), &[18, 21, 16, 25]);
        assert_eq!(q.conj().conj(), q);
        assert_eq!(h.one().conj(), h.one());
        assert_eq!(q.trace().value(), 7);
        assert_eq!(q.norm().value(), 22);

        let h7 = ctx(7, 2);
        assert_eq!(h7.element(&[2, 1, 1, 1]).unwrap().trace().value(), 4);
        assert_eq!(h7.basis(1).trace().value(), 0);

        let h11 = ctx(11, 2);
        assert_eq!(h11.element(&[0, 2, 7, 3]).unwrap().norm().value(), 7);

        let o13 = ctx(13, 3);
        let z = o13.element(&[3, 2, 1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(z.norm().value(), 6);
        assert_eq!(o13.zero().norm().value(), 0);
    }

    #[test]
    fn general_deltas_norm_and_generators() {
        let p = Prime::new(13).unwrap();
        let a = AlgebraCtx::new(p, &[2, 5, 3]).unwrap();
        for (l, &d) in [2u32, 5, 3].iter().enumerate() {
            let f = a.basis(1 << l);
            assert_eq!(&f * &f, a.scalar(d as i64));
        }
        // x conj(x) agrees with the recursive norm
        let x = a.element(&[1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert_eq!(&x * &x.conj(), a.scalar(x.norm().value() as i64));
        assert_eq!(
            AlgebraCtx::new(p, &[1, 13]).unwrap_err(),
            AlgebraError::ZeroDelta { index: 2 }
        );
    }

    #[test]
    fn powers() {
        let h3 = ctx(3, 2);
        let z = h3.element(&[1, 1, 1, 1]).unwrap();
        assert_eq!(z.pow(3), h3.one());
        assert_eq!(z.pow(0), h3.one());

        let s = ctx(17, 4);
        let z = s.element(&[1; 16]).unwrap();
        let mut expected = vec![12i64; 16];
        expected[0] = 0;
        assert_eq!(z.pow(4), s.element(&expected).unwrap());
    }

    #[test]
    fn inverses() {
        let h = ctx(29, 2);
        let q = h.element(&[18, 8, 13, 4]).unwrap();
        let d = q.inverse().unwrap();
        assert_eq!(d.coeffs(), &[14, 26, 6, 13]);
        assert_eq!(&d * &q, h.one());
        assert_eq!(&q * &d, h.one());
        assert_eq!(h.one().inverse().unwrap(), h.one());

        let h5 = ctx(5, 2);
        let w = h5.element(&[0, 3, 4, 0]).unwrap();
        assert_eq!(w.inverse(), Err(AlgebraError::NotInvertible));
    }

    #[test]
    fn basis_table_entries() {
        let h = ctx(7, 2);
        let table = BasisProductTable::new(&h);
        assert_eq!(
            table.entry(1, 2),
            BasisProduct {
                scalar: 1,
                index: 3
            }
        );
        assert_eq!(
            table.entry(2, 1),
            BasisProduct {
                scalar: 6,
                index: 3
            }
        );
        for i in 1..4 {
            assert_eq!(
                table.entry(i, i),
                BasisProduct {
                    scalar: 6,
                    index: 0
                }
            );
        }
        for j in 0..4 {
            assert_eq!(
                table.entry(0, j),
                BasisProduct {
                    scalar: 1,
                    index: j
                }
            );
        }
    }

    #[test]
    fn basis_table_anticommutes_off_diagonal() {
        for t in 1..=4 {
            let a = ctx(11, t);
            let table = BasisProductTable::new(&a);
            for i in 1..a.dim() {
                for j in 1..a.dim() {
                    if i == j {
                        continue;
                    }
                    let (e, f) = (table.entry(i, j), table.entry(j, i));
                    assert_ne!(e.index, 0);
                    assert_eq!(e.index, f.index);
                    assert_eq!(e.scalar, 11 - f.scalar);
                    assert_eq!(e.index, i ^ j);
                }
            }
        }
    }

    #[test]
    fn display_forms() {
        let h = ctx(29, 2);
        assert_eq!(
            h.element(&[18, 8, 13, 4]).unwrap().to_string(),
            "18+8i+13j+4k"
        );
        assert_eq!(h.element(&[12, 0, 19, 7]).unwrap().to_string(), "12+19j+7k");
        assert_eq!(h.element(&[2, 1, 1, 1]).unwrap().to_string(), "2+i+j+k");
        assert_eq!(h.zero().to_string(), "0");
        let o = ctx(13, 3);
        assert_eq!(
            o.element(&[3, 2, 1, 0, 0, 0, 0, 1]).unwrap().to_string(),
            "3+2f1+f2+f7"
        );
        assert_eq!(h.element(&[18, 8, 13, 4]).unwrap().to_csv(), "18,8,13,4");
    }

    #[test]
    fn parse_canonical_form() {
        let h = ctx(29, 2);
        let q = h.parse_element("18, 8,13,4").unwrap();
        assert_eq!(q.coeffs(), &[18, 8, 13, 4]);
        assert_eq!(h.parse_element("-1,0,0,0").unwrap(), h.scalar(28));
        assert!(matches!(
            h.parse_element("1,2,3"),
            Err(AlgebraError::WrongLength {
                expected: 4,
                got: 3
            })
        ));
        assert!(matches!(
            h.parse_element("1,x,3,4"),
            Err(AlgebraError::Parse(_))
        ));
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let a = ctx(3, 1);
        let all: Vec<_> = a.elements().map(|e| e.to_csv()).collect();
        assert_eq!(
            all,
            ["0,0", "0,1", "0,2", "1,0", "1,1", "1,2", "2,0", "2,1", "2,2"]
        );
        assert_eq!(ctx(3, 2).elements().count(), 81);
        assert_eq!(ctx(3, 2).cardinality(), Some(81));
    }
}
