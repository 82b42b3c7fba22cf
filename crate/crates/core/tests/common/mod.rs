#![allow(dead_code)]

use cayley_zp::{AlgebraCtx, Element, Prime};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

pub fn ctx(p: u64, t: usize) -> AlgebraCtx {
    AlgebraCtx::standard(prime(p), t).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_element(ctx: &AlgebraCtx, rng: &mut impl Rng) -> Element {
    let p = ctx.prime().get();
    let c = (0..ctx.dim()).map(|_| rng.gen_range(0..p)).collect();
    ctx.element_from_raw(c).unwrap()
}

/// Random element with zero real part.
pub fn random_imaginary(ctx: &AlgebraCtx, rng: &mut impl Rng) -> Element {
    random_element(ctx, rng).imaginary_part()
}

/// Hamilton product written out by hand, independent of the recursive
/// doubling code.
pub fn hamilton(a: [i64; 4], b: [i64; 4], p: i64) -> [i64; 4] {
    let [a0, a1, a2, a3] = a;
    let [b0, b1, b2, b3] = b;
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
    .map(|x| x.rem_euclid(p))
}

pub fn as_quad(e: &Element) -> [i64; 4] {
    let c = e.coeffs();
    [c[0] as i64, c[1] as i64, c[2] as i64, c[3] as i64]
}

/// Every quaternion over Z_p as a coefficient array.
pub fn all_quaternions(p: i64) -> impl Iterator<Item = [i64; 4]> {
    (0..p.pow(4)).map(move |mut n| {
        let mut c = [0; 4];
        for slot in c.iter_mut().rev() {
            *slot = n % p;
            n /= p;
        }
        c
    })
}

pub mod laws;
pub mod quoted;
