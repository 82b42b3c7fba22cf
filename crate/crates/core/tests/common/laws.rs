//! Algebraic laws checked on random elements. Each check returns the number
//! of cases examined, or a counterexample description.

use super::{ctx, random_element, rng};
use cayley_zp::{BasisProductTable, Element};
use rand::Rng;

pub const PRIMES: [u64; 5] = [3, 5, 7, 11, 13];
pub const CASES: usize = 1000;

type Outcome = Result<usize, String>;

fn fail(law: &str, xs: &[&Element]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("[{}]", x.to_csv())).collect();
    format!(
        "{law} fails at p={} t={}: {}",
        xs[0].prime().get(),
        xs[0].ctx().level(),
        parts.join(" ")
    )
}

/// `x^2 - t(x) x + n(x) = 0` for `CASES` elements per `(p, t)`.
pub fn quadratic_identity(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut n = 0;
    for p in PRIMES {
        for t in 1..=4 {
            let c = ctx(p, t);
            for _ in 0..CASES {
                let x = random_element(&c, &mut r);
                let lhs = &(&(&x * &x) - &x.scale(x.trace().value()))
                    + &c.scalar(x.norm().value() as i64);
                if !lhs.is_zero() {
                    return Err(fail("quadratic identity", &[&x]));
                }
                n += 1;
            }
        }
    }
    Ok(n)
}

/// Runs `check` on `CASES` random pairs for every `t <= max_t`, with `p`
/// drawn from [`PRIMES`].
fn pairs(
    seed: u64,
    max_t: usize,
    mut check: impl FnMut(&Element, &Element, &mut dyn rand::RngCore) -> bool,
    law: &str,
) -> Outcome {
    let mut r = rng(seed);
    let mut n = 0;
    for t in 1..=max_t {
        for _ in 0..CASES {
            let p = PRIMES[r.gen_range(0..PRIMES.len())];
            let c = ctx(p, t);
            let x = random_element(&c, &mut r);
            let y = random_element(&c, &mut r);
            if !check(&x, &y, &mut r) {
                return Err(fail(law, &[&x, &y]));
            }
            n += 1;
        }
    }
    Ok(n)
}

pub fn norm_power(seed: u64) -> Outcome {
    pairs(
        seed,
        4,
        |x, _, r| {
            let m = r.gen_range(0..=12u64);
            x.pow(m).norm() == x.norm().pow(m)
        },
        "norm-power identity",
    )
}

pub fn conj_anti_homomorphism(seed: u64) -> Outcome {
    pairs(
        seed,
        4,
        |x, y, _| {
            (x * y).conj() == &y.conj() * &x.conj()
                && x.trace().value() == (x + &x.conj()).coeffs()[0]
                && (x * &x.conj()).is_scalar()
                && (x * &x.conj()).coeffs()[0] == x.norm().value()
        },
        "conjugation anti-homomorphism",
    )
}

pub fn flexible(seed: u64) -> Outcome {
    pairs(
        seed,
        4,
        |x, y, _| x * &(y * x) == &(x * y) * x,
        "flexible law",
    )
}

pub fn left_alternative(seed: u64, max_t: usize) -> Outcome {
    pairs(
        seed,
        max_t,
        |x, y, _| &(x * x) * y == x * &(x * y),
        "left alternative law",
    )
}

pub fn power_associative(seed: u64) -> Outcome {
    pairs(
        seed,
        4,
        |x, _, r| {
            let a = r.gen_range(0..=8u64);
            let b = r.gen_range(0..=8u64);
            &x.pow(a) * &x.pow(b) == x.pow(a + b)
        },
        "power associativity",
    )
}

/// `f_i (f_i x) = delta_i x = (x f_i) f_i` for every basis unit, where
/// `delta_i = f_i^2` is a scalar and equals `-1` for `i >= 1`.
pub fn basis_square_action(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut n = 0;
    for t in 1..=4 {
        let per_unit = CASES.div_ceil(1 << t);
        for _ in 0..per_unit {
            let p = PRIMES[r.gen_range(0..PRIMES.len())];
            let c = ctx(p, t);
            let x = random_element(&c, &mut r);
            for i in 0..c.dim() {
                let f = c.basis(i);
                let sq = &f * &f;
                let expected = if i == 0 { c.one() } else { c.scalar(-1) };
                if sq != expected {
                    return Err(fail("basis square", &[&f]));
                }
                let delta = sq.coeffs()[0];
                if &f * &(&f * &x) != x.scale(delta) || &(&x * &f) * &f != x.scale(delta) {
                    return Err(fail("basis square action", &[&x, &f]));
                }
                n += 1;
            }
        }
    }
    Ok(n)
}

pub fn table_matches_recursive(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut n = 0;
    for t in 1..=4 {
        let p = PRIMES[t % PRIMES.len()];
        let c = ctx(p, t);
        let table = BasisProductTable::new(&c);
        for _ in 0..CASES {
            let x = random_element(&c, &mut r);
            let y = random_element(&c, &mut r);
            if table.mul(&x, &y).unwrap() != &x * &y {
                return Err(fail("table product", &[&x, &y]));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// First pair in `A_4(Z_p)` with `x^2 y != x (x y)`.
pub fn sedenion_alternativity_counterexample(
    p: u64,
    seed: u64,
    tries: usize,
) -> Option<(Element, Element)> {
    let c = ctx(p, 4);
    let mut r = rng(seed);
    (0..tries).find_map(|_| {
        let x = random_element(&c, &mut r);
        let y = random_element(&c, &mut r);
        (&(&x * &x) * &y != &x * &(&x * &y)).then_some((x, y))
    })
}

/// First invertible `q` and `v` in `A_4(Z_p)` with `q^-1 (q v) != v`.
pub fn sedenion_decryption_failure(p: u64, seed: u64, tries: usize) -> Option<(Element, Element)> {
    let c = ctx(p, 4);
    let mut r = rng(seed);
    (0..tries).find_map(|_| {
        let q = random_element(&c, &mut r);
        let v = random_element(&c, &mut r);
        let d = q.inverse().ok()?;
        (&d * &(&q * &v) != v).then_some((q, v))
    })
}
