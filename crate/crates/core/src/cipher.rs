//! Block cipher over `A_t(Z_p)`: each block of `2^t` symbol labels becomes an
//! element `v`, and the ciphertext block is `q v` for an invertible key `q`.
//! Decryption multiplies by `q^-1` on the left.
//!
//! This is a linear transform and offers no real security. Keys are limited
//! to `t <= 3`: up to the octonions `q^-1 (q v) = v` holds, while in the
//! sedenions an invertible `q` can still be a zero divisor.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cayley::{AlgebraCtx, AlgebraError, Element};
use crate::modp::Prime;

/// Highest level at which left multiplication by an invertible element can
/// always be undone.
pub const MAX_CIPHER_LEVEL: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CipherError {
    #[error("symbol {symbol:?} at position {position} is not in the alphabet")]
    UnknownSymbol { symbol: char, position: usize },
    #[error("label {0} has no symbol")]
    UnknownLabel(u32),
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(char),
    #[error("key has zero norm and is not invertible")]
    NotInvertible,
    #[error("level {0} is not supported for keys (maximum {MAX_CIPHER_LEVEL})")]
    UnsupportedLevel(usize),
    #[error("alphabet has {alphabet} symbols but the key works mod {p}")]
    AlphabetSize { alphabet: usize, p: u32 },
    #[error("ciphertext length {len} is not a multiple of the block length {block}")]
    BadLength { len: usize, block: usize },
    #[error("cannot parse key: {0}")]
    KeyParse(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Ordered symbols with labels `0..len`, plus input aliases.
#[derive(Debug, Clone)]
pub struct Alphabet {
    symbols: Vec<char>,
    labels: HashMap<char, u32>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self, CipherError> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        let mut labels = HashMap::with_capacity(symbols.len());
        for (i, &c) in symbols.iter().enumerate() {
            if labels.insert(c, i as u32).is_some() {
                return Err(CipherError::DuplicateSymbol(c));
            }
        }
        Ok(Alphabet { symbols, labels })
    }

    /// `A..Z` as `0..25`, then `*` (space), `.` and `,`. A literal space is
    /// read as `*`.
    pub fn latin29() -> Self {
        let mut a = Alphabet::new(('A'..='Z').chain(['*', '.', ','])).expect("distinct symbols");
        a.labels.insert(' ', 26);
        a
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn label(&self, c: char) -> Option<u32> {
        self.labels.get(&c).copied()
    }

    pub fn symbol(&self, label: u32) -> Option<char> {
        self.symbols.get(label as usize).copied()
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::latin29()
    }
}

pub fn encode(text: &str, alphabet: &Alphabet) -> Result<Vec<u32>, CipherError> {
    text.chars()
        .enumerate()
        .map(|(position, symbol)| {
            alphabet
                .label(symbol)
                .ok_or(CipherError::UnknownSymbol { symbol, position })
        })
        .collect()
}

pub fn decode(labels: &[u32], alphabet: &Alphabet) -> Result<String, CipherError> {
    labels
        .iter()
        .map(|&l| alphabet.symbol(l).ok_or(CipherError::UnknownLabel(l)))
        .collect()
}

/// Appends label 0 until the length is a multiple of `block_len`.
pub fn pad(labels: &[u32], block_len: usize) -> Vec<u32> {
    let mut out = labels.to_vec();
    let rem = out.len() % block_len;
    if rem != 0 {
        out.resize(out.len() + block_len - rem, 0);
    }
    out
}

/// An invertible element of `A_t(Z_p)`, `t <= 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherKey {
    q: Element,
}

impl CipherKey {
    pub fn new(q: Element) -> Result<Self, CipherError> {
        if q.ctx().level() > MAX_CIPHER_LEVEL {
            return Err(CipherError::UnsupportedLevel(q.ctx().level()));
        }
        if q.norm().is_zero() {
            return Err(CipherError::NotInvertible);
        }
        Ok(CipherKey { q })
    }

    pub fn element(&self) -> &Element {
        &self.q
    }

    pub fn ctx(&self) -> &AlgebraCtx {
        self.q.ctx()
    }

    pub fn block_len(&self) -> usize {
        self.ctx().dim()
    }

    pub fn inverse(&self) -> Element {
        self.q.inverse().expect("key norm is nonzero")
    }
}

/// `p,t:c0,c1,...`, e.g. `29,2:18,8,13,4`.
impl fmt::Display for CipherKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = self.ctx();
        write!(f, "{},{}:{}", ctx.prime(), ctx.level(), self.q.to_csv())
    }
}

impl FromStr for CipherKey {
    type Err = CipherError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| CipherError::KeyParse(format!("{why} in {s:?}"));
        let (head, coeffs) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let (p, t) = head.split_once(',').ok_or_else(|| bad("expected 'p,t'"))?;
        let p: u64 = p.trim().parse().map_err(|_| bad("bad prime"))?;
        let t: usize = t.trim().parse().map_err(|_| bad("bad level"))?;
        let p = Prime::new(p).map_err(AlgebraError::from)?;
        if t > MAX_CIPHER_LEVEL {
            return Err(CipherError::UnsupportedLevel(t));
        }
        let ctx = AlgebraCtx::standard(p, t)?;
        CipherKey::new(ctx.parse_element(coeffs)?)
    }
}

/// Draws a key from a ChaCha stream seeded with `seed`, rejecting samples
/// with zero norm.
pub fn keygen(ctx: &AlgebraCtx, seed: u64) -> Result<CipherKey, CipherError> {
    if ctx.level() > MAX_CIPHER_LEVEL {
        return Err(CipherError::UnsupportedLevel(ctx.level()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = ctx.prime().get();
    loop {
        let coeffs: Vec<u32> = (0..ctx.dim()).map(|_| rng.gen_range(0..p)).collect();
        let q = ctx.element_from_raw(coeffs)?;
        if !q.norm().is_zero() {
            return CipherKey::new(q);
        }
    }
}

fn check_alphabet(key: &CipherKey, alphabet: &Alphabet) -> Result<(), CipherError> {
    let p = key.ctx().prime().get();
    if alphabet.len() != p as usize {
        return Err(CipherError::AlphabetSize {
            alphabet: alphabet.len(),
            p,
        });
    }
    Ok(())
}

fn transform_blocks(labels: &[u32], m: &Element) -> Vec<u32> {
    let ctx = m.ctx();
    labels
        .chunks(ctx.dim())
        .flat_map(|block| {
            let v = ctx.element_from_raw(block.to_vec()).expect("full block");
            (m * &v).coeffs().to_vec()
        })
        .collect()
}

/// Ciphertext blocks `q v_i` as elements, for inspection.
pub fn encrypt_blocks(
    text: &str,
    key: &CipherKey,
    alphabet: &Alphabet,
) -> Result<Vec<Element>, CipherError> {
    check_alphabet(key, alphabet)?;
    let labels = pad(&encode(text, alphabet)?, key.block_len());
    let ctx = key.ctx();
    labels
        .chunks(key.block_len())
        .map(|b| Ok(key.element() * &ctx.element_from_raw(b.to_vec())?))
        .collect()
}

/// Encodes, pads with the label-0 symbol, and left-multiplies each block by
/// the key.
pub fn encrypt(text: &str, key: &CipherKey, alphabet: &Alphabet) -> Result<String, CipherError> {
    check_alphabet(key, alphabet)?;
    if key.element().norm().is_zero() {
        return Err(CipherError::NotInvertible);
    }
    let labels = pad(&encode(text, alphabet)?, key.block_len());
    decode(&transform_blocks(&labels, key.element()), alphabet)
}

/// Left-multiplies each block by `q^-1`. Padding added during encryption is
/// kept in the output.
pub fn decrypt(
    cipher_text: &str,
    key: &CipherKey,
    alphabet: &Alphabet,
) -> Result<String, CipherError> {
    check_alphabet(key, alphabet)?;
    let labels = encode(cipher_text, alphabet)?;
    if labels.len() % key.block_len() != 0 {
        return Err(CipherError::BadLength {
            len: labels.len(),
            block: key.block_len(),
        });
    }
    decode(&transform_blocks(&labels, &key.inverse()), alphabet)
}
