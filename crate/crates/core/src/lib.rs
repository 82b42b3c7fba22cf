//! Algebras obtained by the Cayley-Dickson doubling process over the prime
//! field `Z_p` (`p` odd).
//!
//! The crate is organised bottom-up:
//!
//! - [`modp`]: prime-field scalars, inverses, multiplicative orders and
//!   sums of two squares.
//! - [`cayley`]: the `2^t`-dimensional algebra `A_t`, its product,
//!   conjugation, trace, norm, powers and inverses.
//! - [`potency`]: classification of nilpotent, k-potent and (m,k)-type
//!   elements, both by closed forms and by brute-force iteration.
//! - [`fibring`]: Fibonacci numbers mod `p`, Pisano periods, Fibonacci
//!   quaternions and the nine-element ring they form over `Z_3`.
//! - [`cipher`]: a block cipher that left-multiplies plaintext blocks by an
//!   invertible key element.
//! - [`cli`]: the command-line front end.

pub mod cayley;
pub mod cipher;
pub mod cli;
pub mod fibring;
pub mod modp;
pub mod potency;

pub use cayley::{AlgebraCtx, AlgebraError, BasisProductTable, Element};
pub use modp::{ModpError, Prime, Residue};
