//! Exact computations in the negative half `U_q⁻` of a quantized enveloping
//! algebra of a symmetrizable Kac–Moody algebra.
//!
//! The algebra is modelled at each weight by words in the generators modulo
//! the radical of the Kashiwara form. On top of that sit the canonical and
//! dual canonical bases, the crystal `B(∞)`, braid symmetries, PBW bases and
//! the verification procedures for the factorization theorems.

pub mod canbasis;
pub mod error;
pub mod halfalg;
pub mod memo;
pub mod pbw;
pub mod rootdata;
pub mod scalars;
pub mod verify;

pub use error::{Error, Result};
pub use scalars::{LaurentInt, RatFunc};
