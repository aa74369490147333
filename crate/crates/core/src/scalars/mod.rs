//! Exact coefficients: integer Laurent polynomials in `q`, rational
//! functions, and small matrices over both.

mod laurent;
pub mod matrix;
pub(crate) mod poly;
mod ratfunc;

pub use laurent::LaurentInt;
pub use matrix::{LaurentMatrix, ModEchelon, RatMatrix};
pub use ratfunc::{Integrality, RatFunc, Regularity};

use num_bigint::BigInt;

/// The bar-invariant `s` with `p - s ∈ qℤ[q]`.
pub fn symmetrize_residual(p: &LaurentInt) -> LaurentInt {
    let mut terms: Vec<(i64, BigInt)> = Vec::new();
    for (e, c) in p.terms() {
        if e == 0 {
            terms.push((0, c.clone()));
        } else if e < 0 {
            terms.push((e, c.clone()));
            terms.push((-e, c.clone()));
        }
    }
    LaurentInt::from_terms(terms)
}

/// `q^e` for `q_i = q^{d_i}`: convenience for symmetrized exponents.
pub fn qi_pow(d: i64, e: i64) -> LaurentInt {
    LaurentInt::q_pow(d * e)
}
