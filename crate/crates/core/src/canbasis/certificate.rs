use std::collections::BTreeMap;

use crate::error::Result;
use crate::halfalg::{Algebra, DividedWord, HalfElement};
use crate::rootdata::RootDatum;
use crate::scalars::{LaurentInt, RatFunc};

/// `𝒜`-linear combination of divided words, witnessing membership in the integral form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate(BTreeMap<DividedWord, LaurentInt>);

/// Gaussian binomial `[n choose k]_t` with `t = q^d`.
pub fn q_binomial(n: u32, k: u32, d: i64) -> LaurentInt {
    let den = &LaurentInt::q_factorial(k, d) * &LaurentInt::q_factorial(n - k, d);
    LaurentInt::q_factorial(n, d).exact_div(&den).expect("Gaussian binomials are Laurent polynomials")
}

impl Certificate {
    pub fn unit() -> Self {
        Certificate(BTreeMap::from([(Vec::new(), LaurentInt::one())]))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DividedWord, &LaurentInt)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, w: DividedWord, c: LaurentInt) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(w).or_insert_with(LaurentInt::zero);
        *e += &c;
        if e.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    /// Certificate of `f_i^{(c)} · x`, merging `f_i^{(c)} f_i^{(a)} = [c+a choose c]_i f_i^{(c+a)}`.
    pub fn prefixed(&self, datum: &RootDatum, i: usize, c: u32) -> Certificate {
        let mut out = Certificate::default();
        for (w, k) in &self.0 {
            match w.first() {
                Some(&(j, a)) if j == i => {
                    let mut nw = w.clone();
                    nw[0] = (i, a + c);
                    out.add_term(nw, k * &q_binomial(a + c, c, datum.d(i)));
                }
                _ => {
                    let mut nw = Vec::with_capacity(w.len() + 1);
                    nw.push((i, c));
                    nw.extend_from_slice(w);
                    out.add_term(nw, k.clone());
                }
            }
        }
        out
    }

    /// `self −= s · other`.
    pub fn sub_scaled(&mut self, s: &LaurentInt, other: &Certificate) {
        for (w, k) in &other.0 {
            self.add_term(w.clone(), -(s * k));
        }
    }

    pub fn evaluate(&self, alg: &Algebra, weight: &crate::rootdata::Weight) -> Result<HalfElement> {
        let mut out = alg.zero(weight)?;
        for (w, k) in &self.0 {
            out.add_scaled(&RatFunc::from(k.clone()), &alg.divided_monomial(w)?);
        }
        Ok(out)
    }
}
