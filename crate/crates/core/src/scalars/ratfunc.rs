use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::LaurentInt;
use super::poly;
use crate::error::{Error, Result};

/// Element of `ℚ(q)` in canonical form.
///
/// The denominator has lowest exponent 0 and positive leading coefficient,
/// numerator and denominator are coprime in `ℚ[q]`, and the integer content
/// of the pair is 1. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentInt,
    den: LaurentInt,
}

/// Membership of a rational function in the integral coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Integrality {
    /// In `ℤ[q^{±1}]`.
    Integral,
    /// In `ℚ[q^{±1}]` but with a non-integer coefficient.
    RationalOnly,
    /// Not a Laurent polynomial.
    NotLaurent,
}

/// Outcome of [`RatFunc::zero_regularity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularity {
    pub regular: bool,
    pub residue: Option<BigRational>,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: LaurentInt::zero(), den: LaurentInt::one() }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentInt::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(LaurentInt::from_int(c))
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from_laurent(LaurentInt::q_pow(e))
    }

    pub fn from_laurent(num: LaurentInt) -> Self {
        RatFunc { num, den: LaurentInt::one() }
    }

    pub fn new(num: LaurentInt, den: LaurentInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn num(&self) -> &LaurentInt {
        &self.num
    }

    pub fn den(&self) -> &LaurentInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn normalized(num: LaurentInt, den: LaurentInt) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let s = den.low_exp().unwrap();
        let n_low = num.low_exp().unwrap() - s;
        let mut n: Vec<BigInt> = num.dense().to_vec();
        let mut d: Vec<BigInt> = den.dense().to_vec();
        if n.len() > 1 && d.len() > 1 {
            let g = poly::gcd(&n, &d);
            if g.len() > 1 {
                n = poly::div_exact(&n, &g).expect("gcd divides numerator");
                d = poly::div_exact(&d, &g).expect("gcd divides denominator");
            }
        }
        let c = poly::content(&n).gcd(&poly::content(&d));
        let neg = poly::leading_is_negative(&d);
        if !c.is_one() || neg {
            let c = if neg { -c } else { c };
            for x in n.iter_mut() {
                *x = &*x / &c;
            }
            for x in d.iter_mut() {
                *x = &*x / &c;
            }
        }
        RatFunc { num: LaurentInt::from_dense(n_low, n), den: LaurentInt::from_dense(0, d) }
    }

    /// `Some` when the value lies in `ℤ[q^{±1}]`.
    pub fn as_laurent(&self) -> Option<&LaurentInt> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn integrality(&self) -> Integrality {
        if self.den.is_one() {
            Integrality::Integral
        } else if self.den.high_exp() == Some(0) {
            Integrality::RationalOnly
        } else {
            Integrality::NotLaurent
        }
    }

    pub fn bar(&self) -> Self {
        Self::normalized(self.num.bar(), self.den.bar())
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        Ok(Self::normalized(base.num.pow(n.unsigned_abs() as u32), base.den.pow(n.unsigned_abs() as u32)))
    }

    pub fn scale_laurent(&self, c: &LaurentInt) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() {
            return Self::from_laurent(&self.num * c);
        }
        Self::normalized(&self.num * c, self.den.clone())
    }

    /// Multiplication by `q^k`; no renormalization needed.
    pub fn shift(&self, k: i64) -> Self {
        RatFunc { num: self.num.shift(k), den: self.den.clone() }
    }

    /// Order of vanishing at `q = 0` (`None` for zero).
    pub fn valuation(&self) -> Option<i64> {
        self.num.low_exp()
    }

    /// Regularity at `q = 0` and the value there.
    pub fn zero_regularity(&self) -> Regularity {
        match self.valuation() {
            None => Regularity { regular: true, residue: Some(BigRational::zero()) },
            Some(v) if v < 0 => Regularity { regular: false, residue: None },
            Some(v) if v > 0 => Regularity { regular: true, residue: Some(BigRational::zero()) },
            Some(_) => Regularity {
                regular: true,
                residue: Some(BigRational::new(self.num.coeff(0), self.den.coeff(0))),
            },
        }
    }

    /// Laurent expansion at `q = 0` with all exponents `≤ max_exp`.
    pub fn series_upto(&self, max_exp: i64) -> Vec<(i64, BigRational)> {
        let Some(v) = self.valuation() else {
            return Vec::new();
        };
        let d0 = self.den.coeff(0);
        let dhi = self.den.high_exp().unwrap();
        let mut out: Vec<BigRational> = Vec::new();
        for k in v..=max_exp {
            let mut acc = BigRational::from_integer(self.num.coeff(k));
            for j in 1..=dhi.min(k - v) {
                let dj = self.den.coeff(j);
                if !dj.is_zero() {
                    acc -= &out[(k - v - j) as usize] * BigRational::from_integer(dj);
                }
            }
            out.push(acc / BigRational::from_integer(d0.clone()));
        }
        out.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (v + k as i64, c))
            .collect()
    }

    /// Expansion up to `q^max_exp` as an integer Laurent polynomial.
    pub fn integral_series_upto(&self, max_exp: i64) -> Result<LaurentInt> {
        let mut terms = Vec::new();
        for (e, c) in self.series_upto(max_exp) {
            if !c.is_integer() {
                return Err(Error::NonInteger(format!("coefficient {c} of q^{e} in {self}")));
            }
            terms.push((e, c.to_integer()));
        }
        Ok(LaurentInt::from_terms(terms))
    }

    /// Value is a polynomial in `qℤ[q]`.
    pub fn in_q_zq(&self) -> bool {
        self.as_laurent().is_some_and(|p| p.in_q_zq())
    }

    /// Value in `q𝒜₀`: regular at zero and vanishing there.
    pub fn in_q_a0(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 1)
    }

    pub fn is_integer_unit_monomial(&self) -> bool {
        self.as_laurent().is_some_and(|p| p.is_unit())
    }

    /// Rational number value when constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        (self.num.low_exp() == Some(0) && self.num.high_exp() == Some(0) && self.den.high_exp() == Some(0))
            .then(|| BigRational::new(self.num.coeff(0), self.den.coeff(0)))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::normalized(LaurentInt::from(r.numer().clone()), LaurentInt::from(r.denom().clone()))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.den.is_one() && self.num.has_nonnegative_coeffs()
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentInt> for RatFunc {
    fn from(l: LaurentInt) -> Self {
        Self::from_laurent(l)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

fn add_impl(a: &RatFunc, b: &RatFunc, negate: bool) -> RatFunc {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate { -b } else { b.clone() };
    }
    if a.den == b.den {
        let n = if negate { &a.num - &b.num } else { &a.num + &b.num };
        if a.den.is_one() {
            return RatFunc::from_laurent(n);
        }
        return RatFunc::normalized(n, a.den.clone());
    }
    let t = &a.num * &b.den;
    let u = &b.num * &a.den;
    let n = if negate { t - u } else { t + u };
    RatFunc::normalized(n, &a.den * &b.den)
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        add_impl(self, rhs, false)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        add_impl(self, rhs, true)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        add_impl(&self, &rhs, false)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        add_impl(&self, &rhs, true)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_laurent(&self.num * &rhs.num);
        }
        if self.den.is_one() {
            return rhs.scale_laurent(&self.num);
        }
        if rhs.den.is_one() {
            return self.scale_laurent(&rhs.num);
        }
        RatFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: LaurentInt,
    den: LaurentInt,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncRepr { num: self.num.clone(), den: self.den.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RatFuncRepr::deserialize(d)?;
        RatFunc::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}
