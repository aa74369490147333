use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::poly;

/// Integer Laurent polynomial in `q`.
///
/// Stored densely as a lowest exponent plus a coefficient run whose first
/// and last entries are nonzero, so equal values have identical storage.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentInt {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        LaurentInt { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0)
    }

    /// `c q^e`.
    pub fn monomial(c: BigInt, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentInt { low: e, coeffs: vec![c] }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(BigInt::one(), e)
    }

    /// Builds from a dense run starting at exponent `low`; trims zeros.
    pub fn from_dense(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut out = LaurentInt { low, coeffs };
        out.trim();
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let map: BTreeMap<i64, BigInt> = terms.into_iter().fold(BTreeMap::new(), |mut m, (e, c)| {
            *m.entry(e).or_insert_with(BigInt::zero) += c;
            m
        });
        let Some((&lo, _)) = map.iter().next() else {
            return Self::zero();
        };
        let hi = *map.keys().next_back().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        Self::from_dense(lo, coeffs)
    }

    /// Shorthand for small test and table literals: `[(exp, coeff), ...]`.
    pub fn from_pairs(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    fn trim(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.low = 0;
            }
            Some(k) => {
                if k > 0 {
                    self.coeffs.drain(..k);
                    self.low += k as i64;
                }
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn low_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        if e < self.low {
            return BigInt::zero();
        }
        self.coeffs.get((e - self.low) as usize).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub(crate) fn dense(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentInt { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentInt { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// `q ↦ q^{-1}`.
    pub fn bar(&self) -> Self {
        match self.high_exp() {
            None => Self::zero(),
            Some(h) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                LaurentInt { low: -h, coeffs }
            }
        }
    }

    /// `q ↦ q^k` for `k > 0`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k > 0);
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// A single term with coefficient `±1`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    /// Every exponent is strictly positive (`self ∈ qℤ[q]`).
    pub fn in_q_zq(&self) -> bool {
        self.is_zero() || self.low >= 1
    }

    /// Every exponent is strictly negative (`self ∈ q⁻¹ℤ[q⁻¹]`).
    pub fn in_qinv_zqinv(&self) -> bool {
        self.high_exp().is_none_or(|h| h <= -1)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact division, `None` if `d` does not divide `self` in `ℤ[q^{±1}]`.
    pub fn exact_div(&self, d: &LaurentInt) -> Option<LaurentInt> {
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let quo = poly::div_exact(&self.coeffs, &d.coeffs)?;
        Some(Self::from_dense(self.low - d.low, quo))
    }

    /// Quantum integer `[n]_t` with `t = q^d`.
    pub fn q_int(n: i64, d: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let sign = n.signum();
        let m = n.abs();
        let terms = (0..m).map(|k| (d * (m - 1 - 2 * k), BigInt::from(sign)));
        Self::from_terms(terms)
    }

    /// Quantum factorial `[n]_t!` with `t = q^d`.
    pub fn q_factorial(n: u32, d: i64) -> Self {
        (1..=n as i64).fold(Self::one(), |acc, k| &acc * &Self::q_int(k, d))
    }

    /// Evaluates at `q = t` modulo the prime `p`; `t` must be invertible.
    pub fn eval_mod(&self, t: u64, p: u64) -> u64 {
        if self.is_zero() {
            return 0;
        }
        let tinv = poly::inv_mod(t, p);
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            acc = poly::add_mod(poly::mul_mod(acc, t, p), poly::reduce_mod(c, p), p);
        }
        let base = if self.low >= 0 { t } else { tinv };
        poly::mul_mod(acc, poly::pow_mod(base, self.low.unsigned_abs(), p), p)
    }

    /// Part of `self` with exponents `≤ e`.
    pub fn truncate_above(&self, e: i64) -> Self {
        Self::from_terms(self.terms().filter(|(k, _)| *k <= e).map(|(k, c)| (k, c.clone())))
    }
}

impl fmt::Debug for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_exp(f: &mut fmt::Formatter<'_>, e: i64) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "q"),
        _ => write!(f, "q^{e}"),
    }
}

impl fmt::Display for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_exp(f, e)?;
            }
        }
        Ok(())
    }
}

impl PartialOrd for LaurentInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order, used only for deterministic sorting.
impl Ord for LaurentInt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.low, self.coeffs.len()).cmp(&(other.low, other.coeffs.len())).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

fn add_into(acc: &mut LaurentInt, rhs: &LaurentInt, negate: bool) {
    if rhs.is_zero() {
        return;
    }
    if acc.is_zero() {
        *acc = if negate { -rhs } else { rhs.clone() };
        return;
    }
    let lo = acc.low.min(rhs.low);
    let hi = acc.high_exp().unwrap().max(rhs.high_exp().unwrap());
    if lo < acc.low {
        let pad = (acc.low - lo) as usize;
        acc.coeffs.splice(0..0, std::iter::repeat_n(BigInt::zero(), pad));
        acc.low = lo;
    }
    acc.coeffs.resize((hi - lo + 1) as usize, BigInt::zero());
    let off = (rhs.low - lo) as usize;
    for (k, c) in rhs.coeffs.iter().enumerate() {
        if negate {
            acc.coeffs[off + k] -= c;
        } else {
            acc.coeffs[off + k] += c;
        }
    }
    acc.trim();
}

impl AddAssign<&LaurentInt> for LaurentInt {
    fn add_assign(&mut self, rhs: &LaurentInt) {
        add_into(self, rhs, false);
    }
}

impl SubAssign<&LaurentInt> for LaurentInt {
    fn sub_assign(&mut self, rhs: &LaurentInt) {
        add_into(self, rhs, true);
    }
}

impl Add for &LaurentInt {
    type Output = LaurentInt;
    fn add(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentInt {
    type Output = LaurentInt;
    fn sub(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for LaurentInt {
    type Output = LaurentInt;
    fn add(mut self, rhs: LaurentInt) -> LaurentInt {
        self += &rhs;
        self
    }
}

impl Sub for LaurentInt {
    type Output = LaurentInt;
    fn sub(mut self, rhs: LaurentInt) -> LaurentInt {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        LaurentInt { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        -&self
    }
}

impl Mul for &LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: &LaurentInt) -> LaurentInt {
        if self.is_zero() || rhs.is_zero() {
            return LaurentInt::zero();
        }
        LaurentInt { low: self.low + rhs.low, coeffs: poly::mul(&self.coeffs, &rhs.coeffs) }
    }
}

impl Mul for LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: LaurentInt) -> LaurentInt {
        &self * &rhs
    }
}

impl From<i64> for LaurentInt {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<BigInt> for LaurentInt {
    fn from(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }
}

/// Integers that fit `i64` are JSON numbers, larger ones decimal strings.
pub(crate) fn bigint_to_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(c.to_string()),
    }
}

impl Serialize for LaurentInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms().count()))?;
        for (e, c) in self.terms() {
            map.serialize_entry(&e.to_string(), &bigint_to_json(c))?;
        }
        map.end()
    }
}

struct LaurentVisitor;

impl<'de> Visitor<'de> for LaurentVisitor {
    type Value = LaurentInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "a map from exponent strings to integers")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<LaurentInt, A::Error> {
        let mut terms = Vec::new();
        while let Some((k, v)) = access.next_entry::<String, serde_json::Value>()? {
            let e: i64 = k.parse().map_err(|_| de::Error::custom(format!("bad exponent {k:?}")))?;
            let c: BigInt = match &v {
                serde_json::Value::Number(n) => n.to_string().parse().map_err(de::Error::custom)?,
                serde_json::Value::String(s) => s.parse().map_err(de::Error::custom)?,
                _ => return Err(de::Error::custom("coefficient must be an integer")),
            };
            if c.is_zero() {
                return Err(de::Error::custom("zero coefficients are not stored"));
            }
            terms.push((e, c));
        }
        Ok(LaurentInt::from_terms(terms))
    }
}

impl<'de> Deserialize<'de> for LaurentInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_map(LaurentVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(t: &[(i64, i64)]) -> LaurentInt {
        LaurentInt::from_pairs(t)
    }

    #[test]
    fn monomial_shift() {
        let a = l(&[(1, 1), (-1, 1)]);
        assert_eq!(&a * &LaurentInt::q_pow(1), l(&[(2, 1), (0, 1)]));
    }

    #[test]
    fn trims_cancellation() {
        let a = l(&[(0, 1), (3, 2)]);
        let b = l(&[(0, 1)]);
        let d = &a - &b;
        assert_eq!(d, l(&[(3, 2)]));
        assert_eq!(d.low_exp(), Some(3));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(LaurentInt::q_int(2, 1), l(&[(1, 1), (-1, 1)]));
        assert_eq!(LaurentInt::q_int(3, 2), l(&[(4, 1), (0, 1), (-4, 1)]));
        assert_eq!(LaurentInt::q_int(-2, 1), l(&[(1, -1), (-1, -1)]));
        let f3 = LaurentInt::q_factorial(3, 1);
        assert_eq!(f3, &LaurentInt::q_int(2, 1) * &LaurentInt::q_int(3, 1));
    }

    #[test]
    fn bar_reverses() {
        assert_eq!(l(&[(1, 1)]).bar(), l(&[(-1, 1)]));
        assert_eq!(l(&[(0, 1), (2, -1)]).bar(), l(&[(0, 1), (-2, -1)]));
        assert!(l(&[(1, 1), (-1, 1)]).is_bar_invariant());
    }

    #[test]
    fn exact_division() {
        let a = l(&[(0, 1), (2, -1)]);
        let b = l(&[(0, 1), (1, 1)]);
        assert_eq!(a.exact_div(&b), Some(l(&[(0, 1), (1, -1)])));
        assert_eq!(a.exact_div(&l(&[(0, 2)])), None);
        assert_eq!(l(&[(-3, 6)]).exact_div(&l(&[(1, 3)])), Some(l(&[(-4, 2)])));
    }

    #[test]
    fn display_strings() {
        assert_eq!(l(&[(0, 1), (2, -1)]).to_string(), "1 - q^2");
        assert_eq!(l(&[(-1, 1), (1, 3)]).to_string(), "q^-1 + 3*q");
        assert_eq!(LaurentInt::zero().to_string(), "0");
    }

    #[test]
    fn json_roundtrip() {
        let a = l(&[(-2, 1), (0, 1), (5, -7)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"-2":1,"0":1,"5":-7}"#);
        let back: LaurentInt = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let big = LaurentInt::monomial(BigInt::from(10).pow(30), 1);
        let back: LaurentInt = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn modular_evaluation() {
        let p = 1_000_000_007u64;
        let a = l(&[(-1, 1), (1, 1)]);
        let inv2 = poly::inv_mod(2, p);
        assert_eq!(a.eval_mod(2, p), poly::add_mod(2, inv2, p));
    }
}
