//! The word model of `U_q⁻`: weight spaces as words modulo the radical of
//! the Kashiwara form, with products, the derivations `ᵢr` and `r_i`, the
//! involutions, divided powers and Kashiwara operators.

mod space;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::memo::MemoTable;
use crate::rootdata::{RootDatum, Weight};
use crate::scalars::{Integrality, LaurentInt, RatFunc};

pub use space::{words_of_weight, WordBasis};

/// Divided word `f_{i₁}^{(a₁)} ⋯ f_{i_k}^{(a_k)}` as `(i, a)` pairs.
pub type DividedWord = Vec<(usize, u32)>;

/// Homogeneous element, stored by coordinates over the pivot words of its weight.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HalfElement {
    weight: Weight,
    coords: Vec<RatFunc>,
}

impl HalfElement {
    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn coords(&self) -> &[RatFunc] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(RatFunc::is_zero)
    }

    pub fn scale(&self, c: &RatFunc) -> HalfElement {
        HalfElement { weight: self.weight.clone(), coords: self.coords.iter().map(|x| x * c).collect() }
    }

    pub fn scale_laurent(&self, c: &LaurentInt) -> HalfElement {
        HalfElement { weight: self.weight.clone(), coords: self.coords.iter().map(|x| x.scale_laurent(c)).collect() }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> HalfElement {
        HalfElement { weight: self.weight.clone(), coords: self.coords.iter().map(|x| x.shift(k)).collect() }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &RatFunc, other: &HalfElement) {
        assert_eq!(self.weight, other.weight, "adding elements of different weights");
        if c.is_zero() {
            return;
        }
        for (x, y) in self.coords.iter_mut().zip(&other.coords) {
            if !y.is_zero() {
                *x = &*x + &(c * y);
            }
        }
    }

    /// Bar involution: words are bar-fixed, so it acts on coordinates.
    pub fn bar(&self) -> HalfElement {
        HalfElement { weight: self.weight.clone(), coords: self.coords.iter().map(RatFunc::bar).collect() }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.coords.iter().all(RatFunc::is_bar_invariant)
    }
}

impl std::fmt::Debug for HalfElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{:?}", self.weight, self.coords)
    }
}

impl Add for &HalfElement {
    type Output = HalfElement;
    fn add(self, rhs: &HalfElement) -> HalfElement {
        let mut out = self.clone();
        out.add_scaled(&RatFunc::one(), rhs);
        out
    }
}

impl Sub for &HalfElement {
    type Output = HalfElement;
    fn sub(self, rhs: &HalfElement) -> HalfElement {
        let mut out = self.clone();
        out.add_scaled(&RatFunc::from_int(-1), rhs);
        out
    }
}

impl Neg for &HalfElement {
    type Output = HalfElement;
    fn neg(self) -> HalfElement {
        HalfElement { weight: self.weight.clone(), coords: self.coords.iter().map(|x| -x).collect() }
    }
}

fn axpy(acc: &mut [RatFunc], c: &RatFunc, v: &[RatFunc]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

fn axpy_shift(acc: &mut [RatFunc], e: i64, v: &[RatFunc]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &x.shift(e);
        }
    }
}

/// `U_q⁻` of a root datum, with per-weight spaces built on demand up to a height bound.
pub struct Algebra {
    datum: RootDatum,
    max_height: u32,
    spaces: MemoTable<Weight, WordBasis>,
}

impl Algebra {
    pub fn new(datum: RootDatum, max_height: u32) -> Self {
        Algebra { datum, max_height, spaces: MemoTable::new() }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn max_height(&self) -> u32 {
        self.max_height
    }

    pub fn within_bound(&self, nu: &Weight) -> bool {
        nu.height() <= self.max_height
    }

    pub fn weight_space(&self, nu: &Weight) -> Result<Arc<WordBasis>> {
        if nu.height() > self.max_height {
            return Err(Error::HeightExceeded { height: nu.height(), bound: self.max_height });
        }
        self.spaces.get_or_try_init(nu, || {
            if nu.is_zero() {
                return Ok(WordBasis::trivial(self.rank()));
            }
            let lower = |a: usize| self.weight_space(&nu.sub_simple(a, 1).expect("letter present"));
            WordBasis::build(&self.datum, nu, &lower)
        })
    }

    pub fn dim(&self, nu: &Weight) -> Result<usize> {
        Ok(self.weight_space(nu)?.dim())
    }

    pub fn element(&self, nu: &Weight, coords: Vec<RatFunc>) -> Result<HalfElement> {
        let d = self.dim(nu)?;
        if coords.len() != d {
            return Err(Error::Precondition(format!("weight {nu} has dimension {d}, got {} coordinates", coords.len())));
        }
        Ok(HalfElement { weight: nu.clone(), coords })
    }

    pub fn zero(&self, nu: &Weight) -> Result<HalfElement> {
        let d = self.dim(nu)?;
        Ok(HalfElement { weight: nu.clone(), coords: vec![RatFunc::zero(); d] })
    }

    pub fn one(&self) -> HalfElement {
        HalfElement { weight: Weight::zero(self.rank()), coords: vec![RatFunc::one()] }
    }

    /// The monomial `f_{w₁}⋯f_{w_k}`.
    pub fn word(&self, word: &[usize]) -> Result<HalfElement> {
        let nu = Weight::of_word(self.rank(), word);
        let sp = self.weight_space(&nu)?;
        let coords = sp.coords_of(word).expect("word of its own weight").to_vec();
        Ok(HalfElement { weight: nu, coords })
    }

    pub fn generator(&self, i: usize) -> Result<HalfElement> {
        self.word(&[i])
    }

    /// `f_i^{(c)} = f_i^c / [c]_i!`.
    pub fn divided_power(&self, i: usize, c: u32) -> Result<HalfElement> {
        self.divided_monomial(&[(i, c)])
    }

    /// Product of divided powers in the given order.
    pub fn divided_monomial(&self, spec: &[(usize, u32)]) -> Result<HalfElement> {
        let mut word = Vec::new();
        let mut den = LaurentInt::one();
        for &(i, a) in spec {
            word.extend(std::iter::repeat_n(i, a as usize));
            den = &den * &LaurentInt::q_factorial(a, self.datum.d(i));
        }
        let x = self.word(&word)?;
        let inv = RatFunc::new(LaurentInt::one(), den)?;
        Ok(x.scale(&inv))
    }

    pub fn multiply(&self, x: &HalfElement, y: &HalfElement) -> Result<HalfElement> {
        let nu = x.weight.add(&y.weight);
        let sp = self.weight_space(&nu)?;
        let spx = self.weight_space(&x.weight)?;
        let spy = self.weight_space(&y.weight)?;
        let mut out = vec![RatFunc::zero(); sp.dim()];
        let mut word = Vec::with_capacity(nu.height() as usize);
        for (a, xa) in x.coords.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.coords.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                word.clear();
                word.extend_from_slice(spx.pivot_word(a));
                word.extend_from_slice(spy.pivot_word(b));
                axpy(&mut out, &(xa * yb), sp.coords_of(&word).expect("concatenation has the summed weight"));
            }
        }
        Ok(HalfElement { weight: nu, coords: out })
    }

    /// Pairings of `x` with the pivot words of its weight.
    pub fn pivot_pairings(&self, x: &HalfElement) -> Result<Vec<RatFunc>> {
        let sp = self.weight_space(&x.weight)?;
        Ok(sp
            .pivot_gram()
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&x.coords)
                    .filter(|(g, c)| !g.is_zero() && !c.is_zero())
                    .fold(RatFunc::zero(), |acc, (g, c)| &acc + &c.scale_laurent(g))
            })
            .collect())
    }

    /// Pairings of `x` with every word of its weight, in [`WordBasis::words`] order.
    pub fn word_pairings(&self, x: &HalfElement) -> Result<Vec<RatFunc>> {
        let sp = self.weight_space(&x.weight)?;
        let n = sp.words().len();
        let mut out = vec![RatFunc::zero(); n];
        for (a, &pv) in sp.pivots().iter().enumerate() {
            let c = &x.coords[a];
            if c.is_zero() {
                continue;
            }
            for (o, g) in out.iter_mut().zip(&sp.gram()[pv]) {
                if !g.is_zero() {
                    *o = &*o + &c.scale_laurent(g);
                }
            }
        }
        Ok(out)
    }

    /// The Kashiwara form; elements of different weights pair to zero.
    pub fn pair(&self, x: &HalfElement, y: &HalfElement) -> Result<RatFunc> {
        if x.weight != y.weight {
            return Ok(RatFunc::zero());
        }
        let px = self.pivot_pairings(x)?;
        Ok(px.iter().zip(&y.coords).filter(|(a, b)| !a.is_zero() && !b.is_zero()).fold(RatFunc::zero(), |acc, (a, b)| &acc + &(a * b)))
    }

    /// Element with prescribed pairings against the pivot words.
    pub fn from_pivot_pairings(&self, nu: &Weight, pairings: &[RatFunc]) -> Result<HalfElement> {
        let sp = self.weight_space(nu)?;
        let inv = sp.pivot_gram_inverse();
        let coords = inv.iter().map(|row| row.iter().zip(pairings).fold(RatFunc::zero(), |acc, (a, b)| &acc + &(a * b))).collect();
        Ok(HalfElement { weight: nu.clone(), coords })
    }

    fn lowered(&self, x: &HalfElement, i: usize) -> Result<Weight> {
        x.weight.sub_simple(i, 1).ok_or_else(|| Error::Precondition(format!("weight {} has no α_{} component", x.weight, self.datum.label(i))))
    }

    fn derivation(&self, x: &HalfElement, i: usize, left: bool) -> Result<HalfElement> {
        let low = self.lowered(x, i)?;
        let sp = self.weight_space(&x.weight)?;
        let sl = self.weight_space(&low)?;
        let cell = if left { &sp.ir_maps[i] } else { &sp.ri_maps[i] };
        let map = cell.get_or_init(|| {
            (0..sp.dim())
                .map(|a| {
                    let w = sp.pivot_word(a);
                    let mut out = vec![RatFunc::zero(); sl.dim()];
                    for p in 0..w.len() {
                        if w[p] != i {
                            continue;
                        }
                        let others: &[usize] = if left { &w[..p] } else { &w[p + 1..] };
                        let e: i64 = -others.iter().map(|&t| self.datum.pair(t, i)).sum::<i64>();
                        let mut rest = w.to_vec();
                        rest.remove(p);
                        axpy_shift(&mut out, e, sl.coords_of(&rest).expect("shorter word exists"));
                    }
                    out
                })
                .collect()
        });
        let mut out = vec![RatFunc::zero(); sl.dim()];
        for (c, col) in x.coords.iter().zip(map) {
            axpy(&mut out, c, col);
        }
        Ok(HalfElement { weight: low, coords: out })
    }

    /// `ᵢr`, adjoint to left multiplication by `f_i`.
    pub fn ir(&self, x: &HalfElement, i: usize) -> Result<HalfElement> {
        self.derivation(x, i, true)
    }

    /// `r_i`, adjoint to right multiplication by `f_i`.
    pub fn ri(&self, x: &HalfElement, i: usize) -> Result<HalfElement> {
        self.derivation(x, i, false)
    }

    /// `ᵢr`, or `None` when the weight has no `α_i` component.
    pub fn ir_opt(&self, x: &HalfElement, i: usize) -> Result<Option<HalfElement>> {
        if x.weight.get(i) == 0 {
            return Ok(None);
        }
        self.ir(x, i).map(Some)
    }

    /// Anti-involution fixing every `f_i`.
    pub fn star(&self, x: &HalfElement) -> Result<HalfElement> {
        let sp = self.weight_space(&x.weight)?;
        let map = sp.star_map.get_or_init(|| {
            (0..sp.dim())
                .map(|a| {
                    let mut w = sp.pivot_word(a).to_vec();
                    w.reverse();
                    sp.coords_of(&w).expect("reversed word has the same weight").to_vec()
                })
                .collect()
        });
        let mut out = vec![RatFunc::zero(); sp.dim()];
        for (c, col) in x.coords.iter().zip(map) {
            axpy(&mut out, c, col);
        }
        Ok(HalfElement { weight: x.weight.clone(), coords: out })
    }

    pub fn bar(&self, x: &HalfElement) -> HalfElement {
        x.bar()
    }

    /// `σ` with `(σ(x), y) = bar((x, bar y))`.
    pub fn sigma(&self, x: &HalfElement) -> Result<HalfElement> {
        let p: Vec<RatFunc> = self.pivot_pairings(x)?.iter().map(RatFunc::bar).collect();
        self.from_pivot_pairings(&x.weight, &p)
    }

    /// `σ(x) = x`, i.e. every pairing of `x` with a word is bar-invariant.
    pub fn is_sigma_invariant(&self, x: &HalfElement) -> Result<bool> {
        Ok(self.pivot_pairings(x)?.iter().all(RatFunc::is_bar_invariant))
    }

    /// `x = Σ_c f_i^{(c)} x_c` with `x_c ∈ ker ᵢr`, as `(c, x_c)` with nonzero parts in increasing `c`.
    pub fn kashiwara_decompose(&self, x: &HalfElement, i: usize) -> Result<Vec<(u32, HalfElement)>> {
        let d = self.datum.d(i);
        let mut n = 0u32;
        let mut cur = x.clone();
        while let Some(next) = self.ir_opt(&cur, i)? {
            if next.is_zero() {
                break;
            }
            cur = next;
            n += 1;
        }
        let mut y = x.clone();
        let mut parts = Vec::new();
        for c in (1..=n).rev() {
            let mut r = y.clone();
            for _ in 0..c {
                r = self.ir(&r, i)?;
            }
            let xc = r.shift(d * i64::from(c * (c - 1) / 2));
            if xc.is_zero() {
                continue;
            }
            let top = self.multiply(&self.divided_power(i, c)?, &xc)?;
            y = &y - &top;
            parts.push((c, xc));
        }
        if !y.is_zero() || parts.is_empty() {
            parts.push((0, y));
        }
        parts.reverse();
        Ok(parts)
    }

    /// `ẽ_i x = Σ f_i^{(c−1)} x_c`; `None` when the weight has no `α_i` component.
    pub fn kashiwara_e(&self, x: &HalfElement, i: usize) -> Result<Option<HalfElement>> {
        let Some(low) = x.weight.sub_simple(i, 1) else { return Ok(None) };
        let mut out = self.zero(&low)?;
        for (c, xc) in self.kashiwara_decompose(x, i)? {
            if c >= 1 {
                let t = self.multiply(&self.divided_power(i, c - 1)?, &xc)?;
                out = &out + &t;
            }
        }
        Ok(Some(out))
    }

    /// `f̃_i x = Σ f_i^{(c+1)} x_c`.
    pub fn kashiwara_f(&self, x: &HalfElement, i: usize) -> Result<HalfElement> {
        let mut out = self.zero(&x.weight.add_simple(i, 1))?;
        for (c, xc) in self.kashiwara_decompose(x, i)? {
            let t = self.multiply(&self.divided_power(i, c + 1)?, &xc)?;
            out = &out + &t;
        }
        Ok(out)
    }

    /// All divided words of weight `nu` with distinct adjacent letters.
    pub fn divided_words(&self, nu: &Weight) -> Vec<DividedWord> {
        fn rec(left: &mut Vec<u32>, prev: Option<usize>, cur: &mut DividedWord, out: &mut Vec<DividedWord>) {
            if left.iter().all(|&c| c == 0) {
                out.push(cur.clone());
                return;
            }
            for i in 0..left.len() {
                if Some(i) == prev {
                    continue;
                }
                for a in 1..=left[i] {
                    left[i] -= a;
                    cur.push((i, a));
                    rec(left, Some(i), cur, out);
                    cur.pop();
                    left[i] += a;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut nu.0.clone(), None, &mut Vec::new(), &mut out);
        out
    }

    /// Worst integrality among pairings of `x` with the divided monomials of its weight.
    pub fn dual_integrality(&self, x: &HalfElement) -> Result<Integrality> {
        let sp = self.weight_space(&x.weight)?;
        let v = self.word_pairings(x)?;
        let mut worst = Integrality::Integral;
        for dw in self.divided_words(&x.weight) {
            let mut word = Vec::new();
            let mut den = LaurentInt::one();
            for &(i, a) in &dw {
                word.extend(std::iter::repeat_n(i, a as usize));
                den = &den * &LaurentInt::q_factorial(a, self.datum.d(i));
            }
            let val = &v[sp.index_of(&word).expect("word of the weight")];
            let r = if den.is_one() { val.clone() } else { val * &RatFunc::new(LaurentInt::one(), den)? };
            worst = worst.max(r.integrality());
            if worst == Integrality::NotLaurent {
                break;
            }
        }
        Ok(worst)
    }

    pub fn in_dual_integral_form(&self, x: &HalfElement) -> Result<bool> {
        Ok(self.dual_integrality(x)? == Integrality::Integral)
    }

    /// Pairings of the free-algebra q-Serre element for `(i, j)` with every word of its weight.
    pub fn q_serre_residuals(&self, i: usize, j: usize) -> Result<Vec<RatFunc>> {
        let m = (1 - self.datum.a(i, j)) as u32;
        let nu = Weight::simple(self.rank(), j).add_simple(i, m);
        let sp = self.weight_space(&nu)?;
        let di = self.datum.d(i);
        let mut out = vec![RatFunc::zero(); sp.words().len()];
        for k in 0..=m {
            let mut word = vec![i; (m - k) as usize];
            word.push(j);
            word.extend(std::iter::repeat_n(i, k as usize));
            let den = &LaurentInt::q_factorial(m - k, di) * &LaurentInt::q_factorial(k, di);
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let c = RatFunc::new(LaurentInt::from_int(sign), den)?;
            let row = &sp.gram()[sp.index_of(&word).expect("word of the weight")];
            for (o, g) in out.iter_mut().zip(row) {
                if !g.is_zero() {
                    *o = &*o + &c.scale_laurent(g);
                }
            }
        }
        Ok(out)
    }

    /// Every q-Serre element lies in the radical of the form.
    pub fn q_serre_certificate(&self) -> Result<bool> {
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if i != j && !self.q_serre_residuals(i, j)?.iter().all(RatFunc::is_zero) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `{"weight": […], "coords": {"<pivot word>": RatFunc}}`.
    pub fn to_json(&self, x: &HalfElement) -> Result<Value> {
        let sp = self.weight_space(&x.weight)?;
        let mut coords = serde_json::Map::new();
        for (a, c) in x.coords.iter().enumerate() {
            if !c.is_zero() {
                coords.insert(self.datum.word_key(sp.pivot_word(a)), serde_json::to_value(c)?);
            }
        }
        Ok(json!({ "weight": x.weight, "coords": coords }))
    }

    /// Accepts coordinates on arbitrary words of the stated weight.
    pub fn from_json(&self, v: &Value) -> Result<HalfElement> {
        let weight: Weight = serde_json::from_value(v.get("weight").cloned().ok_or_else(|| Error::Corrupt("missing \"weight\"".into()))?)?;
        if weight.rank() != self.rank() {
            return Err(Error::Corrupt(format!("weight {weight} has the wrong rank")));
        }
        let coords: BTreeMap<String, RatFunc> = serde_json::from_value(v.get("coords").cloned().unwrap_or_else(|| json!({})))?;
        let mut out = self.zero(&weight)?;
        for (key, c) in coords {
            let word = self.datum.parse_word_key(&key)?;
            if Weight::of_word(self.rank(), &word) != weight {
                return Err(Error::Corrupt(format!("word {key:?} does not have weight {weight}")));
            }
            out.add_scaled(&c, &self.word(&word)?);
        }
        Ok(out)
    }

    /// Human-readable sum over pivot words, e.g. `f12 + (-q)·f21`.
    pub fn describe(&self, x: &HalfElement) -> String {
        let Ok(sp) = self.weight_space(&x.weight) else { return format!("{x:?}") };
        let mut s = String::new();
        for (a, c) in x.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !s.is_empty() {
                s.push_str(" + ");
            }
            let w = self.datum.word_key(sp.pivot_word(a));
            let w = if w.is_empty() { "1".to_string() } else { format!("f{w}") };
            if c.is_one() {
                s.push_str(&w);
            } else {
                let _ = write!(s, "({c})·{w}");
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

#[cfg(test)]
mod tests;
