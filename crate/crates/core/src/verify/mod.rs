//! Weight-by-weight verification of the factorization and multiplicity-free
//! multiplication theorems, with reports carrying concrete witnesses.

mod report;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use rayon::prelude::*;

use crate::canbasis::{CanonicalContext, Vertex};
use crate::error::Result;
use crate::halfalg::HalfElement;
use crate::pbw::{ChainStatus, PbwContext, Sign};
use crate::rootdata::{ExponentTuple, Weight};
use crate::scalars::matrix::det_laurent;
use crate::scalars::{LaurentInt, RatFunc};

pub use report::{Theorem, VerifyReport, WeightRecord, Witness};

/// `b[12]`-style name of a vertex: the letters of `f̃_{i_k}⋯f̃_{i_1}u∞` left to right.
pub fn vertex_label(canon: &CanonicalContext, v: &Vertex) -> String {
    let mut p = canon.crystal().path(v);
    if p.is_empty() {
        return "u".to_string();
    }
    p.reverse();
    format!("b[{}]", canon.datum().word_key(&p))
}

fn tuple_label(c: &[u32]) -> String {
    format!("({})", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

/// Sweep over all weights up to the context's height bound.
struct Sweep<'a> {
    canon: &'a CanonicalContext,
    pbw: PbwContext<'a>,
}

impl<'a> Sweep<'a> {
    fn new(canon: &'a CanonicalContext, word: &[usize], epsilon: Sign) -> Result<Self> {
        Ok(Sweep { canon, pbw: PbwContext::new(canon, word, epsilon)? })
    }

    fn weights(&self) -> Vec<Weight> {
        Weight::all_up_to_height(self.canon.datum().rank(), self.canon.algebra().max_height())
    }

    fn report(&self, theorem: Theorem, split: Option<usize>, start: Instant, records: Vec<WeightRecord>) -> VerifyReport {
        VerifyReport {
            theorem,
            type_name: self.canon.datum().name().to_string(),
            word: self.canon.datum().word_labels(self.pbw.letters()),
            epsilon: self.pbw.epsilon(),
            split,
            max_height: self.canon.algebra().max_height(),
            records,
            elapsed: start.elapsed(),
        }
    }

    fn labels(&self, mu: &Weight) -> Result<Vec<(ExponentTuple, Vertex)>> {
        self.pbw.tuples(mu).into_iter().map(|c| self.pbw.crystal_label(&c).map(|b| (c, b))).collect()
    }

    fn cofinite(&self, mu: &Weight) -> Vec<Vertex> {
        self.canon.crystal().vertices(mu).iter().filter(|b| self.pbw.in_cofinite(b)).cloned().collect()
    }

    fn up(&self, b: &Vertex) -> Result<HalfElement> {
        let t = self.canon.table(&self.canon.crystal().weight(b))?;
        Ok(t.up(t.index_of(b).expect("vertex belongs to its weight table")).clone())
    }

    fn product(&self, factors: &[&Vertex]) -> Result<Vec<RatFunc>> {
        let alg = self.canon.algebra();
        let mut x = alg.one();
        for b in factors {
            x = alg.multiply(&x, &self.up(b)?)?;
        }
        self.canon.up_coordinates(&x)
    }

    /// Columns of the table at `nu` with labels and Lusztig data.
    fn columns(&self, nu: &Weight) -> Result<(Vec<Vertex>, Vec<ExponentTuple>)> {
        let t = self.canon.table(nu)?;
        let data = t.vertices().iter().map(|b| self.pbw.lusztig_datum(b).tuple).collect();
        Ok((t.vertices().to_vec(), data))
    }
}

/// Leading coefficient `q^shift` at `target`, tail on strictly lex-smaller data with
/// coefficients in `q^shift·qℤ[q]` (or `q^shift·q⁻¹ℤ[q⁻¹]` when `twisted`).
#[allow(clippy::too_many_arguments)]
fn check_row(
    rec: &mut WeightRecord,
    row_name: &str,
    coeffs: &[RatFunc],
    target: usize,
    data: &[ExponentTuple],
    names: &[String],
    shift: i64,
    twisted: bool,
) {
    let lead = &coeffs[target];
    if *lead != RatFunc::q_pow(shift) {
        rec.fail(Witness::new("leading-coefficient", format!("expected q^{shift} on {}", names[target])).at(row_name, &names[target], lead));
        return;
    }
    for (k, x) in coeffs.iter().enumerate() {
        if k == target || x.is_zero() {
            continue;
        }
        if data[k].cmp(&data[target]) != Ordering::Less {
            rec.fail(Witness::new("support-order", format!("support on {} with datum not below {}", names[k], tuple_label(&data[target]))).at(row_name, &names[k], x));
            return;
        }
        let y = x.shift(-shift);
        let ok = if twisted { y.bar().in_q_zq() } else { y.in_q_zq() };
        if !ok {
            rec.fail(Witness::new("tail-coefficient", format!("coefficient on {} outside the triangular band", names[k])).at(row_name, &names[k], x));
            return;
        }
    }
}

/// Determinant check: the square coefficient matrix must have a unit determinant in `ℤ[q^{±1}]`.
fn check_unit_det(rec: &mut WeightRecord) {
    if rec.matrix.len() != rec.dim {
        rec.fail(Witness::new("dimension", format!("{} products for dimension {}", rec.matrix.len(), rec.dim)));
        return;
    }
    let mut lm: Vec<Vec<LaurentInt>> = Vec::with_capacity(rec.dim);
    for (i, row) in rec.matrix.iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (j, x) in row.iter().enumerate() {
            match x.as_laurent() {
                Some(l) => r.push(l.clone()),
                None => {
                    rec.fail(Witness::new("non-integral", "product coefficient outside ℤ[q^{±1}]").at(&rec.rows[i], &rec.columns[j], x));
                    return;
                }
            }
        }
        lm.push(r);
    }
    let d = det_laurent(&lm);
    if !d.is_unit() {
        rec.fail(Witness::new("determinant", format!("determinant {d} is not a unit")));
    }
    rec.det = Some(d);
}

/// `G^up(b₁)G^up(b₂)` over `𝓑(≤w,ε)×𝓑(>w,ε)`, in the natural order for `ε` (or the opposite one).
pub fn check_factorization(canon: &CanonicalContext, word: &[usize], epsilon: Sign, opposite: bool) -> Result<VerifyReport> {
    let start = Instant::now();
    let s = Sweep::new(canon, word, epsilon)?;
    let records = s.weights().par_iter().map(|nu| factorization_record(&s, nu, opposite)).collect::<Result<Vec<_>>>()?;
    let thm = if opposite { Theorem::FactorizationOpposite } else { Theorem::Factorization };
    Ok(s.report(thm, None, start, records))
}

fn factorization_record(s: &Sweep, nu: &Weight, opposite: bool) -> Result<WeightRecord> {
    let datum = s.canon.datum();
    let (cols, data) = s.columns(nu)?;
    let names: Vec<String> = cols.iter().map(|b| vertex_label(s.canon, b)).collect();
    let mut rec = WeightRecord::new(nu.clone(), cols.len());
    rec.columns = names.clone();
    let mut rows = Vec::new();
    for mu in nu.lower_set() {
        let rest = nu.checked_sub(&mu).expect("lower set");
        let cof = s.cofinite(&rest);
        for (c, b1) in s.labels(&mu)? {
            for b2 in &cof {
                rows.push((c.clone(), b1.clone(), b2.clone(), datum.weight_form(&mu, &rest)));
            }
        }
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    let le_first = (s.pbw.epsilon() == Sign::Plus) != opposite;
    for (c, b1, b2, form) in rows {
        let name = format!("{} ⊗ {}", vertex_label(s.canon, &b1), vertex_label(s.canon, &b2));
        let coeffs = if le_first { s.product(&[&b1, &b2])? } else { s.product(&[&b2, &b1])? };
        let target = s.pbw.nabla(&b2, &c)?;
        match cols.iter().position(|b| *b == target) {
            Some(t) if data[t] == c => check_row(&mut rec, &name, &coeffs, t, &data, &names, if opposite { -form } else { 0 }, opposite),
            _ => rec.fail(Witness::new("nabla", format!("∇ of {name} does not carry datum {}", tuple_label(&c)))),
        }
        rec.rows.push(name);
        rec.matrix.push(coeffs);
    }
    check_unit_det(&mut rec);
    Ok(rec)
}

/// `G^up(τ_{≤w,ε}(b))·G^up(τ_{>w,ε}(b))` (order per `ε`) for every vertex `b`.
pub fn check_multiplicity_free(canon: &CanonicalContext, word: &[usize], epsilon: Sign) -> Result<VerifyReport> {
    let start = Instant::now();
    let s = Sweep::new(canon, word, epsilon)?;
    let records = s
        .weights()
        .par_iter()
        .map(|nu| {
            let (cols, data) = s.columns(nu)?;
            let names: Vec<String> = cols.iter().map(|b| vertex_label(canon, b)).collect();
            let mut rec = WeightRecord::new(nu.clone(), cols.len());
            rec.columns = names.clone();
            for (t, b) in cols.iter().enumerate() {
                let le = s.pbw.tau_le(b)?;
                let gt = s.pbw.tau_gt(b)?;
                let coeffs = if epsilon == Sign::Plus { s.product(&[&le, &gt])? } else { s.product(&[&gt, &le])? };
                check_row(&mut rec, &names[t], &coeffs, t, &data, &names, 0, false);
                rec.rows.push(names[t].clone());
                rec.matrix.push(coeffs);
            }
            Ok(rec)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(s.report(Theorem::MultiplicityFree, None, start, records))
}

/// `Ω_w = (τ_{≤w,ε}, τ_{>w,ε})` is a bijection onto `⊔ 𝓑(≤w,ε)_{μ}×𝓑(>w,ε)_{ν−μ}`, inverted by `∇`.
pub fn check_omega(canon: &CanonicalContext, word: &[usize], epsilon: Sign) -> Result<VerifyReport> {
    let start = Instant::now();
    let s = Sweep::new(canon, word, epsilon)?;
    let records = s
        .weights()
        .par_iter()
        .map(|nu| {
            let verts = canon.crystal().vertices(nu);
            let mut rec = WeightRecord::new(nu.clone(), verts.len());
            let mut product = BTreeSet::new();
            for mu in nu.lower_set() {
                let rest = nu.checked_sub(&mu).expect("lower set");
                let cof = s.cofinite(&rest);
                for (c, b1) in s.labels(&mu)? {
                    for b2 in &cof {
                        product.insert((b1.clone(), b2.clone()));
                        let b = s.pbw.nabla(b2, &c)?;
                        if (s.pbw.tau_le(&b)?, s.pbw.tau_gt(&b)?) != (b1.clone(), b2.clone()) {
                            rec.fail(Witness::new("nabla-inverse", format!("Ω∘∇ moves {} ⊗ {}", vertex_label(canon, &b1), vertex_label(canon, b2))));
                        }
                    }
                }
            }
            let mut image = BTreeSet::new();
            for b in verts.iter() {
                let pair = (s.pbw.tau_le(b)?, s.pbw.tau_gt(b)?);
                if !product.contains(&pair) {
                    rec.fail(Witness::new("image", format!("Ω({}) leaves the product set", vertex_label(canon, b))));
                }
                if !image.insert(pair) {
                    rec.fail(Witness::new("injectivity", format!("Ω is not injective at {}", vertex_label(canon, b))));
                }
            }
            if image.len() != product.len() {
                rec.fail(Witness::new("cardinality", format!("image has {} elements, product set has {}", image.len(), product.len())));
            }
            let cof = s.pbw.cofinite_vertices(nu)?;
            for b in &cof.mismatches {
                rec.fail(Witness::new("kernel-chain", format!("{} disagrees with the inverse-braid kernel chain", vertex_label(canon, b))));
            }
            if cof.skipped > 0 {
                rec.findings.push(format!("kernel chain skipped for {} vertices beyond the height bound", cof.skipped));
            }
            rec.rows = product.iter().map(|(a, b)| format!("{} ⊗ {}", vertex_label(canon, a), vertex_label(canon, b))).collect();
            Ok(rec)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(s.report(Theorem::Omega, None, start, records))
}

/// `G^up(b(τ_{≤p}c))·G^up(b(τ_{>p}c)) = G^up(b(c)) + Σ_{d<c} qℤ[q] G^up(b(d))`.
pub fn check_truncated_products(canon: &CanonicalContext, word: &[usize], epsilon: Sign, p: usize) -> Result<VerifyReport> {
    let start = Instant::now();
    let s = Sweep::new(canon, word, epsilon)?;
    if p >= word.len() {
        return Err(crate::Error::Usage(format!("--split: expected 0 ≤ p < {}, got {p}", word.len())));
    }
    let records = s
        .weights()
        .par_iter()
        .map(|nu| {
            let t = canon.table(nu)?;
            let labels = s.labels(nu)?;
            let mut data: Vec<ExponentTuple> = vec![Vec::new(); t.len()];
            let mut on_label = vec![false; t.len()];
            for (c, b) in &labels {
                let k = t.index_of(b).expect("label in table");
                data[k] = c.clone();
                on_label[k] = true;
            }
            let names: Vec<String> = t.vertices().iter().map(|b| vertex_label(canon, b)).collect();
            let mut rec = WeightRecord::new(nu.clone(), labels.len());
            rec.columns = names.clone();
            for (c, b) in &labels {
                let head: Vec<u32> = c.iter().enumerate().map(|(k, &x)| if k < p { x } else { 0 }).collect();
                let tail: Vec<u32> = c.iter().enumerate().map(|(k, &x)| if k < p { 0 } else { x }).collect();
                let bl = s.pbw.crystal_label(&head)?;
                let bg = s.pbw.crystal_label(&tail)?;
                let coeffs = if epsilon == Sign::Plus { s.product(&[&bl, &bg])? } else { s.product(&[&bg, &bl])? };
                let row = tuple_label(c);
                if let Some((k, x)) = coeffs.iter().enumerate().find(|(k, x)| !x.is_zero() && !on_label[*k]) {
                    rec.fail(Witness::new("support-label", format!("support on {} which is not a PBW label", names[k])).at(&row, &names[k], x));
                }
                check_row(&mut rec, &row, &coeffs, t.index_of(b).expect("label in table"), &data, &names, 0, false);
                rec.rows.push(row);
                rec.matrix.push(coeffs);
            }
            Ok(rec)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(s.report(Theorem::TruncatedProducts, Some(p), start, records))
}

/// Triple products over `𝓑(s_{i_{p+1}}⋯s_{i_ℓ},+1) × middle × 𝓑(s_{i_p}⋯s_{i₁},−1)` form an `𝒜`-basis,
/// where the middle factor is cut out by both Lusztig data vanishing.
pub fn check_triple_intersection(canon: &CanonicalContext, word: &[usize], p: usize) -> Result<VerifyReport> {
    let start = Instant::now();
    if p > word.len() {
        return Err(crate::Error::Usage(format!("--split: expected 0 ≤ p ≤ {}, got {p}", word.len())));
    }
    crate::rootdata::word_roots(canon.datum(), word)?;
    let mut prefix: Vec<usize> = word[..p].to_vec();
    prefix.reverse();
    let left = Sweep::new(canon, &word[p..], Sign::Plus)?;
    let right = Sweep::new(canon, &prefix, Sign::Minus)?;
    let middle = |mu: &Weight| -> Vec<Vertex> {
        canon.crystal().vertices(mu).iter().filter(|b| left.pbw.in_cofinite(b) && right.pbw.in_cofinite(b)).cloned().collect()
    };
    let mut label_cache: HashMap<(bool, Weight), Vec<Vertex>> = HashMap::new();
    let weights = left.weights();
    for mu in &weights {
        label_cache.insert((true, mu.clone()), left.labels(mu)?.into_iter().map(|x| x.1).collect());
        label_cache.insert((false, mu.clone()), right.labels(mu)?.into_iter().map(|x| x.1).collect());
    }
    let records = weights
        .par_iter()
        .map(|nu| {
            let t = canon.table(nu)?;
            let mut rec = WeightRecord::new(nu.clone(), t.len());
            rec.columns = t.vertices().iter().map(|b| vertex_label(canon, b)).collect();
            for m1 in nu.lower_set() {
                let r1 = nu.checked_sub(&m1).expect("lower set");
                for m2 in r1.lower_set() {
                    let m3 = r1.checked_sub(&m2).expect("lower set");
                    let mids = middle(&m2);
                    for a in &label_cache[&(true, m1.clone())] {
                        for b in &mids {
                            for c in &label_cache[&(false, m3.clone())] {
                                rec.rows.push(format!("{} ⊗ {} ⊗ {}", vertex_label(canon, a), vertex_label(canon, b), vertex_label(canon, c)));
                                rec.matrix.push(left.product(&[a, b, c])?);
                            }
                        }
                    }
                }
            }
            check_unit_det(&mut rec);
            let mids: BTreeSet<Vertex> = middle(nu).into_iter().collect();
            for b in t.vertices() {
                let l = left.pbw.chain_status(b)?;
                let r = right.pbw.chain_status(b)?;
                if l == ChainStatus::Skipped || r == ChainStatus::Skipped {
                    continue;
                }
                let in_spans = l == ChainStatus::Survived && r == ChainStatus::Survived;
                if in_spans != mids.contains(b) {
                    rec.findings.push(format!("{}: span intersection and datum vanishing disagree", vertex_label(canon, b)));
                }
            }
            Ok(rec)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rep = left.report(Theorem::TripleIntersection, Some(p), start, records);
    rep.word = canon.datum().word_labels(word);
    rep.epsilon = Sign::Plus;
    Ok(rep)
}

#[cfg(test)]
mod tests;
