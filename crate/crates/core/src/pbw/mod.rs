//! PBW and dual PBW bases along a reduced word, Lusztig data, the
//! subalgebras `U_q⁻(≤w,ε)` and `U_q⁻(>w,ε)`, and the maps `τ` and `∇`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use once_cell::sync::OnceCell;
use serde::{Deserialize, Serialize};

use crate::canbasis::{BasisTable, CanonicalContext, Direction, Vertex};
use crate::error::{Error, Result};
use crate::halfalg::HalfElement;
use crate::rootdata::{tuples_of_weight, word_roots, xi, ExponentTuple, ReducedWord, Weight};
use crate::scalars::matrix::solve;
use crate::scalars::{LaurentInt, RatFunc};

/// The sign `ε ∈ {+1, −1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_int(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn parse(s: &str) -> Result<Sign> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Sign::Plus),
            "-1" | "−1" | "-" => Ok(Sign::Minus),
            other => Err(Error::Usage(format!("--epsilon: expected +1 or -1, got {other:?}"))),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_int()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(format!("epsilon must be 1 or -1, got {v}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Sign::Plus { "+1" } else { "-1" })
    }
}

/// `(i, ε)`-Lusztig datum of a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LusztigDatum {
    pub tuple: ExponentTuple,
    pub word: Vec<usize>,
    pub epsilon: Sign,
}

/// Outcome of the inverse-braid kernel chain for a single `G^up(b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainStatus {
    Survived,
    Failed { step: usize },
    Skipped,
}

/// Vertices of `B(>w,ε)` at one weight together with the chain cross-check.
#[derive(Clone, Debug)]
pub struct CofiniteVertices {
    pub vertices: Vec<Vertex>,
    pub skipped: usize,
    pub mismatches: Vec<Vertex>,
}

/// Dual PBW to dual canonical transition at one weight.
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    pub weight: Weight,
    pub tuples: Vec<ExponentTuple>,
    pub labels: Vec<Vertex>,
    pub entries: Vec<Vec<RatFunc>>,
    pub unitriangular: bool,
    pub positive: bool,
    pub witness: Option<String>,
}

/// PBW data along a reduced word for one sign.
pub struct PbwContext<'a> {
    canon: &'a CanonicalContext,
    word: ReducedWord,
    epsilon: Sign,
    roots: Vec<OnceCell<HalfElement>>,
    monomials: Mutex<HashMap<ExponentTuple, HalfElement>>,
}

impl<'a> PbwContext<'a> {
    pub fn new(canon: &'a CanonicalContext, letters: &[usize], epsilon: Sign) -> Result<Self> {
        let word = word_roots(canon.datum(), letters)?;
        let n = word.len();
        Ok(PbwContext { canon, word, epsilon, roots: (0..n).map(|_| OnceCell::new()).collect(), monomials: Mutex::new(HashMap::new()) })
    }

    pub fn canon(&self) -> &CanonicalContext {
        self.canon
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn letters(&self) -> &[usize] {
        self.word.letters()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn epsilon(&self) -> Sign {
        self.epsilon
    }

    pub fn xi(&self, c: &[u32]) -> Weight {
        xi(c, &self.word)
    }

    /// `f_ε(β_k) = T_{i₁}^ε ⋯ T_{i_{k−1}}^ε (f_{i_k})` for `0 ≤ k < ℓ`, built inward-out.
    pub fn root_vector(&self, k: usize) -> Result<&HalfElement> {
        if k >= self.len() {
            return Err(Error::Precondition(format!("root index {} out of range 1..={}", k + 1, self.len())));
        }
        self.roots[k].get_or_try_init(|| {
            let letters = self.word.letters();
            let dir = if self.epsilon == Sign::Plus { Direction::Plus } else { Direction::Minus };
            let mut x = self.canon.algebra().generator(letters[k])?;
            for t in (0..k).rev() {
                x = self.canon.braid_apply(&x, letters[t], dir).map_err(|e| match e {
                    Error::Precondition(m) => Error::Corrupt(format!("root vector {}: {m}", k + 1)),
                    other => other,
                })?;
            }
            Ok(x)
        })
    }

    /// `f_ε(β_k)^{(c)}`.
    pub fn root_power(&self, k: usize, c: u32) -> Result<HalfElement> {
        let alg = self.canon.algebra();
        let r = self.root_vector(k)?;
        let mut x = alg.one();
        for _ in 0..c {
            x = alg.multiply(&x, r)?;
        }
        let d = self.canon.datum().d(self.word.letters()[k]);
        Ok(x.scale(&RatFunc::new(LaurentInt::one(), LaurentInt::q_factorial(c, d))?))
    }

    fn check_len(&self, c: &[u32]) -> Result<()> {
        if c.len() != self.len() {
            return Err(Error::Precondition(format!("exponent tuple has length {}, word has length {}", c.len(), self.len())));
        }
        Ok(())
    }

    /// PBW monomial, ordered left to right for `ε = +1` and right to left for `ε = −1`.
    pub fn pbw_monomial(&self, c: &[u32]) -> Result<HalfElement> {
        self.check_len(c)?;
        if let Some(x) = self.monomials.lock().expect("pbw cache poisoned").get(c) {
            return Ok(x.clone());
        }
        let alg = self.canon.algebra();
        let mut x = alg.one();
        let order: Vec<usize> = if self.epsilon == Sign::Plus { (0..self.len()).collect() } else { (0..self.len()).rev().collect() };
        for k in order {
            if c[k] > 0 {
                x = alg.multiply(&x, &self.root_power(k, c[k])?)?;
            }
        }
        self.monomials.lock().expect("pbw cache poisoned").insert(c.to_vec(), x.clone());
        Ok(x)
    }

    /// `(f_ε(c), f_ε(c))`.
    pub fn norm(&self, c: &[u32]) -> Result<RatFunc> {
        let x = self.pbw_monomial(c)?;
        self.canon.algebra().pair(&x, &x)
    }

    pub fn dual_pbw_monomial(&self, c: &[u32]) -> Result<HalfElement> {
        let x = self.pbw_monomial(c)?;
        let n = self.canon.algebra().pair(&x, &x)?;
        Ok(x.scale(&n.inv()?))
    }

    /// `b_ε(c)` through the crystal chain `f̃_{i₁}^{c₁} σ_{i₁} ⋯ f̃_{i_ℓ}^{c_ℓ} u∞` (starred mirror for `ε = −1`).
    pub fn crystal_label(&self, c: &[u32]) -> Result<Vertex> {
        self.check_len(c)?;
        self.nabla_unchecked(&Vertex::highest(), c)
    }

    /// `b_ε(c)` read off from the PBW monomial at `q = 0`, cross-checked against [`Self::crystal_label`].
    pub fn pbw_crystal_label(&self, c: &[u32]) -> Result<Vertex> {
        let x = self.pbw_monomial(c)?;
        let t = self.canon.table(x.weight())?;
        let mut hit = None;
        for (k, coef) in self.canon.low_coordinates(&x)?.iter().enumerate() {
            let r = coef.zero_regularity();
            let zero = r.residue.as_ref().is_some_and(num_traits::Zero::is_zero);
            let one = r.residue.as_ref().is_some_and(num_traits::One::is_one);
            if !r.regular || !(zero || one) || (one && hit.is_some()) {
                return Err(Error::Corrupt(format!("PBW monomial {c:?} has non-unit residue")));
            }
            if one {
                hit = Some(k);
            }
        }
        let k = hit.ok_or_else(|| Error::Corrupt(format!("PBW monomial {c:?} has zero residue")))?;
        let v = t.vertices()[k].clone();
        if v != self.crystal_label(c)? {
            return Err(Error::Corrupt(format!("PBW label of {c:?} disagrees with the crystal chain")));
        }
        Ok(v)
    }

    /// `L_ε(b, i)`.
    pub fn lusztig_datum(&self, b: &Vertex) -> LusztigDatum {
        let cr = self.canon.crystal();
        let mut cur = b.clone();
        let mut tuple = Vec::with_capacity(self.len());
        for &i in self.word.letters() {
            match self.epsilon {
                Sign::Plus => {
                    tuple.push(cr.eps(&cur, i));
                    cur = cr.sigma_hat_star(&cur, i);
                }
                Sign::Minus => {
                    tuple.push(cr.eps_star(&cur, i));
                    cur = cr.sigma_hat(&cur, i);
                }
            }
        }
        LusztigDatum { tuple, word: self.word.letters().to_vec(), epsilon: self.epsilon }
    }

    pub fn in_cofinite(&self, b: &Vertex) -> bool {
        self.lusztig_datum(b).tuple.iter().all(|&c| c == 0)
    }

    /// `τ_{≤w,ε}(b) = b_ε(L_ε(b))`.
    pub fn tau_le(&self, b: &Vertex) -> Result<Vertex> {
        self.crystal_label(&self.lusztig_datum(b).tuple)
    }

    /// `τ_{>w,ε}(b) = σ_{i₁}⋯σ_{i_ℓ} σ̂*_{i_ℓ}⋯σ̂*_{i₁}(b)` (starred mirror for `ε = −1`).
    pub fn tau_gt(&self, b: &Vertex) -> Result<Vertex> {
        let cr = self.canon.crystal();
        let letters = self.word.letters();
        let mut cur = b.clone();
        for &i in letters {
            cur = if self.epsilon == Sign::Plus { cr.sigma_hat_star(&cur, i) } else { cr.sigma_hat(&cur, i) };
        }
        for &i in letters.iter().rev() {
            cur = if self.epsilon == Sign::Plus { cr.sigma(&cur, i)? } else { cr.sigma_star(&cur, i)? };
        }
        Ok(cur)
    }

    fn nabla_unchecked(&self, b: &Vertex, c: &[u32]) -> Result<Vertex> {
        let cr = self.canon.crystal();
        let letters = self.word.letters();
        let mut cur = b.clone();
        for &i in letters {
            cur = if self.epsilon == Sign::Plus { cr.sigma_star(&cur, i)? } else { cr.sigma(&cur, i)? };
        }
        for (k, &i) in letters.iter().enumerate().rev() {
            cur = if self.epsilon == Sign::Plus {
                cr.f_pow(&cr.sigma(&cur, i)?, i, c[k])
            } else {
                cr.f_star_pow(&cr.sigma_star(&cur, i)?, i, c[k])
            };
        }
        Ok(cur)
    }

    /// `∇^c(b) = f̃_{i₁}^{c₁}σ_{i₁}⋯f̃_{i_ℓ}^{c_ℓ}σ_{i_ℓ}σ*_{i_ℓ}⋯σ*_{i₁}(b)` on `B(>w,ε)`.
    pub fn nabla(&self, b: &Vertex, c: &[u32]) -> Result<Vertex> {
        self.check_len(c)?;
        if !self.in_cofinite(b) {
            return Err(Error::Precondition(format!("∇ needs a vertex of B(>w,{}), got {:?}", self.epsilon, b.coords())));
        }
        self.nabla_unchecked(b, c)
    }

    /// Whether `G^up(b)` survives the kernel chain characterizing `U_q⁻(>w,ε)`.
    pub fn chain_status(&self, b: &Vertex) -> Result<ChainStatus> {
        let canon = self.canon;
        let alg = canon.algebra();
        let t = canon.table(&canon.crystal().weight(b))?;
        let mut y = t.up(t.index_of(b).ok_or_else(|| Error::Corrupt("vertex outside its table".into()))?).clone();
        let letters = self.word.letters();
        for (step, &i) in letters.iter().enumerate() {
            if y.weight().get(i) > 0 {
                let d = if self.epsilon == Sign::Plus { alg.ir(&y, i)? } else { alg.ri(&y, i)? };
                if !d.is_zero() {
                    return Ok(ChainStatus::Failed { step });
                }
            }
            if step + 1 == letters.len() {
                break;
            }
            let target = canon.datum().reflect_weight(i, y.weight()).ok_or_else(|| Error::Corrupt("reflection left Q₋".into()))?;
            if !alg.within_bound(&target) {
                return Ok(ChainStatus::Skipped);
            }
            let dir = if self.epsilon == Sign::Plus { Direction::Minus } else { Direction::Plus };
            y = canon.braid_apply(&y, i, dir)?;
        }
        Ok(ChainStatus::Survived)
    }

    /// `B(>w,ε)` at `nu` with the kernel-chain consistency check.
    pub fn cofinite_vertices(&self, nu: &Weight) -> Result<CofiniteVertices> {
        let mut out = CofiniteVertices { vertices: Vec::new(), skipped: 0, mismatches: Vec::new() };
        for b in self.canon.crystal().vertices(nu).iter() {
            let zero = self.in_cofinite(b);
            if zero {
                out.vertices.push(b.clone());
            }
            match self.chain_status(b)? {
                ChainStatus::Skipped => out.skipped += 1,
                ChainStatus::Survived if !zero => out.mismatches.push(b.clone()),
                ChainStatus::Failed { .. } if zero => out.mismatches.push(b.clone()),
                _ => {}
            }
        }
        Ok(out)
    }

    /// Exponent tuples of weight `nu`, in increasing lex order.
    pub fn tuples(&self, nu: &Weight) -> Vec<ExponentTuple> {
        tuples_of_weight(&self.word, nu)
    }

    /// Dual PBW monomials at `nu` expanded in `G^up`, checked for unitriangularity in lex order.
    pub fn transition_matrix(&self, nu: &Weight) -> Result<TransitionMatrix> {
        let tuples = self.tuples(nu);
        let t = self.canon.table(nu)?;
        let labels: Vec<Vertex> = tuples.iter().map(|c| self.crystal_label(c)).collect::<Result<_>>()?;
        let mut col_of: HashMap<usize, usize> = HashMap::new();
        for (k, v) in labels.iter().enumerate() {
            col_of.insert(t.index_of(v).ok_or_else(|| Error::Corrupt("label outside the table".into()))?, k);
        }
        let mut entries = vec![vec![RatFunc::zero(); tuples.len()]; tuples.len()];
        let mut witness = None;
        let mut positive = true;
        for (r, c) in tuples.iter().enumerate() {
            let coeffs = self.canon.up_coordinates(&self.dual_pbw_monomial(c)?)?;
            for (b, x) in coeffs.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let Some(&k) = col_of.get(&b) else {
                    witness.get_or_insert_with(|| format!("row {c:?} has support on a vertex outside the PBW labels"));
                    continue;
                };
                entries[r][k] = x.clone();
                if k == r {
                    if !x.is_one() {
                        witness.get_or_insert_with(|| format!("diagonal entry {x} at {c:?}"));
                    }
                } else if k > r || !x.in_q_zq() {
                    witness.get_or_insert_with(|| format!("entry {x} at row {c:?}, column {:?}", tuples[k]));
                } else if !x.has_nonnegative_coeffs() {
                    positive = false;
                }
            }
        }
        if labels.len() != t.len() && self.canon.datum().longest_word().map(|w| w.len()) == Some(self.len()) {
            witness.get_or_insert_with(|| format!("{} PBW labels but {} vertices at {nu}", labels.len(), t.len()));
        }
        Ok(TransitionMatrix { weight: nu.clone(), tuples, labels, entries, unitriangular: witness.is_none(), positive, witness })
    }
}

/// `T″_{i,1}(f_j) = Σ_{r+s=−a_ij} (−1)^r q_i^r f_i^{(r)} f_j f_i^{(s)}` evaluated in the word model.
pub fn t_double_prime_formula(canon: &CanonicalContext, i: usize, j: usize) -> Result<HalfElement> {
    let datum = canon.datum();
    let alg = canon.algebra();
    let m = u32::try_from(-datum.a(i, j)).map_err(|_| Error::Precondition("i and j must differ".into()))?;
    let nu = Weight::simple(datum.rank(), j).add_simple(i, m);
    let mut out = alg.zero(&nu)?;
    for r in 0..=m {
        let s = m - r;
        let x = alg.divided_monomial(&[(i, r), (j, 1), (i, s)])?;
        let c = LaurentInt::q_pow(datum.d(i) * i64::from(r));
        let c = if r % 2 == 1 { -c } else { c };
        out.add_scaled(&RatFunc::from(c), &x);
    }
    Ok(out)
}

/// Canonical basis at `nu` by the bar-invariance solve on the PBW basis of a longest word.
pub(crate) fn pbw_solve_table(canon: &CanonicalContext, nu: &Weight) -> Result<BasisTable> {
    let datum = canon.datum();
    let letters = datum.longest_word().ok_or_else(|| Error::Precondition("pbw_solve needs a datum of finite type".into()))?;
    let ctx = PbwContext::new(canon, &letters, Sign::Plus)?;
    let alg = canon.algebra();
    let tuples = ctx.tuples(nu);
    let n = tuples.len();
    let dim = alg.dim(nu)?;
    if n != dim {
        return Err(Error::Corrupt(format!("{n} PBW tuples but dimension {dim} at {nu}")));
    }
    let mons: Vec<HalfElement> = tuples.iter().map(|c| ctx.pbw_monomial(c)).collect::<Result<_>>()?;
    let f: Vec<Vec<RatFunc>> = (0..dim).map(|a| mons.iter().map(|m| m.coords()[a].clone()).collect()).collect();
    let bars: Vec<Vec<RatFunc>> = (0..dim).map(|a| mons.iter().map(|m| m.coords()[a].bar()).collect()).collect();
    let rho = solve(&f, &bars)?;
    let rho_l = |r: usize, c: usize| -> Result<LaurentInt> {
        rho[r][c].as_laurent().cloned().ok_or_else(|| Error::Corrupt(format!("bar expansion entry {} is not integral", rho[r][c])))
    };
    for (r, row) in rho.iter().enumerate().take(n) {
        for (c, v) in row.iter().enumerate().take(n) {
            if (r == c && !v.is_one()) || (r < c && !v.is_zero()) {
                return Err(Error::Corrupt(format!("bar expansion is not unitriangular at ({r},{c})")));
            }
        }
    }
    let mut low_by_label: HashMap<Vertex, HalfElement> = HashMap::new();
    for c in 0..n {
        let mut zeta: Vec<LaurentInt> = vec![LaurentInt::zero(); n];
        zeta[c] = LaurentInt::one();
        for r in c + 1..n {
            let mut rsum = LaurentInt::zero();
            for (k, z) in zeta.iter().enumerate().take(r).skip(c) {
                if !z.is_zero() {
                    rsum += &(&z.bar() * &rho_l(r, k)?);
                }
            }
            if !(&rsum + &rsum.bar()).is_zero() {
                return Err(Error::Corrupt(format!("bar-invariance system inconsistent at ({r},{c})")));
            }
            zeta[r] = LaurentInt::from_terms(rsum.terms().filter(|(e, _)| *e > 0).map(|(e, k)| (e, k.clone())));
        }
        let mut g = alg.zero(nu)?;
        for (k, z) in zeta.iter().enumerate() {
            g.add_scaled(&RatFunc::from(z.clone()), &mons[k]);
        }
        low_by_label.insert(ctx.crystal_label(&tuples[c])?, g);
    }
    let vertices = canon.crystal().vertices(nu);
    let low: Vec<HalfElement> = vertices
        .iter()
        .map(|v| low_by_label.remove(v).ok_or_else(|| Error::Corrupt(format!("vertex {:?} is not a PBW label", v.coords()))))
        .collect::<Result<_>>()?;
    canon.table_from_columns(nu, low)
}
