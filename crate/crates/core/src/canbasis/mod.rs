//! Canonical and dual canonical bases per weight, the crystal `B(∞)` with
//! its star structure, Saito reflections and the braid action on dual
//! canonical coordinates.

mod certificate;
mod crystal;

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::halfalg::{Algebra, HalfElement};
use crate::memo::MemoTable;
use crate::rootdata::{RootDatum, Weight};
use crate::scalars::matrix::{dot, inverse, solve};
use crate::scalars::{symmetrize_residual, LaurentInt, RatFunc};

pub use certificate::{q_binomial, Certificate};
pub use crystal::{Crystal, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    PbwSolve,
    Induction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrystalOp {
    E,
    F,
    EStar,
    FStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SaitoVariant {
    Sigma,
    SigmaStar,
    SigmaHat,
    SigmaHatStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Plus,
    Minus,
}

/// Vertex of `B(∞)` located in its weight's table together with its string data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalVertex {
    pub vertex: Vertex,
    pub weight: Weight,
    pub index: usize,
    pub eps: Vec<u32>,
    pub eps_star: Vec<u32>,
}

impl CrystalVertex {
    pub fn phi(&self, datum: &RootDatum, i: usize) -> i64 {
        i64::from(self.eps[i]) + datum.weight_pairing(i, &self.weight)
    }

    pub fn phi_star(&self, datum: &RootDatum, i: usize) -> i64 {
        i64::from(self.eps_star[i]) + datum.weight_pairing(i, &self.weight)
    }
}

/// `G^low` and `G^up` at one weight in pivot coordinates, aligned with crystal vertices.
pub struct BasisTable {
    weight: Weight,
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    low: Vec<HalfElement>,
    up: Vec<HalfElement>,
    certificates: Vec<Certificate>,
}

impl BasisTable {
    fn assemble(alg: &Algebra, weight: Weight, vertices: Vec<Vertex>, low: Vec<HalfElement>, certificates: Vec<Certificate>) -> Result<Self> {
        let up = dual_columns(alg, &weight, &low)?;
        let index = vertices.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        Ok(BasisTable { weight, vertices, index, low, up, certificates })
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn low(&self, k: usize) -> &HalfElement {
        &self.low[k]
    }

    pub fn up(&self, k: usize) -> &HalfElement {
        &self.up[k]
    }

    pub fn lows(&self) -> &[HalfElement] {
        &self.low
    }

    pub fn ups(&self) -> &[HalfElement] {
        &self.up
    }

    /// Integral-form witnesses for the `G^low` columns, empty when not tracked.
    pub fn certificates(&self) -> &[Certificate] {
        &self.certificates
    }

    fn locate(&self, v: &Vertex) -> Result<usize> {
        self.index_of(v).ok_or_else(|| Error::Corrupt(format!("vertex {:?} missing from the table at {}", v.coords(), self.weight)))
    }
}

/// Columns `u_b` with `(u_b, low_{b'}) = δ_{bb'}`.
fn dual_columns(alg: &Algebra, weight: &Weight, low: &[HalfElement]) -> Result<Vec<HalfElement>> {
    let n = low.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let pl: Vec<Vec<RatFunc>> = low.iter().map(|x| alg.pivot_pairings(x)).collect::<Result<_>>()?;
    // pl[b] is row b of (P L)^T; the dual columns are the rows of its inverse transpose
    let plt: Vec<Vec<RatFunc>> = (0..n).map(|a| (0..n).map(|b| pl[b][a].clone()).collect()).collect();
    let inv = inverse(&plt).map_err(|_| Error::Corrupt(format!("G^low columns at {weight} are linearly dependent")))?;
    (0..n).map(|b| alg.element(weight, inv[b].clone())).collect()
}

/// `U_q⁻` with its crystal and the memoized canonical tables.
pub struct CanonicalContext {
    alg: Algebra,
    crystal: Crystal,
    tables: MemoTable<Weight, BasisTable>,
}

impl CanonicalContext {
    pub fn new(datum: RootDatum, max_height: u32) -> Self {
        CanonicalContext { crystal: Crystal::new(datum.clone()), alg: Algebra::new(datum, max_height), tables: MemoTable::new() }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn crystal(&self) -> &Crystal {
        &self.crystal
    }

    pub fn datum(&self) -> &RootDatum {
        self.alg.datum()
    }

    /// Induction table at `nu`, memoized.
    pub fn table(&self, nu: &Weight) -> Result<Arc<BasisTable>> {
        if !self.alg.within_bound(nu) {
            return Err(Error::HeightExceeded { height: nu.height(), bound: self.alg.max_height() });
        }
        self.tables.get_or_try_init(nu, || self.build_by_induction(nu))
    }

    pub fn canonical_table(&self, nu: &Weight, strategy: Strategy) -> Result<Arc<BasisTable>> {
        match strategy {
            Strategy::Induction => self.table(nu),
            Strategy::PbwSolve => crate::pbw::pbw_solve_table(self, nu).map(Arc::new),
        }
    }

    pub(crate) fn table_from_columns(&self, nu: &Weight, low: Vec<HalfElement>) -> Result<BasisTable> {
        let vertices = self.crystal.vertices(nu).as_ref().clone();
        BasisTable::assemble(&self.alg, nu.clone(), vertices, low, Vec::new())
    }

    fn build_by_induction(&self, nu: &Weight) -> Result<BasisTable> {
        let alg = &self.alg;
        let cr = &self.crystal;
        let vertices = cr.vertices(nu).as_ref().clone();
        let dim = alg.dim(nu)?;
        if dim != vertices.len() {
            return Err(Error::Corrupt(format!("dimension {dim} at {nu} differs from crystal count {}", vertices.len())));
        }
        if nu.is_zero() {
            return BasisTable::assemble(alg, nu.clone(), vertices, vec![alg.one()], vec![Certificate::unit()]);
        }
        let rank = alg.rank();
        let n = vertices.len();
        let eps: Vec<Vec<u32>> = vertices.iter().map(|b| (0..rank).map(|i| cr.eps(b, i)).collect()).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| (std::cmp::Reverse(*eps[k].iter().max().expect("rank ≥ 1")), k));

        let mut low: Vec<Option<HalfElement>> = vec![None; n];
        let mut pp: Vec<Option<Vec<RatFunc>>> = vec![None; n];
        let mut certs: Vec<Certificate> = vec![Certificate::default(); n];
        let cap = 4 * n;
        for &k in &order {
            let c = *eps[k].iter().max().expect("rank ≥ 1");
            let i = eps[k].iter().position(|&e| e == c).expect("maximum is attained");
            let b0 = cr.e_max(&vertices[k], i);
            let t0 = self.table(&nu.sub_simple(i, c).expect("c = ε_i ≤ ν_i"))?;
            let k0 = t0.locate(&b0)?;
            let mut e = alg.multiply(&alg.divided_power(i, c)?, t0.low(k0))?;
            let mut cert = t0.certificates[k0].prefixed(alg.datum(), i, c);
            let known: Vec<usize> = (0..n).filter(|&b| eps[b][i] > c).collect();
            if !known.is_empty() {
                let m: Vec<Vec<RatFunc>> = known
                    .iter()
                    .map(|&a| known.iter().map(|&b| dot(pp[a].as_ref().expect("processed"), low[b].as_ref().expect("processed").coords())).collect())
                    .collect();
                let mut converged = false;
                for _ in 0..cap {
                    let pe = alg.pivot_pairings(&e)?;
                    let v: Vec<Vec<RatFunc>> = known.iter().map(|&b| vec![dot(&pe, low[b].as_ref().expect("processed").coords())]).collect();
                    let u = solve(&m, &v)?;
                    if u.iter().all(|r| r[0].in_q_a0()) {
                        converged = true;
                        break;
                    }
                    for (row, &b) in u.iter().zip(&known) {
                        let s = symmetrize_residual(&row[0].integral_series_upto(0)?);
                        if !s.is_zero() {
                            e.add_scaled(&RatFunc::from(-&s), low[b].as_ref().expect("processed"));
                            cert.sub_scaled(&s, &certs[b]);
                        }
                    }
                }
                if !converged {
                    return Err(Error::Corrupt(format!("correction loop at {nu} exceeded {cap} iterations")));
                }
            }
            pp[k] = Some(alg.pivot_pairings(&e)?);
            low[k] = Some(e);
            certs[k] = cert;
        }
        let low: Vec<HalfElement> = low.into_iter().map(|x| x.expect("every vertex processed")).collect();
        BasisTable::assemble(alg, nu.clone(), vertices, low, certs)
    }

    pub fn vertex_info(&self, v: &Vertex) -> Result<CrystalVertex> {
        let weight = self.crystal.weight(v);
        let index = self
            .crystal
            .vertices(&weight)
            .iter()
            .position(|b| b == v)
            .ok_or_else(|| Error::Corrupt(format!("vertex {:?} not enumerated", v.coords())))?;
        let r = self.alg.rank();
        Ok(CrystalVertex {
            vertex: v.clone(),
            weight,
            index,
            eps: (0..r).map(|i| self.crystal.eps(v, i)).collect(),
            eps_star: (0..r).map(|i| self.crystal.eps_star(v, i)).collect(),
        })
    }

    /// Combinatorial crystal operators; `None` is the null vertex.
    pub fn crystal_op(&self, v: &Vertex, i: usize, kind: CrystalOp) -> Option<Vertex> {
        match kind {
            CrystalOp::E => self.crystal.e(v, i),
            CrystalOp::F => Some(self.crystal.f(v, i)),
            CrystalOp::EStar => self.crystal.e_star(v, i),
            CrystalOp::FStar => Some(self.crystal.f_star(v, i)),
        }
    }

    /// Coefficients of `x` on the `G^low` basis of its weight.
    pub fn low_coordinates(&self, x: &HalfElement) -> Result<Vec<RatFunc>> {
        let t = self.table(x.weight())?;
        let px = self.alg.pivot_pairings(x)?;
        Ok(t.ups().iter().map(|u| dot(&px, u.coords())).collect())
    }

    /// Coefficients of `x` on the `G^up` basis of its weight.
    pub fn up_coordinates(&self, x: &HalfElement) -> Result<Vec<RatFunc>> {
        let t = self.table(x.weight())?;
        let px = self.alg.pivot_pairings(x)?;
        Ok(t.lows().iter().map(|l| dot(&px, l.coords())).collect())
    }

    /// Crystal operator read off from Kashiwara operators on `G^low(b)` at `q = 0`.
    pub fn crystal_op_by_residue(&self, v: &Vertex, i: usize, kind: CrystalOp) -> Result<Option<Vertex>> {
        let alg = &self.alg;
        let t = self.table(&self.crystal.weight(v))?;
        let g = t.low(t.locate(v)?);
        let starred = matches!(kind, CrystalOp::EStar | CrystalOp::FStar);
        let x = if starred { alg.star(g)? } else { g.clone() };
        let y = match kind {
            CrystalOp::F | CrystalOp::FStar => alg.kashiwara_f(&x, i)?,
            CrystalOp::E | CrystalOp::EStar => match alg.kashiwara_e(&x, i)? {
                Some(y) => y,
                None => return Ok(None),
            },
        };
        let y = if starred { alg.star(&y)? } else { y };
        let t2 = self.table(y.weight())?;
        let mut hit = None;
        for (k, c) in self.low_coordinates(&y)?.iter().enumerate() {
            let r = c.zero_regularity();
            if !r.regular {
                return Err(Error::Corrupt(format!("coefficient {c} on vertex {k} at {} is not regular at q = 0", y.weight())));
            }
            match r.residue {
                Some(z) if num_traits::Zero::is_zero(&z) => {}
                Some(z) if num_traits::One::is_one(&z) && hit.is_none() => hit = Some(k),
                _ => return Err(Error::Corrupt(format!("residue at {} is not a single crystal vertex", y.weight()))),
            }
        }
        match (hit, kind) {
            (Some(k), _) => Ok(Some(t2.vertices()[k].clone())),
            (None, CrystalOp::E | CrystalOp::EStar) => Ok(None),
            (None, _) => Err(Error::Corrupt(format!("f̃ image at {} has zero residue", y.weight()))),
        }
    }

    pub fn saito(&self, v: &Vertex, i: usize, variant: SaitoVariant) -> Result<Vertex> {
        match variant {
            SaitoVariant::Sigma => self.crystal.sigma(v, i),
            SaitoVariant::SigmaStar => self.crystal.sigma_star(v, i),
            SaitoVariant::SigmaHat => Ok(self.crystal.sigma_hat(v, i)),
            SaitoVariant::SigmaHatStar => Ok(self.crystal.sigma_hat_star(v, i)),
        }
    }

    /// `G^up(b) ↦ (1 − q_i²)^{⟨h_i, wt b⟩} G^up(σ_i b)` (plus) or with `σ_i*` (minus).
    pub fn braid_apply(&self, x: &HalfElement, i: usize, direction: Direction) -> Result<HalfElement> {
        let datum = self.datum();
        let nu = x.weight();
        let t = self.table(nu)?;
        let coeffs = self.up_coordinates(x)?;
        let target = datum
            .reflect_weight(i, nu)
            .ok_or_else(|| Error::Precondition(format!("s_{} moves {nu} out of Q₋", datum.label(i))))?;
        let mut out = self.alg.zero(&target)?;
        if coeffs.iter().all(RatFunc::is_zero) {
            return Ok(out);
        }
        let t2 = self.table(&target)?;
        let base = RatFunc::from(&LaurentInt::one() - &LaurentInt::q_pow(2 * datum.d(i)));
        let scalar = base.pow(datum.weight_pairing(i, nu))?;
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = &t.vertices()[k];
            let image = match direction {
                Direction::Plus => self.crystal.sigma(b, i),
                Direction::Minus => self.crystal.sigma_star(b, i),
            }
            .map_err(|_| {
                let side = if direction == Direction::Plus { "ker r_i" } else { "ker ᵢr" };
                Error::Precondition(format!("braid_apply: component on vertex {k} at {nu} lies outside {side} for i = {}", datum.label(i)))
            })?;
            out.add_scaled(&(c * &scalar), t2.up(t2.locate(&image)?));
        }
        Ok(out)
    }
}
