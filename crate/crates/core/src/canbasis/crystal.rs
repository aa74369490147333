//! `B(∞)` through Kashiwara embeddings into `⋯ ⊗ B_{i_2} ⊗ B_{i_1}` along
//! the cyclic sequences `ι^{(j)} = (j, j+1, …, j−1, j, …)`.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::memo::MemoTable;
use crate::rootdata::{RootDatum, Weight};

const NEG_INF: i64 = i64::MIN / 4;

/// A vertex of `B(∞)`, identified by its string coordinates along `ι^{(0)}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Vertex(Vec<u32>);

impl Vertex {
    pub fn highest() -> Self {
        Vertex(Vec::new())
    }

    pub fn is_highest(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }
}

fn trim(x: &mut Vec<u32>) {
    while x.last() == Some(&0) {
        x.pop();
    }
}

pub struct Crystal {
    datum: RootDatum,
    to_seq: Mutex<HashMap<(usize, Vertex), Vec<u32>>>,
    by_weight: MemoTable<Weight, Vec<Vertex>>,
}

impl Crystal {
    pub fn new(datum: RootDatum) -> Self {
        Crystal { datum, to_seq: Mutex::new(HashMap::new()), by_weight: MemoTable::new() }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    fn letter(&self, j: usize, k: usize) -> usize {
        (j + k) % self.datum.rank()
    }

    /// `Φ[m] = φ_i(u∞ ⊗ F_N ⊗ ⋯ ⊗ F_m)` with `Φ[N] = 0`.
    fn phi_prefix(&self, j: usize, x: &[u32], i: usize) -> Vec<i64> {
        let n = x.len();
        let mut phi = vec![0i64; n + 1];
        for m in (0..n).rev() {
            let im = self.letter(j, m);
            let own = if im == i { -i64::from(x[m]) } else { NEG_INF };
            phi[m] = own.max(phi[m + 1] - i64::from(x[m]) * self.datum.a(i, im));
        }
        phi
    }

    fn f_seq(&self, j: usize, x: &mut Vec<u32>, i: usize) {
        let phi = self.phi_prefix(j, x, i);
        for k in 0..x.len() {
            if self.letter(j, k) == i && phi[k + 1] <= i64::from(x[k]) {
                x[k] += 1;
                return;
            }
        }
        let mut k = x.len();
        while self.letter(j, k) != i {
            k += 1;
        }
        x.resize(k + 1, 0);
        x[k] = 1;
    }

    fn e_seq(&self, j: usize, x: &mut Vec<u32>, i: usize) -> bool {
        let phi = self.phi_prefix(j, x, i);
        for k in 0..x.len() {
            if self.letter(j, k) == i && phi[k + 1] < i64::from(x[k]) {
                x[k] -= 1;
                trim(x);
                return true;
            }
        }
        false
    }

    fn eps_seq(&self, j: usize, x: &[u32], i: usize) -> u32 {
        let phi = self.phi_prefix(j, x, i);
        let pair: i64 = x.iter().enumerate().map(|(k, &c)| i64::from(c) * self.datum.a(i, self.letter(j, k))).sum();
        u32::try_from(phi[0] + pair).expect("ε is nonnegative on B(∞)")
    }

    /// Letters `i₁, i₂, …` with `x = f̃_{i_k} ⋯ f̃_{i₁} u∞`, along sequence `j`.
    fn path_seq(&self, j: usize, x: &[u32]) -> Vec<usize> {
        let mut x = x.to_vec();
        let mut out = Vec::new();
        while !x.is_empty() {
            let i = (0..self.datum.rank()).find(|&i| self.eps_seq(j, &x, i) > 0).expect("a nonhighest vertex has some ε_i > 0");
            self.e_seq(j, &mut x, i);
            out.push(i);
        }
        out.reverse();
        out
    }

    fn replay(&self, j: usize, path: &[usize]) -> Vec<u32> {
        let mut x = Vec::new();
        for &i in path {
            self.f_seq(j, &mut x, i);
        }
        x
    }

    fn coords_in(&self, j: usize, v: &Vertex) -> Vec<u32> {
        if j == 0 {
            return v.0.clone();
        }
        let key = (j, v.clone());
        if let Some(x) = self.to_seq.lock().expect("crystal cache poisoned").get(&key) {
            return x.clone();
        }
        let x = self.replay(j, &self.path_seq(0, &v.0));
        self.to_seq.lock().expect("crystal cache poisoned").insert(key, x.clone());
        x
    }

    fn vertex_of_seq(&self, j: usize, x: &[u32]) -> Vertex {
        if j == 0 {
            return Vertex(x.to_vec());
        }
        let v = Vertex(self.replay(0, &self.path_seq(j, x)));
        self.to_seq.lock().expect("crystal cache poisoned").insert((j, v.clone()), x.to_vec());
        v
    }

    pub fn weight(&self, v: &Vertex) -> Weight {
        let mut w = Weight::zero(self.datum.rank());
        for (k, &c) in v.0.iter().enumerate() {
            w.0[self.letter(0, k)] += c;
        }
        w
    }

    pub fn f(&self, v: &Vertex, i: usize) -> Vertex {
        let mut x = v.0.clone();
        self.f_seq(0, &mut x, i);
        Vertex(x)
    }

    pub fn e(&self, v: &Vertex, i: usize) -> Option<Vertex> {
        let mut x = v.0.clone();
        self.e_seq(0, &mut x, i).then_some(Vertex(x))
    }

    pub fn eps(&self, v: &Vertex, i: usize) -> u32 {
        self.eps_seq(0, &v.0, i)
    }

    /// `φ_i(b) = ε_i(b) + ⟨h_i, wt b⟩`.
    pub fn phi(&self, v: &Vertex, i: usize) -> i64 {
        i64::from(self.eps(v, i)) + self.datum.weight_pairing(i, &self.weight(v))
    }

    pub fn eps_star(&self, v: &Vertex, i: usize) -> u32 {
        self.coords_in(i, v).first().copied().unwrap_or(0)
    }

    pub fn phi_star(&self, v: &Vertex, i: usize) -> i64 {
        i64::from(self.eps_star(v, i)) + self.datum.weight_pairing(i, &self.weight(v))
    }

    pub fn f_star(&self, v: &Vertex, i: usize) -> Vertex {
        let mut x = self.coords_in(i, v);
        if x.is_empty() {
            x.push(0);
        }
        x[0] += 1;
        self.vertex_of_seq(i, &x)
    }

    pub fn e_star(&self, v: &Vertex, i: usize) -> Option<Vertex> {
        let mut x = self.coords_in(i, v);
        if x.first().copied().unwrap_or(0) == 0 {
            return None;
        }
        x[0] -= 1;
        trim(&mut x);
        Some(self.vertex_of_seq(i, &x))
    }

    pub fn f_pow(&self, v: &Vertex, i: usize, n: u32) -> Vertex {
        (0..n).fold(v.clone(), |b, _| self.f(&b, i))
    }

    pub fn f_star_pow(&self, v: &Vertex, i: usize, n: u32) -> Vertex {
        (0..n).fold(v.clone(), |b, _| self.f_star(&b, i))
    }

    /// `ẽ_i^{ε_i(b)} b`.
    pub fn e_max(&self, v: &Vertex, i: usize) -> Vertex {
        let mut b = v.clone();
        while let Some(n) = self.e(&b, i) {
            b = n;
        }
        b
    }

    pub fn e_star_max(&self, v: &Vertex, i: usize) -> Vertex {
        let mut b = v.clone();
        while let Some(n) = self.e_star(&b, i) {
            b = n;
        }
        b
    }

    /// The star involution `b ↦ b*`.
    pub fn star(&self, v: &Vertex) -> Vertex {
        let path = self.path_seq(0, &v.0);
        let mut b = Vertex::highest();
        for &i in &path {
            b = self.f_star(&b, i);
        }
        b
    }

    /// `f̃_{i_k}⋯f̃_{i_1} u∞` for the letters `i_1, …, i_k` returned in order.
    pub fn path(&self, v: &Vertex) -> Vec<usize> {
        self.path_seq(0, &v.0)
    }

    /// Vertices of weight `nu`, ordered by first appearance over `i` ascending,
    /// `c` descending and `b₀ ∈ B(ν − cα_i)` with `ε_i(b₀) = 0` in its own order.
    pub fn vertices(&self, nu: &Weight) -> std::sync::Arc<Vec<Vertex>> {
        self.by_weight
            .get_or_try_init(nu, || {
                if nu.is_zero() {
                    return Ok(vec![Vertex::highest()]);
                }
                let mut out: Vec<Vertex> = Vec::new();
                let mut seen = std::collections::HashSet::new();
                for i in 0..self.datum.rank() {
                    for c in (1..=nu.get(i)).rev() {
                        let lower = nu.sub_simple(i, c).expect("c ≤ ν_i");
                        for b0 in self.vertices(&lower).iter() {
                            if self.eps(b0, i) == 0 {
                                let b = self.f_pow(b0, i, c);
                                if seen.insert(b.clone()) {
                                    out.push(b);
                                }
                            }
                        }
                    }
                }
                Ok(out)
            })
            .expect("vertex enumeration is infallible")
    }

    /// `σ_i(b) = f̃_i^{*φ_i(b)} ẽ_i^{ε_i(b)} b` on `{ε_i* = 0}`.
    pub fn sigma(&self, v: &Vertex, i: usize) -> Result<Vertex> {
        if self.eps_star(v, i) != 0 {
            return Err(Error::Precondition(format!("σ_{} needs ε*_{} = 0", self.datum.label(i), self.datum.label(i))));
        }
        let phi = self.phi(v, i);
        let n = u32::try_from(phi).map_err(|_| Error::Corrupt(format!("negative φ_{} = {phi}", self.datum.label(i))))?;
        Ok(self.f_star_pow(&self.e_max(v, i), i, n))
    }

    /// `σ_i*(b) = f̃_i^{φ_i*(b)} ẽ_i^{*ε_i*(b)} b` on `{ε_i = 0}`.
    pub fn sigma_star(&self, v: &Vertex, i: usize) -> Result<Vertex> {
        if self.eps(v, i) != 0 {
            return Err(Error::Precondition(format!("σ*_{} needs ε_{} = 0", self.datum.label(i), self.datum.label(i))));
        }
        let phi = self.phi_star(v, i);
        let n = u32::try_from(phi).map_err(|_| Error::Corrupt(format!("negative φ*_{} = {phi}", self.datum.label(i))))?;
        Ok(self.f_pow(&self.e_star_max(v, i), i, n))
    }

    /// `σ̂_i(b) = σ_i(ẽ_i^{*max} b)`.
    pub fn sigma_hat(&self, v: &Vertex, i: usize) -> Vertex {
        self.sigma(&self.e_star_max(v, i), i).expect("ε* vanishes after stripping")
    }

    /// `σ̂_i*(b) = σ_i*(ẽ_i^{max} b)`.
    pub fn sigma_hat_star(&self, v: &Vertex, i: usize) -> Vertex {
        self.sigma_star(&self.e_max(v, i), i).expect("ε vanishes after stripping")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Crystal {
        Crystal::new(RootDatum::named("A2").unwrap())
    }

    #[test]
    fn a2_low_weights() {
        let c = a2();
        let u = Vertex::highest();
        let b1 = c.f(&u, 0);
        let b2 = c.f(&u, 1);
        let b12 = c.f(&b2, 0);
        let b21 = c.f(&b1, 1);
        assert_eq!(b12.coords(), &[0, 1, 1]);
        assert_eq!(b21.coords(), &[1, 1]);
        assert_eq!((c.eps(&b12, 0), c.eps(&b12, 1), c.eps_star(&b12, 0), c.eps_star(&b12, 1)), (1, 0, 0, 1));
        assert_eq!(c.e(&b21, 0), None);
        assert_eq!(*c.vertices(&Weight(vec![1, 1])), vec![b12.clone(), b21.clone()]);
        assert_eq!(c.sigma(&b2, 0).unwrap(), b21);
        assert_eq!(c.sigma_star(&b21, 0).unwrap(), b2);
        assert_eq!(c.sigma_hat_star(&b12, 0), b12);
        assert_eq!(c.star(&b12), b21);
    }

    #[test]
    fn counts_match_kostant_partitions() {
        let cases = [("A2", vec![2, 2], 3), ("B2", vec![1, 2], 3), ("G2", vec![1, 3], 4), ("A3", vec![1, 1, 1], 4), ("A1", vec![5], 1)];
        for (t, nu, n) in cases {
            let c = Crystal::new(RootDatum::named(t).unwrap());
            assert_eq!(c.vertices(&Weight(nu.clone())).len(), n, "{t} {nu:?}");
        }
        let aff = Crystal::new(RootDatum::named("A1(1)").unwrap());
        assert_eq!(aff.vertices(&Weight(vec![1, 1])).len(), 2);
        assert_eq!(aff.vertices(&Weight(vec![2, 2])).len(), 6);
    }

    #[test]
    fn star_is_an_involution_compatible_with_operators() {
        for t in ["A2", "B2", "G2", "A1(1)"] {
            let c = Crystal::new(RootDatum::named(t).unwrap());
            for nu in Weight::all_up_to_height(2, 4) {
                for b in c.vertices(&nu).iter() {
                    let s = c.star(b);
                    assert_eq!(c.star(&s), *b);
                    assert_eq!(c.weight(&s), nu);
                    for i in 0..2 {
                        assert_eq!(c.eps_star(b, i), c.eps(&s, i));
                        assert_eq!(c.star(&c.f(&s, i)), c.f_star(b, i));
                        assert_eq!(c.e(&c.f(b, i), i).as_ref(), Some(b));
                        assert_eq!(c.e_star(&c.f_star(b, i), i).as_ref(), Some(b));
                    }
                }
            }
        }
    }
}
