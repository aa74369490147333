use std::collections::HashMap;

use once_cell::sync::OnceCell;

use crate::error::Result;
use crate::rootdata::{RootDatum, Weight};
use crate::scalars::matrix::solve_fraction_free;
use crate::scalars::{poly, LaurentInt, ModEchelon, RatFunc};

const EVAL_POINT: u64 = 0x2545_F491_4F6C_DD1D;

/// One weight space of `U_q⁻`: all words of the weight, their Gram matrix,
/// and the lexicographically greedy pivot basis of the quotient.
pub struct WordBasis {
    weight: Weight,
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    gram: Vec<Vec<LaurentInt>>,
    pivots: Vec<usize>,
    pivot_gram: Vec<Vec<LaurentInt>>,
    word_coords: Vec<Vec<RatFunc>>,
    pivot_gram_inverse: OnceCell<Vec<Vec<RatFunc>>>,
    pub(super) ir_maps: Vec<OnceCell<Vec<Vec<RatFunc>>>>,
    pub(super) ri_maps: Vec<OnceCell<Vec<Vec<RatFunc>>>>,
    pub(super) star_map: OnceCell<Vec<Vec<RatFunc>>>,
}

/// All words of weight `nu`, lexicographic in letter indices.
pub fn words_of_weight(nu: &Weight) -> Vec<Vec<usize>> {
    fn rec(left: &mut Vec<u32>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i);
                rec(left, cur, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut nu.0.clone(), &mut Vec::new(), &mut out);
    out
}

impl WordBasis {
    pub(super) fn trivial(rank: usize) -> Self {
        let words = vec![Vec::new()];
        Self::assemble(Weight::zero(rank), words, vec![vec![LaurentInt::one()]], rank)
    }

    /// Builds the space at `nu` from the spaces at `nu − α_a` for each first letter `a`.
    pub(super) fn build(datum: &RootDatum, nu: &Weight, lower: &dyn Fn(usize) -> Result<std::sync::Arc<WordBasis>>) -> Result<Self> {
        let words = words_of_weight(nu);
        let rank = datum.rank();
        let mut lowers = Vec::with_capacity(rank);
        for a in 0..rank {
            lowers.push(if nu.get(a) > 0 { Some(lower(a)?) } else { None });
        }
        let n = words.len();
        let mut gram = vec![vec![LaurentInt::zero(); n]; n];
        // removal[a][u] lists (position exponent, index of u with that position removed) in the space at ν − α_a
        let mut removal: Vec<Vec<Vec<(i64, usize)>>> = vec![Vec::new(); rank];
        for a in 0..rank {
            let Some(low) = &lowers[a] else { continue };
            removal[a] = words
                .iter()
                .map(|u| {
                    let mut out = Vec::new();
                    let mut e = 0i64;
                    for (p, &l) in u.iter().enumerate() {
                        if l == a {
                            let mut rest = u.clone();
                            rest.remove(p);
                            out.push((e, low.index_of(&rest).expect("lower word exists")));
                        }
                        e -= datum.pair(l, a);
                    }
                    out
                })
                .collect();
        }
        for (wi, w) in words.iter().enumerate() {
            let a = w[0];
            let low = lowers[a].as_ref().expect("first letter has positive weight");
            let rw = low.index_of(&w[1..]).expect("tail exists");
            for (ui, rem) in removal[a].iter().enumerate() {
                let mut acc = LaurentInt::zero();
                for &(e, ri) in rem {
                    let g = &low.gram[rw][ri];
                    if !g.is_zero() {
                        acc += &g.shift(e);
                    }
                }
                gram[wi][ui] = acc;
            }
        }
        Ok(Self::assemble(nu.clone(), words, gram, rank))
    }

    fn assemble(weight: Weight, words: Vec<Vec<usize>>, gram: Vec<Vec<LaurentInt>>, rank: usize) -> Self {
        let p = poly::primes()[0];
        let t = EVAL_POINT % p;
        let mut ech = ModEchelon::new(p);
        let mut pivots = Vec::new();
        for (k, row) in gram.iter().enumerate() {
            if ech.insert(row.iter().map(|g| g.eval_mod(t, p)).collect()) {
                pivots.push(k);
            }
        }
        let pivot_gram: Vec<Vec<LaurentInt>> = pivots.iter().map(|&a| pivots.iter().map(|&b| gram[a][b].clone()).collect()).collect();
        let rhs: Vec<Vec<LaurentInt>> = pivots.iter().map(|&a| gram[a].clone()).collect();
        let dim = pivots.len();
        let mut word_coords = vec![vec![RatFunc::zero(); dim]; words.len()];
        if dim > 0 {
            let (x, det) = solve_fraction_free(&pivot_gram, &rhs).expect("greedy pivots give a nonsingular block");
            for (w, coords) in word_coords.iter_mut().enumerate() {
                if let Some(b) = pivots.iter().position(|&pv| pv == w) {
                    coords[b] = RatFunc::one();
                    continue;
                }
                for (a, c) in coords.iter_mut().enumerate() {
                    if !x[a][w].is_zero() {
                        *c = RatFunc::new(x[a][w].clone(), det.clone()).expect("nonzero determinant");
                    }
                }
            }
        }
        let index = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        WordBasis {
            weight,
            words,
            index,
            gram,
            pivots,
            pivot_gram,
            word_coords,
            pivot_gram_inverse: OnceCell::new(),
            ir_maps: (0..rank).map(|_| OnceCell::new()).collect(),
            ri_maps: (0..rank).map(|_| OnceCell::new()).collect(),
            star_map: OnceCell::new(),
        }
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn index_of(&self, word: &[usize]) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Gram matrix of the form on all words.
    pub fn gram(&self) -> &[Vec<LaurentInt>] {
        &self.gram
    }

    /// Indices into [`Self::words`] of the pivot words.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn pivot_word(&self, a: usize) -> &[usize] {
        &self.words[self.pivots[a]]
    }

    pub fn pivot_gram(&self) -> &[Vec<LaurentInt>] {
        &self.pivot_gram
    }

    pub fn pivot_gram_inverse(&self) -> &[Vec<RatFunc>] {
        self.pivot_gram_inverse.get_or_init(|| {
            let n = self.dim();
            let id: Vec<Vec<LaurentInt>> = (0..n).map(|i| (0..n).map(|j| LaurentInt::from_int(i64::from(i == j))).collect()).collect();
            let (x, det) = solve_fraction_free(&self.pivot_gram, &id).expect("pivot Gram block is nonsingular");
            x.into_iter().map(|r| r.into_iter().map(|v| RatFunc::new(v, det.clone()).expect("nonzero determinant")).collect()).collect()
        })
    }

    /// Pivot coordinates of the word with index `w`.
    pub fn word_coords(&self, w: usize) -> &[RatFunc] {
        &self.word_coords[w]
    }

    /// Pivot coordinates of an arbitrary word of this weight.
    pub fn coords_of(&self, word: &[usize]) -> Option<&[RatFunc]> {
        self.index_of(word).map(|w| self.word_coords(w))
    }
}
