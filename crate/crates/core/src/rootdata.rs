//! Symmetrizable Cartan data, simple reflections on the root lattice and
//! roots along reduced words.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Validated symmetrizable generalized Cartan matrix with symmetrizers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    name: String,
    labels: Vec<String>,
    gcm: Vec<Vec<i64>>,
    d: Vec<i64>,
    form: Vec<Vec<i64>>,
    finite: bool,
}

/// On-disk form of a datum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatumConfig {
    pub gcm: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub name: Option<String>,
}

/// Names accepted by [`RootDatum::named`].
pub const NAMED_TYPES: [&str; 6] = ["A1", "A2", "B2", "G2", "A3", "A1(1)"];

impl RootDatum {
    pub fn new(gcm: Vec<Vec<i64>>, d: Vec<i64>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = gcm.len();
        if n == 0 {
            return Err(Error::InvalidDatum("empty Cartan matrix".into()));
        }
        if gcm.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidDatum("Cartan matrix is not square".into()));
        }
        if d.len() != n {
            return Err(Error::InvalidDatum(format!("expected {n} symmetrizers, got {}", d.len())));
        }
        for i in 0..n {
            if d[i] <= 0 {
                return Err(Error::InvalidDatum(format!("symmetrizer d[{i}] = {} is not positive", d[i])));
            }
            if gcm[i][i] != 2 {
                return Err(Error::InvalidDatum(format!("diagonal entry a[{i}][{i}] = {} is not 2", gcm[i][i])));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if gcm[i][j] > 0 {
                    return Err(Error::InvalidDatum(format!("off-diagonal entry a[{i}][{j}] = {} is positive", gcm[i][j])));
                }
                if (gcm[i][j] == 0) != (gcm[j][i] == 0) {
                    return Err(Error::InvalidDatum(format!("a[{i}][{j}] and a[{j}][{i}] disagree on vanishing")));
                }
                if d[i] * gcm[i][j] != d[j] * gcm[j][i] {
                    return Err(Error::InvalidDatum(format!(
                        "not symmetrizable at ({i},{j}): {}*{} != {}*{}",
                        d[i], gcm[i][j], d[j], gcm[j][i]
                    )));
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (1..=n).map(|k| k.to_string()).collect());
        if labels.len() != n {
            return Err(Error::InvalidDatum(format!("expected {n} labels, got {}", labels.len())));
        }
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() != n || labels.iter().any(|l| l.is_empty() || l.contains(',')) {
            return Err(Error::InvalidDatum("labels must be distinct, nonempty and comma-free".into()));
        }
        let form: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| d[i] * gcm[i][j]).collect()).collect();
        let finite = positive_definite(&form);
        Ok(RootDatum { name: "custom".into(), labels, gcm, d, form, finite })
    }

    pub fn named(name: &str) -> Result<Self> {
        let key: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_uppercase();
        let l = |v: &[&str]| Some(v.iter().map(|s| s.to_string()).collect());
        let (gcm, d, labels, canonical) = match key.as_str() {
            "A1" => (vec![vec![2]], vec![1], l(&["1"]), "A1"),
            "A2" => (vec![vec![2, -1], vec![-1, 2]], vec![1, 1], l(&["1", "2"]), "A2"),
            "B2" => (vec![vec![2, -1], vec![-2, 2]], vec![2, 1], l(&["1", "2"]), "B2"),
            "G2" => (vec![vec![2, -1], vec![-3, 2]], vec![3, 1], l(&["1", "2"]), "G2"),
            "A3" => (vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]], vec![1, 1, 1], l(&["1", "2", "3"]), "A3"),
            "A1(1)" | "A1^(1)" | "A1^1" | "A11" | "AFFINE-A1" => {
                (vec![vec![2, -2], vec![-2, 2]], vec![1, 1], l(&["0", "1"]), "A1(1)")
            }
            _ => return Err(Error::Usage(format!("--type: unknown type {name:?}; known: {}", NAMED_TYPES.join(", ")))),
        };
        let mut out = Self::new(gcm, d, labels)?;
        out.name = canonical.into();
        Ok(out)
    }

    pub fn from_config(cfg: DatumConfig) -> Result<Self> {
        let mut out = Self::new(cfg.gcm, cfg.d, cfg.labels)?;
        if let Some(n) = cfg.name {
            out.name = n;
        }
        Ok(out)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_config(serde_json::from_str(s)?)
    }

    pub fn to_config(&self) -> DatumConfig {
        DatumConfig { gcm: self.gcm.clone(), d: self.d.clone(), labels: Some(self.labels.clone()), name: Some(self.name.clone()) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.gcm.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    /// `a_ij = ⟨h_i, α_j⟩`.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.gcm[i][j]
    }

    pub fn gcm(&self) -> &[Vec<i64>] {
        &self.gcm
    }

    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    /// `(α_i, α_j) = d_i a_ij`.
    pub fn pair(&self, i: usize, j: usize) -> i64 {
        self.form[i][j]
    }

    pub fn is_finite_type(&self) -> bool {
        self.finite
    }

    /// Labels are all one character, so words print as plain strings.
    pub fn compact_labels(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    /// `(u, v)` for root-lattice vectors in α-coordinates.
    pub fn form(&self, u: &[i64], v: &[i64]) -> i64 {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| u[i] * self.form[i][j] * v[j]).sum::<i64>()).sum()
    }

    /// `⟨h_i, v⟩` for a root-lattice vector in α-coordinates.
    pub fn coroot_pair(&self, i: usize, v: &[i64]) -> i64 {
        (0..self.rank()).map(|j| self.gcm[i][j] * v[j]).sum()
    }

    /// `⟨h_i, ξ⟩` for `ξ = −Σ ξ_j α_j ∈ Q₋`, computed literally.
    pub fn weight_pairing(&self, i: usize, w: &Weight) -> i64 {
        -(0..self.rank()).map(|j| self.gcm[i][j] * w.0[j] as i64).sum::<i64>()
    }

    /// `(ξ, α_i)` for `ξ ∈ Q₋`.
    pub fn weight_form_simple(&self, w: &Weight, i: usize) -> i64 {
        -(0..self.rank()).map(|j| w.0[j] as i64 * self.form[j][i]).sum::<i64>()
    }

    /// `(ξ, ζ)` for `ξ, ζ ∈ Q₋`.
    pub fn weight_form(&self, a: &Weight, b: &Weight) -> i64 {
        self.form(&a.as_root(), &b.as_root())
    }

    /// `s_i(v) = v − ⟨h_i, v⟩ α_i`.
    pub fn reflect(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let c = self.coroot_pair(i, v);
        let mut out = v.to_vec();
        out[i] -= c;
        out
    }

    /// `s_i` on a `Q₋` weight; `None` if the image leaves `Q₋`.
    pub fn reflect_weight(&self, i: usize, w: &Weight) -> Option<Weight> {
        Weight::from_root(&self.reflect(i, &w.as_root()))
    }

    /// Parses a comma-separated list of labels.
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        s.split(',').map(|t| self.index_of(t.trim())).collect()
    }

    pub fn word_labels(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&i| self.labels[i].clone()).collect()
    }

    /// String key of a word: concatenated labels when compact, else comma-joined.
    pub fn word_key(&self, word: &[usize]) -> String {
        let sep = if self.compact_labels() { "" } else { "," };
        self.word_labels(word).join(sep)
    }

    /// Inverse of [`Self::word_key`].
    pub fn parse_word_key(&self, key: &str) -> Result<Vec<usize>> {
        if self.compact_labels() {
            key.chars().map(|c| self.index_of(&c.to_string())).collect()
        } else {
            self.parse_word(key)
        }
    }

    /// Greedy reduced word of the longest element (finite type only).
    pub fn longest_word(&self) -> Option<Vec<usize>> {
        if !self.finite {
            return None;
        }
        let mut word: Vec<usize> = Vec::new();
        loop {
            let next = (0..self.rank()).find(|&i| {
                let mut w = word.clone();
                w.push(i);
                word_roots(self, &w).is_ok()
            });
            match next {
                Some(i) => word.push(i),
                None => return Some(word),
            }
        }
    }

    /// All reduced words of the longest element (finite type only).
    pub fn longest_reduced_words(&self) -> Option<Vec<Vec<usize>>> {
        let n = self.longest_word()?.len();
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(w) = stack.pop() {
            if w.len() == n {
                out.push(w);
                continue;
            }
            for i in (0..self.rank()).rev() {
                let mut e = w.clone();
                e.push(i);
                if word_roots(self, &e).is_ok() {
                    stack.push(e);
                }
            }
        }
        out.sort();
        Some(out)
    }
}

fn positive_definite(b: &[Vec<i64>]) -> bool {
    let n = b.len();
    (1..=n).all(|k| {
        let minor: Vec<Vec<f64>> = (0..k).map(|i| (0..k).map(|j| b[i][j] as f64).collect()).collect();
        det_f64(minor) > 0.5
    })
}

fn det_f64(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for k in 0..n {
        let Some(p) = (k..n).max_by(|&a, &b| m[a][k].abs().total_cmp(&m[b][k].abs())) else { return 0.0 };
        if m[p][k].abs() < 1e-12 {
            return 0.0;
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= m[k][k];
        let pivot = m[k].clone();
        for row in m.iter_mut().skip(k + 1) {
            let f = row[k] / pivot[k];
            for (x, y) in row.iter_mut().zip(&pivot).skip(k) {
                *x -= f * y;
            }
        }
    }
    det
}

/// Element `ξ = −Σ ξ_i α_i` of `Q₋`, stored by its nonnegative coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<u32>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[i] = 1;
        w
    }

    pub fn of_word(rank: usize, word: &[usize]) -> Self {
        let mut w = Self::zero(rank);
        for &i in word {
            w.0[i] += 1;
        }
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn add_simple(&self, i: usize, c: u32) -> Weight {
        let mut w = self.clone();
        w.0[i] += c;
        w
    }

    pub fn checked_sub(&self, o: &Weight) -> Option<Weight> {
        self.0.iter().zip(&o.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Weight)
    }

    pub fn sub_simple(&self, i: usize, c: u32) -> Option<Weight> {
        let mut w = self.clone();
        w.0[i] = w.0[i].checked_sub(c)?;
        Some(w)
    }

    /// Componentwise `self ≤ o`.
    pub fn le(&self, o: &Weight) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// Positive root-lattice vector `Σ ξ_i α_i`.
    pub fn as_root(&self) -> Vec<i64> {
        self.0.iter().map(|&c| c as i64).collect()
    }

    pub fn from_root(v: &[i64]) -> Option<Weight> {
        v.iter().map(|&c| u32::try_from(c).ok()).collect::<Option<Vec<_>>>().map(Weight)
    }

    /// All weights `μ ≤ self` componentwise, in increasing height.
    pub fn lower_set(&self) -> Vec<Weight> {
        let mut out = vec![Weight::zero(self.rank())];
        for i in 0..self.rank() {
            let mut next = Vec::new();
            for w in &out {
                for c in 0..=self.0[i] {
                    let mut v = w.clone();
                    v.0[i] = c;
                    next.push(v);
                }
            }
            out = next;
        }
        out.sort_by_key(|w| (w.height(), w.0.clone()));
        out
    }

    /// All weights of height at most `h` in rank `r`, sorted by height then coordinates.
    pub fn all_up_to_height(rank: usize, h: u32) -> Vec<Weight> {
        let mut out = Vec::new();
        fn rec(rank: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Weight>) {
            if cur.len() == rank {
                out.push(Weight(cur.clone()));
                return;
            }
            for c in 0..=left {
                cur.push(c);
                rec(rank, left - c, cur, out);
                cur.pop();
            }
        }
        rec(rank, h, &mut Vec::new(), &mut out);
        out.sort_by_key(|w| (w.height(), w.0.clone()));
        out
    }

    /// Canonical sort key: height first, then coordinates.
    pub fn order_key(&self) -> (u32, Vec<u32>) {
        (self.height(), self.0.clone())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Reduced word together with its roots `β_k = s_{i₁}⋯s_{i_{k−1}}(α_{i_k})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    letters: Vec<usize>,
    roots: Vec<Vec<i64>>,
}

impl ReducedWord {
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root_weight(&self, k: usize) -> Weight {
        Weight::from_root(&self.roots[k]).expect("roots along a reduced word are positive")
    }

    /// Subword `(i_{a+1}, …, i_b)`, itself reduced.
    pub fn slice(&self, datum: &RootDatum, a: usize, b: usize) -> ReducedWord {
        word_roots(datum, &self.letters[a..b]).expect("subwords of reduced words are reduced")
    }

    pub fn reversed(&self, datum: &RootDatum) -> Result<ReducedWord> {
        let mut l = self.letters.clone();
        l.reverse();
        word_roots(datum, &l)
    }
}

/// Computes the roots along `letters`, failing at the first non-positive root.
pub fn word_roots(datum: &RootDatum, letters: &[usize]) -> Result<ReducedWord> {
    let mut roots: Vec<Vec<i64>> = Vec::with_capacity(letters.len());
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    for (k, &ik) in letters.iter().enumerate() {
        if ik >= datum.rank() {
            return Err(Error::UnknownLabel(ik.to_string()));
        }
        let mut v = vec![0i64; datum.rank()];
        v[ik] = 1;
        for &it in letters[..k].iter().rev() {
            v = datum.reflect(it, &v);
        }
        let positive = v.iter().all(|&c| c >= 0);
        if !positive || seen.contains_key(&v) {
            return Err(Error::NonReducedWord { position: k + 1 });
        }
        seen.insert(v.clone(), k);
        roots.push(v);
    }
    Ok(ReducedWord { letters: letters.to_vec(), roots })
}

/// Exponent tuple `c ∈ ℤ_{≥0}^ℓ`.
pub type ExponentTuple = Vec<u32>;

/// `ξ(c) = −Σ c_k β_k`.
pub fn xi(c: &[u32], word: &ReducedWord) -> Weight {
    assert_eq!(c.len(), word.len(), "exponent tuple length differs from word length");
    let rank = word.roots.first().map_or(0, |r| r.len());
    let mut out = vec![0u32; rank];
    for (ck, beta) in c.iter().zip(&word.roots) {
        for (o, b) in out.iter_mut().zip(beta) {
            *o += ck * (*b as u32);
        }
    }
    Weight(out)
}

/// Left lexicographic order.
pub fn lex_compare(a: &[u32], b: &[u32]) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::Precondition(format!("tuple lengths {} and {} differ", a.len(), b.len())));
    }
    Ok(a.cmp(b))
}

/// All `c` with `ξ(c) = ν`, in increasing lex order.
pub fn tuples_of_weight(word: &ReducedWord, nu: &Weight) -> Vec<ExponentTuple> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; word.len()];
    fn rec(k: usize, word: &ReducedWord, left: &[i64], cur: &mut Vec<u32>, out: &mut Vec<ExponentTuple>) {
        if k == word.len() {
            if left.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let beta = &word.roots[k];
        let mut rest: Vec<i64> = left.to_vec();
        let mut c = 0;
        loop {
            cur[k] = c;
            rec(k + 1, word, &rest, cur, out);
            for (r, b) in rest.iter_mut().zip(beta) {
                *r -= b;
            }
            if rest.iter().any(|&x| x < 0) {
                break;
            }
            c += 1;
        }
        cur[k] = 0;
    }
    rec(0, word, &nu.as_root(), &mut cur, &mut out);
    out.sort();
    out
}

/// Weyl group of a finite type as integer matrices, with lengths, by breadth-first search.
pub fn enumerate_weyl_group(datum: &RootDatum, limit: usize) -> Option<HashMap<Vec<Vec<i64>>, usize>> {
    let n = datum.rank();
    let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut dist = HashMap::new();
    dist.insert(id.clone(), 0);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        let dm = dist[&m];
        for i in 0..n {
            let cols: Vec<Vec<i64>> = (0..n).map(|c| datum.reflect(i, &(0..n).map(|r| m[r][c]).collect::<Vec<_>>())).collect();
            let next: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect();
            if !dist.contains_key(&next) {
                if dist.len() >= limit {
                    return None;
                }
                dist.insert(next.clone(), dm + 1);
                queue.push_back(next);
            }
        }
    }
    Some(dist)
}

/// Matrix of `s_{i₁}⋯s_{i_k}` acting on α-coordinates.
pub fn word_matrix(datum: &RootDatum, word: &[usize]) -> Vec<Vec<i64>> {
    let n = datum.rank();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut v = vec![0i64; n];
                    v[c] = 1;
                    for &i in word.iter().rev() {
                        v = datum.reflect(i, &v);
                    }
                    v[r]
                })
                .collect()
        })
        .collect()
}
