//! Small dense matrices over `ℚ(q)` and `ℤ[q^{±1}]`.

use super::laurent::LaurentInt;
use super::poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

pub type RatMatrix = Vec<Vec<RatFunc>>;
pub type LaurentMatrix = Vec<Vec<LaurentInt>>;

pub fn identity(n: usize) -> RatMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect()).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &[Vec<RatFunc>], b: &[Vec<RatFunc>]) -> RatMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    row.iter().zip(b.iter()).fold(RatFunc::zero(), |acc, (x, brow)| {
                        if x.is_zero() || brow[j].is_zero() {
                            acc
                        } else {
                            &acc + &(x * &brow[j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Dot product of two equal-length slices.
pub fn dot(a: &[RatFunc], b: &[RatFunc]) -> RatFunc {
    a.iter().zip(b).fold(RatFunc::zero(), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { &acc + &(x * y) })
}

fn pick_pivot(m: &[Vec<RatFunc>], col: usize, from: usize) -> Option<usize> {
    (from..m.len())
        .filter(|&r| !m[r][col].is_zero())
        .min_by_key(|&r| (m[r][col].den().high_exp().unwrap_or(0), m[r][col].num().dense().len()))
}

/// Solves `a · x = b` for square invertible `a`.
pub fn solve(a: &[Vec<RatFunc>], b: &[Vec<RatFunc>]) -> Result<RatMatrix> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| {
            assert_eq!(ra.len(), n);
            ra.iter().chain(rb.iter()).cloned().collect()
        })
        .collect();
    for k in 0..n {
        let p = pick_pivot(&aug, k, k).ok_or_else(|| Error::Singular(format!("no pivot in column {k}")))?;
        aug.swap(k, p);
        let inv = aug[k][k].inv()?;
        for x in aug[k].iter_mut().skip(k) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = aug[k].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == k || row[k].is_zero() {
                continue;
            }
            let f = row[k].clone();
            for j in k..n + m {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&f * &pivot_row[j]);
                }
            }
        }
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn inverse(a: &[Vec<RatFunc>]) -> Result<RatMatrix> {
    solve(a, &identity(a.len()))
}

/// Rank over `ℚ(q)`.
pub fn rank(m: &[Vec<RatFunc>]) -> usize {
    let mut a: RatMatrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = pick_pivot(&a, c, r) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().unwrap();
        let pivot_row: Vec<RatFunc> = a[r].iter().map(|x| x * &inv).collect();
        for row in a.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&f * &pivot_row[j]);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Fraction-free elimination on `[a | b]`; returns `(x_num, det)` with
/// `a · x_num = det · b`.
pub fn solve_fraction_free(a: &[Vec<LaurentInt>], b: &[Vec<LaurentInt>]) -> Result<(LaurentMatrix, LaurentInt)> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut aug: LaurentMatrix = a.iter().zip(b).map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect()).collect();
    let mut prev = LaurentInt::one();
    let mut sign = 1i64;
    for k in 0..n {
        let p = (k..n)
            .filter(|&r| !aug[r][k].is_zero())
            .min_by_key(|&r| aug[r][k].dense().len())
            .ok_or_else(|| Error::Singular(format!("no pivot in column {k}")))?;
        if p != k {
            aug.swap(k, p);
            sign = -sign;
        }
        let (top, rest) = aug.split_at_mut(k + 1);
        let pk = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..n + m {
                let t = &(&pk[k] * &row[j]) - &(&row[k] * &pk[j]);
                row[j] = t.exact_div(&prev).expect("fraction-free step is exact");
            }
            row[k] = LaurentInt::zero();
        }
        prev = aug[k][k].clone();
    }
    let det = aug[n - 1][n - 1].clone();
    let mut x: LaurentMatrix = vec![vec![LaurentInt::zero(); m]; n];
    for col in 0..m {
        for i in (0..n).rev() {
            let mut acc = &det * &aug[i][n + col];
            for j in i + 1..n {
                if !aug[i][j].is_zero() && !x[j][col].is_zero() {
                    acc -= &(&aug[i][j] * &x[j][col]);
                }
            }
            x[i][col] = acc.exact_div(&aug[i][i]).expect("back substitution is exact");
        }
    }
    let det = if sign < 0 { -det } else { det };
    let x = if sign < 0 { x.into_iter().map(|r| r.into_iter().map(|v| -v).collect()).collect() } else { x };
    Ok((x, det))
}

/// Determinant by fraction-free elimination.
pub fn det_laurent(a: &[Vec<LaurentInt>]) -> LaurentInt {
    let n = a.len();
    if n == 0 {
        return LaurentInt::one();
    }
    let mut m: LaurentMatrix = a.to_vec();
    let mut prev = LaurentInt::one();
    let mut sign = 1i64;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return LaurentInt::zero();
        };
        if p != k {
            m.swap(k, p);
            sign = -sign;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pk = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..n {
                let t = &(&pk[k] * &row[j]) - &(&row[k] * &pk[j]);
                row[j] = t.exact_div(&prev).expect("fraction-free step is exact");
            }
            row[k] = LaurentInt::zero();
        }
        prev = m[k][k].clone();
    }
    if sign < 0 {
        -m[n - 1][n - 1].clone()
    } else {
        m[n - 1][n - 1].clone()
    }
}

/// Determinant over `ℚ(q)`.
pub fn det(a: &[Vec<RatFunc>]) -> RatFunc {
    let n = a.len();
    let mut m: RatMatrix = a.to_vec();
    let mut acc = RatFunc::one();
    for k in 0..n {
        let Some(p) = pick_pivot(&m, k, k) else {
            return RatFunc::zero();
        };
        if p != k {
            m.swap(k, p);
            acc = -acc;
        }
        acc = &acc * &m[k][k];
        let inv = m[k][k].inv().unwrap();
        let pivot_row: Vec<RatFunc> = m[k].iter().map(|x| x * &inv).collect();
        for row in m.iter_mut().skip(k + 1) {
            if row[k].is_zero() {
                continue;
            }
            let f = row[k].clone();
            for j in k..n {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&f * &pivot_row[j]);
                }
            }
        }
    }
    acc
}

/// Incremental row echelon form over `F_p`, used to pick pivots greedily.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    pub fn new(p: u64) -> Self {
        ModEchelon { p, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the rows so far; reports whether it was.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        for (col, row) in &self.rows {
            let c = v[*col];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + p - poly::mul_mod(c, *y, p)) % p;
                }
            }
        }
        let Some(col) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = poly::inv_mod(v[col], p);
        for x in v.iter_mut() {
            *x = poly::mul_mod(*x, inv, p);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[col];
            if c != 0 {
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = (*x + p - poly::mul_mod(c, *y, p)) % p;
                }
            }
        }
        self.rows.push((col, v));
        true
    }
}
