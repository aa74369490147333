//! Dense univariate integer polynomials, coefficient `k` at index `k`.
//!
//! Gcds use the modular algorithm over word-sized primes with Chinese
//! remaindering and a final exact trial division.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn strip(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Exact quotient `a / b` over ℤ, `None` if not exact.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r: Vec<BigInt> = a.to_vec();
    strip(&mut r);
    let mut d: Vec<BigInt> = b.to_vec();
    strip(&mut d);
    assert!(!d.is_empty());
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < d.len() {
        return None;
    }
    let lc = d.last().unwrap().clone();
    let n = r.len() - d.len() + 1;
    let mut q = vec![BigInt::zero(); n];
    for k in (0..n).rev() {
        let top = &r[k + d.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (qt, rem) = top.div_rem(&lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, c) in d.iter().enumerate() {
            r[k + j] -= &qt * c;
        }
        q[k] = qt;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

pub(crate) fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

pub(crate) fn reduce_mod(c: &BigInt, p: u64) -> u64 {
    let m = c.mod_floor(&BigInt::from(p));
    m.to_u64().unwrap()
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "no inverse of zero");
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Descending primes below 2^62.
pub(crate) fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(256);
        let mut n = (1u64 << 62) - 1;
        while out.len() < 256 {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn to_mod(a: &[BigInt], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.iter().map(|c| reduce_mod(c, p)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Monic gcd over `F_p`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let f = mul_mod(*a.last().unwrap(), inv, p);
            for (j, c) in b.iter().enumerate() {
                a[shift + j] = sub_mod(a[shift + j], mul_mod(f, *c, p), p);
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r > half {
        r - m
    } else {
        r
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = content(&v);
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    if v.last().is_some_and(|c| c.sign() == Sign::Minus) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// Primitive gcd with positive leading coefficient of two nonzero
/// polynomials (contents are ignored).
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive(a.to_vec());
    let mut b = primitive(b.to_vec());
    strip(&mut a);
    strip(&mut b);
    assert!(!a.is_empty() && !b.is_empty());
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    if a == b {
        return a;
    }
    let lca = a.last().unwrap().clone();
    let lcb = b.last().unwrap().clone();
    let lcg = lca.gcd(&lcb);
    let mut deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last_lift: Option<Vec<BigInt>> = None;
    for &p in primes() {
        let pb = BigInt::from(p);
        if (&lca % &pb).is_zero() || (&lcb % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(to_mod(&a, p), to_mod(&b, p), p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        if d > deg {
            continue;
        }
        let scale = reduce_mod(&lcg, p);
        let g: Vec<u64> = g.iter().map(|&c| mul_mod(c, scale, p)).collect();
        if d < deg {
            deg = d;
            acc = g.iter().map(|&c| BigInt::from(c)).collect();
            modulus = pb;
            last_lift = None;
        } else {
            let minv = inv_mod(reduce_mod(&modulus, p), p);
            for (k, c) in g.iter().enumerate() {
                let cur = reduce_mod(&acc[k], p);
                let t = mul_mod(sub_mod(*c, cur, p), minv, p);
                acc[k] = &acc[k] + &modulus * BigInt::from(t);
            }
            modulus *= pb;
        }
        let half: BigInt = &modulus >> 1;
        let lift: Vec<BigInt> = acc.iter().map(|c| symmetric(c, &modulus, &half)).collect();
        if last_lift.as_ref() == Some(&lift) {
            let cand = primitive(lift.clone());
            if div_exact(&a, &cand).is_some() && div_exact(&b, &cand).is_some() {
                return cand;
            }
        }
        last_lift = Some(lift);
    }
    panic!("modular gcd ran out of primes");
}

/// Sign of the leading coefficient.
pub(crate) fn leading_is_negative(a: &[BigInt]) -> bool {
    a.iter().rev().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn primes_are_prime() {
        let ps = primes();
        assert!(ps.len() >= 100);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007u64 * 3));
    }

    #[test]
    fn gcd_of_products() {
        let f = p(&[1, 0, -1]);
        let g = p(&[1, 1, 1]);
        let h = p(&[2, 0, 3]);
        let a = mul(&f, &g);
        let b = mul(&f, &h);
        assert_eq!(gcd(&a, &b), f.iter().map(|c| -c).collect::<Vec<_>>());
        assert_eq!(gcd(&g, &h), p(&[1]));
    }

    #[test]
    fn gcd_with_large_coefficients() {
        let f = p(&[123456789, -987654321, 555555555, 1]);
        let mut a = f.clone();
        let mut b = f.clone();
        for _ in 0..6 {
            a = mul(&a, &p(&[3, 1, 7]));
            b = mul(&b, &p(&[-5, 11, 2]));
        }
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = mul(&p(&[1, 1]), &p(&[2, 0, 1]));
        assert_eq!(div_exact(&a, &p(&[1, 1])), Some(p(&[2, 0, 1])));
        assert_eq!(div_exact(&a, &p(&[1, 2])), None);
    }
}
