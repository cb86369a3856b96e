//! Dense polynomial helpers: over `F_p` (coefficients as `u64` residues),
//! over `Z` (for cyclotomic polynomials) and over `Q`. Coefficients are
//! stored lowest degree first.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numtheory::{divisors, mod_inv, mod_mul};

// ---------------------------------------------------------------------------
// F_p[x]
// ---------------------------------------------------------------------------

pub(crate) fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    fp_trim(&mut out);
    out
}

pub(crate) fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mod_mul(x, y, p)) % p;
        }
    }
    fp_trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be non-zero.
pub(crate) fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let mut b = b.to_vec();
    fp_trim(&mut b);
    assert!(!b.is_empty(), "division by the zero polynomial");
    let lead_inv = mod_inv(*b.last().unwrap(), p).expect("p is prime");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = mod_mul(*r.last().unwrap(), lead_inv, p);
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - mod_mul(c, bj, p)) % p;
        }
        fp_trim(&mut r);
    }
    fp_trim(&mut q);
    (q, r)
}

pub(crate) fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    fp_divrem(a, b, p).1
}

pub(crate) fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = mod_inv(lead, p).unwrap();
        for c in x.iter_mut() {
            *c = mod_mul(*c, inv, p);
        }
    }
    x
}

/// `s` with `s * a = gcd(a, m)` modulo `m`, together with that gcd (made monic).
pub(crate) fn fp_ext_gcd(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut old_r = a.to_vec();
    fp_trim(&mut old_r);
    let mut r = m.to_vec();
    fp_trim(&mut r);
    let mut old_s = vec![1u64];
    let mut s: Vec<u64> = Vec::new();
    while !r.is_empty() {
        let (q, rem) = fp_divrem(&old_r, &r, p);
        old_r = std::mem::replace(&mut r, rem);
        let qs = fp_mul(&q, &s, p);
        let new_s = fp_sub(&old_s, &qs, p);
        old_s = std::mem::replace(&mut s, new_s);
    }
    if let Some(&lead) = old_r.last() {
        let inv = mod_inv(lead, p).unwrap();
        for c in old_r.iter_mut().chain(old_s.iter_mut()) {
            *c = mod_mul(*c, inv, p);
        }
    }
    (old_r, old_s)
}

fn fp_powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = fp_rem(&fp_mul(&result, &b, p), m, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

/// Ben-Or test: a monic `f` of degree `k` is irreducible iff
/// `gcd(f, x^{p^i} - x) = 1` for every `1 <= i <= k/2`.
pub(crate) fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut xp = x.clone();
    for _ in 1..=k / 2 {
        xp = fp_powmod(&xp, p as u128, f, p);
        let diff = fp_sub(&xp, &x, p);
        let g = fp_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Least monic irreducible of degree `k`, ordering candidates by the integer
/// `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of their lower coefficients.
pub(crate) fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let total = (p as u128).pow(k as u32);
    let mut idx: u128 = 0;
    while idx < total {
        let mut f = Vec::with_capacity(k + 1);
        let mut v = idx;
        for _ in 0..k {
            f.push((v % p as u128) as u64);
            v /= p as u128;
        }
        f.push(1);
        if (k == 1 || f[0] != 0) && fp_is_irreducible(&f, p) {
            return f;
        }
        idx += 1;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

// ---------------------------------------------------------------------------
// Z[x]: cyclotomic polynomials
// ---------------------------------------------------------------------------

/// Exact quotient of `a` by the monic integer polynomial `b`.
fn int_exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r: Vec<i128> = a.iter().map(|&c| c as i128).collect();
    let db = b.len() - 1;
    let mut q = vec![0i128; r.len() - db];
    for shift in (0..q.len()).rev() {
        let c = r[shift + db];
        q[shift] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] -= c * bj as i128;
            }
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0), "division was not exact");
    q.into_iter().map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow")).collect()
}

/// The `d`-th cyclotomic polynomial, via `x^d - 1 = prod_{e | d} Phi_e(x)`.
pub fn cyclotomic_polynomial(d: u64) -> Vec<i64> {
    assert!(d >= 1, "cyclotomic index must be positive");
    let mut cache: HashMap<u64, Vec<i64>> = HashMap::new();
    cyclotomic_rec(d, &mut cache)
}

fn cyclotomic_rec(d: u64, cache: &mut HashMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(c) = cache.get(&d) {
        return c.clone();
    }
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in divisors(d) {
        if e < d {
            let phi_e = cyclotomic_rec(e, cache);
            num = int_exact_div(&num, &phi_e);
        }
    }
    cache.insert(d, num.clone());
    num
}

// ---------------------------------------------------------------------------
// Q[x]
// ---------------------------------------------------------------------------

pub(crate) fn q_trim(a: &mut Vec<BigRational>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn q_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    q_trim(&mut r);
    let mut b = b.to_vec();
    q_trim(&mut b);
    let lead = b.last().expect("division by zero polynomial").clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        q_trim(&mut r);
    }
    q_trim(&mut q);
    (q, r)
}

fn q_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    q_trim(&mut out);
    out
}

fn q_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    q_trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` in `Q[x]`, if `gcd(a, m) = 1`.
pub(crate) fn q_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut old_r = a.to_vec();
    q_trim(&mut old_r);
    if old_r.is_empty() {
        return None;
    }
    let mut r = m.to_vec();
    let mut old_s = vec![BigRational::one()];
    let mut s: Vec<BigRational> = Vec::new();
    while !r.is_empty() {
        let (q, rem) = q_divrem(&old_r, &r);
        old_r = std::mem::replace(&mut r, rem);
        let new_s = q_sub(&old_s, &q_mul(&q, &s));
        old_s = std::mem::replace(&mut s, new_s);
    }
    if old_r.len() != 1 {
        return None;
    }
    let c = old_r[0].clone();
    let mut inv: Vec<BigRational> = old_s.iter().map(|x| x / &c).collect();
    inv = q_divrem(&inv, m).1;
    Some(inv)
}

pub(crate) fn int_poly_to_q(p: &[i64]) -> Vec<BigRational> {
    p.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
}
