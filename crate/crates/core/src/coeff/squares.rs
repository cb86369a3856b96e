//! Solvability of `X^2 + Y^2 + Z^2 + 1 = 0` and related level computations.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{CoefficientRing, RingElement, RingKind};
use crate::error::{Error, Result};
use crate::numtheory::{factorize, is_prime, mod_mul, mod_pow};

/// Default coordinate bound for cyclotomic searches.
pub const DEFAULT_HEIGHT_BOUND: u64 = 8;

/// Finite rings up to this size get a square-root lookup table.
pub(crate) const SQUARE_TABLE_LIMIT: u64 = 1 << 24;

/// Number of candidate vectors a cyclotomic two-squares search may visit.
const SEARCH_CANDIDATE_CAP: usize = 250_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeSquaresSolution {
    pub x: RingElement,
    pub y: RingElement,
    pub z: RingElement,
}

impl ThreeSquaresSolution {
    /// Re-checks `x^2 + y^2 + z^2 + 1 = 0`.
    pub fn verify(&self, ring: &CoefficientRing) -> bool {
        let sq = |a: &RingElement| ring.mul(a, a);
        let total = ring.add(&ring.add(&sq(&self.x), &sq(&self.y)), &ring.add(&sq(&self.z), &ring.one()));
        ring.is_zero(&total)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThreeSquaresOutcome {
    Solution(ThreeSquaresSolution),
    NoSolution,
    Unknown(String),
}

/// The level of `Q(zeta_p)` as far as the congruence class of `p` determines it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    Level2,
    Level4,
    TwoOrFour,
}

pub fn level_classify_prime(p: u64) -> Result<Level> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    Ok(match p % 8 {
        3 | 5 => Level::Level2,
        7 => Level::Level4,
        _ => Level::TwoOrFour,
    })
}

/// Square root of `t` in `F_p` by Tonelli-Shanks (smaller of the two roots).
fn sqrt_mod_prime(t: u64, p: u64) -> Option<u64> {
    if t == 0 {
        return Some(0);
    }
    if mod_pow(t, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| mod_pow(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut tt = mod_pow(t, q, p);
    let mut r = mod_pow(t, q.div_ceil(2), p);
    while tt != 1 {
        let mut i = 0;
        let mut t2 = tt;
        while t2 != 1 {
            t2 = mod_mul(t2, t2, p);
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mod_mul(b, b, p);
        tt = mod_mul(tt, c, p);
        r = mod_mul(r, b, p);
    }
    Some(r.min(p - r))
}

fn solve_finite(ring: &CoefficientRing) -> ThreeSquaresOutcome {
    let q = ring.size().unwrap();
    if let Some(roots) = ring.square_roots() {
        let squares: Vec<RingElement> = ring.elements().map(|e| ring.mul(&e, &e)).collect();
        let minus_one = ring.from_int(-1);
        for z in 0..q {
            let base = ring.sub(&minus_one, &squares[z as usize]);
            for y in 0..q {
                let t = ring.sub(&base, &squares[y as usize]);
                if let Some(x) = roots[ring.index_of(&t) as usize] {
                    return ThreeSquaresOutcome::Solution(ThreeSquaresSolution {
                        x: RingElement::Residue(x),
                        y: RingElement::Residue(y),
                        z: RingElement::Residue(z),
                    });
                }
            }
        }
        return ThreeSquaresOutcome::NoSolution;
    }
    // Too large for a table: search the prime field, which embeds as constants.
    let p = match ring.kind() {
        RingKind::FiniteField { p, .. } => *p,
        RingKind::ModN { n } if is_prime(*n) => *n,
        _ => return ThreeSquaresOutcome::Unknown(format!("{ring} is too large for exhaustive search")),
    };
    for y in 0..p {
        let t = (p - 1 + p - mod_mul(y, y, p)) % p;
        if let Some(x) = sqrt_mod_prime(t, p) {
            return ThreeSquaresOutcome::Solution(ThreeSquaresSolution {
                x: ring.from_int(x as i64),
                y: ring.from_int(y as i64),
                z: ring.zero(),
            });
        }
    }
    ThreeSquaresOutcome::NoSolution
}

/// `d` with `d ≡ 2 mod 4` generates the same field as `d / 2`.
fn conductor(d: u64) -> u64 {
    if d % 4 == 2 {
        d / 2
    } else {
        d
    }
}

pub fn solve_three_squares(ring: &CoefficientRing, height_bound: u64) -> ThreeSquaresOutcome {
    let d = match ring.kind() {
        RingKind::ModN { .. } | RingKind::FiniteField { .. } => return solve_finite(ring),
        RingKind::Rationals => return ThreeSquaresOutcome::NoSolution,
        RingKind::Cyclotomic { d, .. } => *d,
    };
    let c = conductor(d);
    let x = ring.generator_x();
    if c == 1 {
        return ThreeSquaresOutcome::NoSolution;
    }
    if c.is_multiple_of(4) {
        let i = ring.pow(&x, d / 4);
        return ThreeSquaresOutcome::Solution(ThreeSquaresSolution { x: i, y: ring.zero(), z: ring.zero() });
    }
    let found = |pair: Option<(RingElement, RingElement)>| {
        pair.map(|(a, b)| ThreeSquaresOutcome::Solution(ThreeSquaresSolution { x: a, y: b, z: ring.zero() }))
    };
    let primes: Vec<u64> = factorize(c).into_iter().map(|(p, _)| p).collect();
    if primes.len() == 1 && primes[0] == c {
        return match level_classify_prime(c).unwrap() {
            Level::Level4 => ThreeSquaresOutcome::NoSolution,
            Level::Level2 | Level::TwoOrFour => found(two_squares_search(ring, height_bound)).unwrap_or_else(|| {
                ThreeSquaresOutcome::Unknown(format!("no sum of two squares equal to -1 found in {ring} up to height {height_bound}"))
            }),
        };
    }
    // Solvability ascends from Q(zeta_p) to Q(zeta_d) for p | d.
    for &p in &primes {
        if level_classify_prime(p).unwrap() != Level::Level2 {
            continue;
        }
        let sub = super::make_ring(&super::RingSpec::Cyclotomic(p)).unwrap();
        if let Some((a, b)) = two_squares_search(&sub, height_bound) {
            let zeta_p = ring.pow(&x, d / p);
            let embed = |e: &RingElement| {
                let mut acc = ring.zero();
                let mut pw = ring.one();
                for coef in sub.rational_coords(e) {
                    acc = ring.add(&acc, &ring.mul(&ring.from_rational(coef.clone()), &pw));
                    pw = ring.mul(&pw, &zeta_p);
                }
                acc
            };
            let sol = ThreeSquaresSolution { x: embed(&a), y: embed(&b), z: ring.zero() };
            debug_assert!(sol.verify(ring));
            return ThreeSquaresOutcome::Solution(sol);
        }
    }
    found(two_squares_search(ring, height_bound))
        .unwrap_or_else(|| ThreeSquaresOutcome::Unknown(format!("level of {ring} undetermined up to height {height_bound}")))
}

fn int_square_mod(v: &[i64], phi: &[i64]) -> Option<Vec<i64>> {
    let n = v.len();
    let mut out = vec![0i64; 2 * n - 1];
    for (i, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in v.iter().enumerate() {
            out[i + j] = out[i + j].checked_add(a.checked_mul(b)?)?;
        }
    }
    for top in (n..out.len()).rev() {
        let c = out[top];
        if c != 0 {
            let shift = top - n;
            for (j, &pj) in phi[..n].iter().enumerate() {
                out[shift + j] = out[shift + j].checked_sub(c.checked_mul(pj)?)?;
            }
        }
    }
    out.truncate(n);
    Some(out)
}

/// Integer vectors in `n` coordinates with l1-norm `norm`, each coordinate
/// bounded by `bound` in absolute value.
fn vectors_of_norm(n: usize, norm: i64, bound: i64, out: &mut Vec<Vec<i64>>, cap: usize) {
    fn rec(prefix: &mut Vec<i64>, n: usize, left: i64, bound: i64, out: &mut Vec<Vec<i64>>, cap: usize) {
        if out.len() >= cap {
            return;
        }
        if prefix.len() == n - 1 {
            if left <= bound {
                prefix.push(left);
                out.push(prefix.clone());
                prefix.pop();
                if left != 0 {
                    prefix.push(-left);
                    out.push(prefix.clone());
                    prefix.pop();
                }
            }
            return;
        }
        for a in 0..=left.min(bound) {
            for sign in [1, -1] {
                if a == 0 && sign == -1 {
                    continue;
                }
                prefix.push(sign * a);
                rec(prefix, n, left - a, bound, out, cap);
                prefix.pop();
            }
        }
    }
    rec(&mut Vec::with_capacity(n), n, norm, bound, out, cap);
}

/// Looks for `x, y` with `x^2 + y^2 = -1`, where `2x` and `2y` have integer
/// coordinates of absolute value at most `2 * height_bound` in the power
/// basis of `zeta_d`.
pub fn two_squares_search(ring: &CoefficientRing, height_bound: u64) -> Option<(RingElement, RingElement)> {
    let RingKind::Cyclotomic { phi, .. } = ring.kind() else {
        return None;
    };
    let n = phi.len() - 1;
    let bound = (2 * height_bound) as i64;
    let mut target = vec![0i64; n];
    target[0] = -4;
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut visited = 0usize;
    let max_norm = bound * n as i64;
    for norm in 0..=max_norm {
        let mut batch = Vec::new();
        vectors_of_norm(n, norm, bound, &mut batch, SEARCH_CANDIDATE_CAP - visited);
        for v in batch {
            visited += 1;
            let Some(sq) = int_square_mod(&v, phi) else { continue };
            seen.entry(sq.clone()).or_insert_with(|| v.clone());
            let rest: Vec<i64> = target.iter().zip(&sq).map(|(t, s)| t - s).collect();
            if let Some(w) = seen.get(&rest) {
                let half = |u: &[i64]| {
                    RingElement::Poly(u.iter().map(|&c| BigRational::new(BigInt::from(c), BigInt::from(2))).collect())
                };
                let (a, b) = (half(&v), half(w));
                debug_assert!(ring.is_zero(&ring.add(&ring.add(&ring.mul(&a, &a), &ring.mul(&b, &b)), &ring.one())));
                return Some((a, b));
            }
        }
        if visited >= SEARCH_CANDIDATE_CAP {
            break;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::{make_ring, RingSpec};
    use super::*;

    fn naive_has_solution(ring: &CoefficientRing) -> bool {
        let els: Vec<_> = ring.elements().collect();
        for x in &els {
            for y in &els {
                for z in &els {
                    let s = ThreeSquaresSolution { x: x.clone(), y: y.clone(), z: z.clone() };
                    if s.verify(ring) {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn f3_solution_is_1_1_0() {
        let r = make_ring(&RingSpec::FiniteField(3, 1)).unwrap();
        let ThreeSquaresOutcome::Solution(s) = solve_three_squares(&r, 8) else { panic!() };
        assert_eq!((s.x, s.y, s.z), (r.from_int(1), r.from_int(1), r.from_int(0)));
    }

    #[test]
    fn agrees_with_naive_triple_loop() {
        let specs = [
            RingSpec::ModN(3),
            RingSpec::ModN(5),
            RingSpec::ModN(9),
            RingSpec::ModN(15),
            RingSpec::ModN(25),
            RingSpec::ModN(27),
            RingSpec::ModN(45),
            RingSpec::FiniteField(3, 2),
            RingSpec::FiniteField(3, 3),
            RingSpec::FiniteField(7, 2),
            RingSpec::FiniteField(3, 4),
        ];
        for spec in specs {
            let r = make_ring(&spec).unwrap();
            let out = solve_three_squares(&r, 8);
            if let ThreeSquaresOutcome::Solution(s) = &out {
                assert!(s.verify(&r));
            }
            assert_eq!(matches!(out, ThreeSquaresOutcome::Solution(_)), naive_has_solution(&r), "{spec}");
        }
    }

    #[test]
    fn odd_prime_powers_always_solvable() {
        for p in crate::numtheory::primes_below(344).into_iter().filter(|&p| p > 2) {
            let mut q = p;
            while q <= 343 {
                let r = make_ring(&RingSpec::ModN(q)).unwrap();
                assert!(matches!(solve_three_squares(&r, 8), ThreeSquaresOutcome::Solution(_)), "Z/{q}");
                q *= p;
            }
        }
    }

    #[test]
    fn large_prime_field_uses_tonelli_shanks() {
        let p = 1_000_000_007u64;
        let r = make_ring(&RingSpec::FiniteField(p, 1)).unwrap();
        let ThreeSquaresOutcome::Solution(s) = solve_three_squares(&r, 8) else { panic!() };
        assert!(s.verify(&r));
    }

    #[test]
    fn rationals_have_no_solution() {
        let q = make_ring(&RingSpec::Rationals).unwrap();
        assert_eq!(solve_three_squares(&q, 8), ThreeSquaresOutcome::NoSolution);
    }

    #[test]
    fn gaussian_rationals_use_i() {
        let r = make_ring(&RingSpec::Cyclotomic(4)).unwrap();
        let ThreeSquaresOutcome::Solution(s) = solve_three_squares(&r, 8) else { panic!() };
        assert_eq!(s.x, r.generator_x());
        assert!(r.is_zero(&s.y) && r.is_zero(&s.z));
        assert!(s.verify(&r));
    }

    #[test]
    fn level_table() {
        assert_eq!(level_classify_prime(3).unwrap(), Level::Level2);
        assert_eq!(level_classify_prime(5).unwrap(), Level::Level2);
        assert_eq!(level_classify_prime(7).unwrap(), Level::Level4);
        assert_eq!(level_classify_prime(17).unwrap(), Level::TwoOrFour);
        assert!(level_classify_prime(2).is_err());
        assert!(level_classify_prime(9).is_err());
    }

    #[test]
    fn level_two_primes_have_two_square_representations() {
        for p in [3u64, 5] {
            let r = make_ring(&RingSpec::Cyclotomic(p)).unwrap();
            let (a, b) = two_squares_search(&r, 8).expect("level 2");
            let sum = r.add(&r.mul(&a, &a), &r.mul(&b, &b));
            assert_eq!(sum, r.from_int(-1));
        }
    }

    #[test]
    fn zeta7_has_no_two_square_representation() {
        let r = make_ring(&RingSpec::Cyclotomic(7)).unwrap();
        assert!(two_squares_search(&r, 2).is_none());
        assert_eq!(solve_three_squares(&r, 8), ThreeSquaresOutcome::NoSolution);
    }

    #[test]
    fn composite_conductors() {
        // Q(zeta_6) = Q(zeta_3)
        let r6 = make_ring(&RingSpec::Cyclotomic(6)).unwrap();
        let ThreeSquaresOutcome::Solution(s) = solve_three_squares(&r6, 8) else { panic!() };
        assert!(s.verify(&r6));
        // 3 | 21 has level 2, which ascends to Q(zeta_21)
        let r21 = make_ring(&RingSpec::Cyclotomic(21)).unwrap();
        let ThreeSquaresOutcome::Solution(s) = solve_three_squares(&r21, 8) else { panic!() };
        assert!(s.verify(&r21));
        let r2 = make_ring(&RingSpec::Cyclotomic(2)).unwrap();
        assert_eq!(solve_three_squares(&r2, 8), ThreeSquaresOutcome::NoSolution);
    }
}
