//! Units of `RG` through the left regular representation
//! `M[h][g] = alpha_{h g^-1}`, so that `(alpha beta)_h = sum_g M[h][g] beta_g`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::GroupRingElement;
use crate::coeff::{CoefficientRing, RingElement, RingKind};
use crate::numtheory::{factorize, mod_inv, mod_mul};

fn regular_matrix(a: &GroupRingElement) -> Vec<Vec<RingElement>> {
    let g = a.group();
    let n = g.order();
    (0..n).map(|h| (0..n).map(|k| a.coeff(g.mul(h, g.inv(k))).clone()).collect()).collect()
}

fn regular_matrix_indices(a: &GroupRingElement) -> Vec<u64> {
    let g = a.group();
    let n = g.order();
    let ring = a.ring();
    let mut out = Vec::with_capacity(n * n);
    for h in 0..n {
        for k in 0..n {
            out.push(ring.index_of(a.coeff(g.mul(h, g.inv(k)))));
        }
    }
    out
}

/// Gaussian elimination over `F_p` on a row-major matrix; solves `M v = rhs`
/// when `rhs` is given. Returns `None` when `M` is singular.
fn eliminate_mod_p(matrix: &[u64], n: usize, p: u64, rhs: Option<&[u64]>) -> Option<Vec<u64>> {
    let mut m: Vec<u64> = matrix.iter().map(|v| v % p).collect();
    let mut b: Vec<u64> = rhs.map(|r| r.iter().map(|v| v % p).collect()).unwrap_or_default();
    let with_rhs = rhs.is_some();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r * n + col] != 0)?;
        if piv != col {
            for c in 0..n {
                m.swap(piv * n + c, col * n + c);
            }
            if with_rhs {
                b.swap(piv, col);
            }
        }
        let inv = mod_inv(m[col * n + col], p).unwrap();
        for c in col..n {
            m[col * n + c] = mod_mul(m[col * n + c], inv, p);
        }
        if with_rhs {
            b[col] = mod_mul(b[col], inv, p);
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r * n + col];
            if f == 0 {
                continue;
            }
            if !with_rhs && r < col {
                continue;
            }
            for c in col..n {
                let sub = mod_mul(f, m[col * n + c], p);
                m[r * n + c] = (m[r * n + c] + p - sub) % p;
            }
            if with_rhs {
                b[r] = (b[r] + p - mod_mul(f, b[col], p)) % p;
            }
        }
    }
    Some(b)
}

/// Gauss-Jordan over a field of coefficients; returns the determinant and,
/// if requested and the matrix is invertible, the solution of `M v = rhs`.
fn eliminate_field(
    ring: &CoefficientRing,
    mut m: Vec<Vec<RingElement>>,
    mut rhs: Option<Vec<RingElement>>,
) -> (RingElement, Option<Vec<RingElement>>) {
    let n = m.len();
    let mut det = ring.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !ring.is_zero(&m[r][col])) else {
            return (ring.zero(), None);
        };
        if piv != col {
            m.swap(piv, col);
            if let Some(b) = rhs.as_mut() {
                b.swap(piv, col);
            }
            det = ring.neg(&det);
        }
        det = ring.mul(&det, &m[col][col]);
        let inv = ring.inverse(&m[col][col]).expect("nonzero field element");
        for c in col..n {
            m[col][c] = ring.mul(&m[col][c], &inv);
        }
        if let Some(b) = rhs.as_mut() {
            b[col] = ring.mul(&b[col], &inv);
        }
        for r in 0..n {
            if r == col || ring.is_zero(&m[r][col]) {
                continue;
            }
            if rhs.is_none() && r < col {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..n {
                let sub = ring.mul(&f, &m[col][c]);
                m[r][c] = ring.sub(&m[r][c], &sub);
            }
            if let Some(b) = rhs.as_mut() {
                let sub = ring.mul(&f, &b[col]);
                b[r] = ring.sub(&b[r], &sub);
            }
        }
    }
    (det, rhs)
}

/// Fraction-free (Bareiss) determinant over `Z`.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub(super) fn regular_determinant(a: &GroupRingElement) -> RingElement {
    let ring = a.ring();
    match ring.kind() {
        RingKind::ModN { n } if !ring.is_field() => {
            let idx = regular_matrix_indices(a);
            let size = a.group().order();
            let m: Vec<Vec<BigInt>> = idx.chunks(size).map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect();
            let det = bareiss(m).mod_floor(&BigInt::from(*n));
            let det: u64 = (&det).try_into().unwrap();
            RingElement::Residue(det)
        }
        _ => eliminate_field(ring, regular_matrix(a), None).0,
    }
}

pub(super) fn is_unit(a: &GroupRingElement) -> bool {
    let ring = a.ring();
    let n = a.group().order();
    if let Some(small) = ring.small() {
        let idx: Vec<u16> = regular_matrix_indices(a).into_iter().map(|v| v as u16).collect();
        return small.matrix_invertible(&idx, n, &mut Vec::new());
    }
    match ring.kind() {
        RingKind::ModN { n: modulus } => {
            let idx = regular_matrix_indices(a);
            factorize(*modulus).into_iter().all(|(p, _)| eliminate_mod_p(&idx, n, p, None).is_some())
        }
        _ => !ring.is_zero(&eliminate_field(ring, regular_matrix(a), None).0),
    }
}

fn crt(residues: &[(u64, u64)]) -> (u64, u64) {
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for &(r, p) in residues {
        // x + m t ≡ r (mod p)
        let mm = (m % p as u128) as u64;
        let t = mod_mul((r + p - (x % p as u128) as u64) % p, mod_inv(mm, p).unwrap(), p);
        x += m * t as u128;
        m *= p as u128;
    }
    (x as u64, m as u64)
}

pub(super) fn unit_inverse(a: &GroupRingElement) -> Option<GroupRingElement> {
    let ring = a.ring();
    let group = a.group();
    let n = group.order();
    let id = group.identity();
    let candidate = match ring.kind() {
        RingKind::ModN { n: modulus } if !ring.is_field() => {
            let idx = regular_matrix_indices(a);
            let mut rhs = vec![0u64; n];
            rhs[id] = 1;
            let per_prime: Vec<(u64, Vec<u64>)> = factorize(*modulus)
                .into_iter()
                .map(|(p, _)| eliminate_mod_p(&idx, n, p, Some(&rhs)).map(|v| (p, v)))
                .collect::<Option<_>>()?;
            let coeffs: Vec<RingElement> = (0..n)
                .map(|g| {
                    let res: Vec<(u64, u64)> = per_prime.iter().map(|(p, v)| (v[g], *p)).collect();
                    ring.from_int(crt(&res).0 as i64)
                })
                .collect();
            let mut beta = GroupRingElement::from_coeffs(group, ring, coeffs).ok()?;
            // Newton iteration: 1 - alpha beta is nilpotent and squares each step.
            let two = GroupRingElement::scalar(group, ring, ring.from_int(2));
            for _ in 0..64 {
                let prod = a.mul(&beta).ok()?;
                if prod.is_one() {
                    break;
                }
                beta = beta.mul(&two.sub(&prod).ok()?).ok()?;
            }
            beta
        }
        _ => {
            let mut rhs = vec![ring.zero(); n];
            rhs[id] = ring.one();
            let (_, sol) = eliminate_field(ring, regular_matrix(a), Some(rhs));
            GroupRingElement::from_coeffs(group, ring, sol?).ok()?
        }
    };
    let ok = a.mul(&candidate).ok()?.is_one() && candidate.mul(a).ok()?.is_one();
    ok.then_some(candidate)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::GroupRingElement;
    use crate::coeff::{make_ring, RingSpec};
    use crate::groups::build_abelian;

    #[test]
    fn exhaustive_inverse_search_agrees_on_c2_c2_over_f3() {
        // 3^4 = 81 elements; every unit must have a two-sided inverse found by search
        let g = Arc::new(build_abelian(&[2, 2]).unwrap());
        let r = Arc::new(make_ring(&RingSpec::FiniteField(3, 1)).unwrap());
        let all: Vec<GroupRingElement> = (0..81u16)
            .map(|v| {
                let idx: Vec<u16> = (0..4).map(|i| (v / 3u16.pow(i)) % 3).collect();
                GroupRingElement::from_indices(&g, &r, &idx)
            })
            .collect();
        for a in &all {
            let found = all.iter().any(|b| a.mul(b).unwrap().is_one());
            assert_eq!(a.is_unit(), found, "{a}");
            assert_eq!(a.unit_inverse().is_some(), found);
        }
    }

    #[test]
    fn exhaustive_inverse_search_agrees_on_c3_over_z9() {
        let g = Arc::new(build_abelian(&[3]).unwrap());
        let r = Arc::new(make_ring(&RingSpec::ModN(9)).unwrap());
        let all: Vec<GroupRingElement> = (0..729u16)
            .map(|v| {
                let idx: Vec<u16> = (0..3).map(|i| (v / 9u16.pow(i)) % 9).collect();
                GroupRingElement::from_indices(&g, &r, &idx)
            })
            .collect();
        for a in all.iter().step_by(7) {
            let found = all.iter().any(|b| a.mul(b).unwrap().is_one());
            assert_eq!(a.is_unit(), found, "{a}");
        }
    }

    #[test]
    fn rational_group_ring_units() {
        let g = Arc::new(build_abelian(&[3]).unwrap());
        let r = Arc::new(make_ring(&RingSpec::Rationals).unwrap());
        let c = g.generator("c1").unwrap();
        // 1 + c has augmentation 2, and is invertible over Q (not over Z)
        let a = GroupRingElement::one(&g, &r).add(&GroupRingElement::basis(&g, &r, c)).unwrap();
        let inv = a.unit_inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_one());
        // 1 - c is a zero divisor
        let b = GroupRingElement::one(&g, &r).sub(&GroupRingElement::basis(&g, &r, c)).unwrap();
        assert!(!b.is_unit());
    }
}
