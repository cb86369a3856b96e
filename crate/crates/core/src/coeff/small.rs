//! Table-driven arithmetic for small finite coefficient rings.
//!
//! Brute-force enumeration spends nearly all its time in coefficient
//! arithmetic and in deciding whether a group-ring element is a unit. Both are
//! done here on `u16` element indices through precomputed tables.

use super::{CoefficientRing, RingKind};
use crate::numtheory::factorize;

/// Rings with at most this many elements get lookup tables.
pub const SMALL_RING_LIMIT: u64 = 1024;

#[derive(Debug, Clone)]
pub struct SmallRing {
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    one: u16,
    fields: Vec<ResidueField>,
}

/// A residue field `R/m` used for unit tests: `x` in `R` is a unit iff its
/// image is non-zero in every residue field.
#[derive(Debug, Clone)]
struct ResidueField {
    q: usize,
    reduce: Vec<u16>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl SmallRing {
    pub(crate) fn build(ring: &CoefficientRing) -> Option<SmallRing> {
        let q = ring.size()?;
        if q > SMALL_RING_LIMIT {
            return None;
        }
        let q = q as usize;
        let elems: Vec<_> = (0..q as u64).map(|i| ring.element_at(i)).collect();
        let idx = |e: &super::RingElement| ring.index_of(e) as u16;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = idx(&ring.add(&elems[a], &elems[b]));
                mul[a * q + b] = idx(&ring.mul(&elems[a], &elems[b]));
            }
        }
        let neg = elems.iter().map(|e| idx(&ring.neg(e))).collect();
        let one = idx(&ring.one());
        let fields = match ring.kind() {
            RingKind::ModN { n } => factorize(*n)
                .into_iter()
                .map(|(p, _)| ResidueField::prime(p, (0..q).map(|v| (v as u64 % p) as u16).collect()))
                .collect(),
            RingKind::FiniteField { .. } => {
                let inv = (0..q)
                    .map(|a| if a == 0 { 0 } else { idx(&ring.inverse(&elems[a]).unwrap()) })
                    .collect();
                vec![ResidueField {
                    q,
                    reduce: (0..q as u16).collect(),
                    add: add.clone(),
                    mul: mul.clone(),
                    neg: (0..q).map(|a| idx(&ring.neg(&elems[a]))).collect(),
                    inv,
                }]
            }
            _ => return None,
        };
        Some(SmallRing { q, add, mul, neg, one, fields })
    }

    pub fn size(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn one(&self) -> u16 {
        self.one
    }

    pub fn is_unit(&self, a: u16) -> bool {
        self.fields.iter().all(|f| f.reduce[a as usize] != 0)
    }

    /// Whether the square matrix (row-major, ring indices) is invertible.
    /// Over a commutative finite ring this holds iff it is invertible over
    /// every residue field.
    pub fn matrix_invertible(&self, matrix: &[u16], n: usize, scratch: &mut Vec<u16>) -> bool {
        self.fields.iter().all(|f| f.nonsingular(matrix, n, scratch))
    }
}

impl ResidueField {
    fn prime(p: u64, reduce: Vec<u16>) -> Self {
        let q = p as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = ((a + b) % q) as u16;
                mul[a * q + b] = ((a * b) % q) as u16;
            }
        }
        let neg = (0..q).map(|a| ((q - a) % q) as u16).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { crate::numtheory::mod_inv(a as u64, p).unwrap() as u16 })
            .collect();
        ResidueField { q, reduce, add, mul, neg, inv }
    }

    fn nonsingular(&self, matrix: &[u16], n: usize, m: &mut Vec<u16>) -> bool {
        m.clear();
        m.extend(matrix.iter().map(|&v| self.reduce[v as usize]));
        let q = self.q;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return false;
            };
            if piv != col {
                for c in col..n {
                    m.swap(piv * n + c, col * n + c);
                }
            }
            let inv = self.inv[m[col * n + col] as usize] as usize;
            for r in col + 1..n {
                let v = m[r * n + col] as usize;
                if v == 0 {
                    continue;
                }
                let factor = self.neg[self.mul[v * q + inv] as usize] as usize;
                for c in col..n {
                    let prod = self.mul[factor * q + m[col * n + c] as usize] as usize;
                    m[r * n + c] = self.add[m[r * n + c] as usize * q + prod];
                }
            }
        }
        true
    }
}
