//! Group-ring arithmetic on raw coefficient indices for small finite rings.
//! The brute-force checkers work exclusively through this type.

use std::sync::Arc;

use super::GroupRingElement;
use crate::coeff::{CoefficientRing, SmallRing};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, InvolutionMap};

#[derive(Debug, Clone)]
pub struct IndexedGroupRing {
    group: Arc<FiniteGroup>,
    ring: Arc<CoefficientRing>,
    small: Arc<SmallRing>,
    n: usize,
    table: Vec<u32>,
    /// `left_div[h * n + g] = h g^-1`
    left_div: Vec<u32>,
}

impl IndexedGroupRing {
    pub fn new(group: &Arc<FiniteGroup>, ring: &Arc<CoefficientRing>) -> Result<Self> {
        let small = ring
            .small()
            .cloned()
            .ok_or_else(|| Error::InvalidRing(format!("{ring} is too large for table-driven arithmetic")))?;
        let n = group.order();
        let mut table = Vec::with_capacity(n * n);
        let mut left_div = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(group.mul(a, b) as u32);
                left_div.push(group.mul(a, group.inv(b)) as u32);
            }
        }
        Ok(IndexedGroupRing { group: Arc::clone(group), ring: Arc::clone(ring), small, n, table, left_div })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ring(&self) -> &Arc<CoefficientRing> {
        &self.ring
    }

    pub fn small(&self) -> &SmallRing {
        &self.small
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.small.size()
    }

    pub fn zero(&self) -> Vec<u16> {
        vec![0; self.n]
    }

    pub fn one(&self) -> Vec<u16> {
        let mut v = self.zero();
        v[self.group.identity()] = self.small.one();
        v
    }

    pub fn basis(&self, g: usize) -> Vec<u16> {
        let mut v = self.zero();
        v[g] = self.small.one();
        v
    }

    pub fn to_element(&self, a: &[u16]) -> GroupRingElement {
        GroupRingElement::from_indices(&self.group, &self.ring, a)
    }

    pub fn from_element(&self, a: &GroupRingElement) -> Vec<u16> {
        a.to_indices()
    }

    #[inline]
    pub fn group_mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.n + h] as usize
    }

    pub fn add(&self, a: &[u16], b: &[u16]) -> Vec<u16> {
        a.iter().zip(b).map(|(&x, &y)| self.small.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[u16], b: &[u16]) -> Vec<u16> {
        a.iter().zip(b).map(|(&x, &y)| self.small.sub(x, y)).collect()
    }

    pub fn scale(&self, r: u16, a: &[u16]) -> Vec<u16> {
        a.iter().map(|&x| self.small.mul(r, x)).collect()
    }

    pub fn mul_into(&self, a: &[u16], b: &[u16], out: &mut [u16]) {
        out.iter_mut().for_each(|v| *v = 0);
        let n = self.n;
        for (g, &ag) in a.iter().enumerate() {
            if ag == 0 {
                continue;
            }
            let row = &self.table[g * n..(g + 1) * n];
            for (h, &bh) in b.iter().enumerate() {
                if bh == 0 {
                    continue;
                }
                let k = row[h] as usize;
                out[k] = self.small.add(out[k], self.small.mul(ag, bh));
            }
        }
    }

    pub fn mul(&self, a: &[u16], b: &[u16]) -> Vec<u16> {
        let mut out = self.zero();
        self.mul_into(a, b, &mut out);
        out
    }

    pub fn is_idempotent(&self, a: &[u16], scratch: &mut Vec<u16>) -> bool {
        scratch.resize(self.n, 0);
        self.mul_into(a, a, scratch);
        scratch[..] == *a
    }

    pub fn apply_involution(&self, sigma: &InvolutionMap, a: &[u16]) -> Vec<u16> {
        let mut out = self.zero();
        for (g, &c) in a.iter().enumerate() {
            out[sigma.apply(g)] = c;
        }
        out
    }

    /// Invertibility of the left regular representation over every residue field.
    pub fn is_unit(&self, a: &[u16], matrix: &mut Vec<u16>, scratch: &mut Vec<u16>) -> bool {
        // cheap necessary condition: the augmentation must be a unit
        let aug = a.iter().fold(0u16, |acc, &c| self.small.add(acc, c));
        if !self.small.is_unit(aug) {
            return false;
        }
        let n = self.n;
        matrix.clear();
        matrix.extend(self.left_div.iter().map(|&k| a[k as usize]));
        self.small.matrix_invertible(matrix, n, scratch)
    }
}
