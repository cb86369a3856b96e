//! Group rings `RG` over the exact coefficient rings, with the involution
//! extended linearly, unit testing through the regular representation and the
//! central splitting by `e = (1+s)/2`, `f = (1-s)/2`.

mod enumerate;
mod indexed;
mod linalg;
mod split;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{Map, Value};

use crate::coeff::{CoefficientRing, RingElement};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, InvolutionMap};

pub use enumerate::{cardinality, involution_orbits, ElementEnumerator, ProjectionEnumerator, UnitEnumerator};
pub use indexed::IndexedGroupRing;
pub use split::{central_idempotents, quotient_by_central, CentralIdempotentPair, QuotientGroup, SplitElement};

/// An element `sum_g alpha_g g` of `RG`, stored densely.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    ring: Arc<CoefficientRing>,
    coeffs: Vec<RingElement>,
}

fn same<T: PartialEq>(a: &Arc<T>, b: &Arc<T>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElement({self})")
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.ring.format_element(c);
            let name = self.group.name(g);
            if self.ring.is_one(c) {
                write!(f, "{name}")?;
            } else if name == "1" {
                write!(f, "({cs})")?;
            } else {
                write!(f, "({cs})*{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl GroupRingElement {
    pub fn zero(group: &Arc<FiniteGroup>, ring: &Arc<CoefficientRing>) -> Self {
        GroupRingElement { group: Arc::clone(group), ring: Arc::clone(ring), coeffs: vec![ring.zero(); group.order()] }
    }

    pub fn one(group: &Arc<FiniteGroup>, ring: &Arc<CoefficientRing>) -> Self {
        Self::scalar(group, ring, ring.one())
    }

    /// `r * 1`.
    pub fn scalar(group: &Arc<FiniteGroup>, ring: &Arc<CoefficientRing>, r: RingElement) -> Self {
        let mut out = Self::zero(group, ring);
        out.coeffs[group.identity()] = r;
        out
    }

    /// The group element `g` viewed in `RG`.
    pub fn basis(group: &Arc<FiniteGroup>, ring: &Arc<CoefficientRing>, g: usize) -> Self {
        let mut out = Self::zero(group, ring);
        out.coeffs[g] = ring.one();
        out
    }

    pub fn from_coeffs(group: &Arc<FiniteGroup>, ring: &Arc<CoefficientRing>, coeffs: Vec<RingElement>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::MismatchedCarriers(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        if let Some(bad) = coeffs.iter().find(|c| !ring.contains(c)) {
            return Err(Error::MismatchedCarriers(format!("coefficient {bad:?} is not in {ring}")));
        }
        Ok(GroupRingElement { group: Arc::clone(group), ring: Arc::clone(ring), coeffs })
    }

    /// Finite rings only: coefficients given as ring indices.
    pub fn from_indices(group: &Arc<FiniteGroup>, ring: &Arc<CoefficientRing>, idx: &[u16]) -> Self {
        debug_assert_eq!(idx.len(), group.order());
        GroupRingElement {
            group: Arc::clone(group),
            ring: Arc::clone(ring),
            coeffs: idx.iter().map(|&i| ring.element_at(i as u64)).collect(),
        }
    }

    /// Finite rings only: coefficient indices.
    pub fn to_indices(&self) -> Vec<u16> {
        self.coeffs.iter().map(|c| self.ring.index_of(c) as u16).collect()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ring(&self) -> &Arc<CoefficientRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> &RingElement {
        &self.coeffs[g]
    }

    pub fn set_coeff(&mut self, g: usize, r: RingElement) {
        self.coeffs[g] = r;
    }

    /// Indices of the group elements with non-zero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&g| !self.ring.is_zero(&self.coeffs[g])).collect()
    }

    pub fn check_same_carrier(&self, other: &Self) -> Result<()> {
        if !same(&self.group, &other.group) {
            return Err(Error::MismatchedCarriers("elements of different groups".into()));
        }
        if !same(&self.ring, &other.ring) {
            return Err(Error::MismatchedCarriers(format!("coefficients in {} and {}", self.ring, other.ring)));
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: Vec<RingElement>) -> Self {
        GroupRingElement { group: Arc::clone(&self.group), ring: Arc::clone(&self.ring), coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_carrier(other)?;
        Ok(self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.ring.add(a, b)).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_carrier(other)?;
        Ok(self.with_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.ring.sub(a, b)).collect()))
    }

    pub fn neg(&self) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| self.ring.neg(a)).collect())
    }

    pub fn scalar_mul(&self, r: &RingElement) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| self.ring.mul(r, a)).collect())
    }

    /// Convolution product `(alpha beta)_k = sum_{gh = k} alpha_g beta_h`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_carrier(other)?;
        let mut out = vec![self.ring.zero(); self.coeffs.len()];
        let lhs = self.support();
        let rhs = other.support();
        for &g in &lhs {
            for &h in &rhs {
                let k = self.group.mul(g, h);
                let prod = self.ring.mul(&self.coeffs[g], &other.coeffs[h]);
                out[k] = self.ring.add(&out[k], &prod);
            }
        }
        Ok(self.with_coeffs(out))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::one(&self.group, &self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        result
    }

    /// `sum_g alpha_g sigma(g)`.
    pub fn apply_involution(&self, sigma: &InvolutionMap) -> Result<Self> {
        if !same(sigma.group(), &self.group) {
            return Err(Error::MismatchedCarriers("involution acts on a different group".into()));
        }
        let mut out = vec![self.ring.zero(); self.coeffs.len()];
        for (g, c) in self.coeffs.iter().enumerate() {
            out[sigma.apply(g)] = c.clone();
        }
        Ok(self.with_coeffs(out))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(&self.group, &self.ring)
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).map(|sq| sq == *self).unwrap_or(false)
    }

    pub fn is_symmetric(&self, sigma: &InvolutionMap) -> bool {
        self.apply_involution(sigma).map(|a| a == *self).unwrap_or(false)
    }

    /// Idempotent and fixed by the involution.
    pub fn is_projection(&self, sigma: &InvolutionMap) -> bool {
        self.is_symmetric(sigma) && self.is_idempotent()
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// Commutes with every group element.
    pub fn is_central(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|h| {
            (0..n).all(|g| {
                // coefficient of h g h^-1 must equal that of g
                let conj = self.group.mul(self.group.mul(h, g), self.group.inv(h));
                self.coeffs[conj] == self.coeffs[g]
            })
        })
    }

    pub fn is_unit(&self) -> bool {
        linalg::is_unit(self)
    }

    /// The two-sided inverse, if `self` is a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        linalg::unit_inverse(self)
    }

    /// Determinant of the left regular representation.
    pub fn regular_determinant(&self) -> RingElement {
        linalg::regular_determinant(self)
    }

    /// `{element_name: coefficient_string}` over the support.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        let ordered: BTreeMap<usize, &RingElement> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !self.ring.is_zero(c)).collect();
        for (g, c) in ordered {
            map.insert(self.group.name(g).to_string(), Value::String(self.ring.format_element(c)));
        }
        Value::Object(map)
    }

    pub fn from_json(group: &Arc<FiniteGroup>, ring: &Arc<CoefficientRing>, value: &Value) -> Result<Self> {
        let Value::Object(map) = value else {
            return Err(Error::Parse { pos: 0, msg: "group ring element must be a JSON object".into() });
        };
        let mut out = Self::zero(group, ring);
        for (name, coef) in map {
            let g = group
                .index_of(name)
                .ok_or_else(|| Error::Parse { pos: 0, msg: format!("unknown group element {name:?}") })?;
            let text = match coef {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return Err(Error::Parse { pos: 0, msg: format!("bad coefficient for {name:?}") }),
            };
            let c = ring.parse_element(&text)?;
            out.coeffs[g] = ring.add(&out.coeffs[g], &c);
        }
        Ok(out)
    }
}
