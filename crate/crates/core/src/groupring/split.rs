//! The central splitting `RG = RG e + RG f` for a central involution `s`,
//! with `RG e` identified with `R(G/<s>)` by summing coefficients over cosets.

use std::collections::HashMap;
use std::sync::Arc;

use super::GroupRingElement;
use crate::coeff::CoefficientRing;
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, SLCStructure};

/// `G/<s>` with the projection and a fixed representative per coset.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    pub group: Arc<FiniteGroup>,
    /// `projection[g]` is the coset of `g`.
    pub projection: Vec<usize>,
    /// `representatives[c]` is the smallest index in coset `c`.
    pub representatives: Vec<usize>,
}

pub fn quotient_by_central(group: &Arc<FiniteGroup>, s: usize) -> Result<QuotientGroup> {
    let n = group.order();
    if group.mul(s, s) != group.identity() || s == group.identity() {
        return Err(Error::InvalidParameter("s must have order 2".into()));
    }
    if (0..n).any(|g| group.mul(g, s) != group.mul(s, g)) {
        return Err(Error::InvalidParameter("s must be central".into()));
    }
    let mut projection = vec![usize::MAX; n];
    let mut representatives = Vec::with_capacity(n / 2);
    for g in 0..n {
        if projection[g] == usize::MAX {
            let c = representatives.len();
            representatives.push(g);
            projection[g] = c;
            projection[group.mul(g, s)] = c;
        }
    }
    let m = representatives.len();
    let mut table = Vec::with_capacity(m * m);
    for &a in &representatives {
        for &b in &representatives {
            table.push(projection[group.mul(a, b)] as u32);
        }
    }
    let names: Vec<String> = representatives.iter().map(|&g| group.name(g).to_string()).collect();
    let mut generators = std::collections::BTreeMap::new();
    for (name, &g) in group.generators() {
        if g != s && representatives.contains(&g) {
            generators.insert(name.clone(), projection[g]);
        }
    }
    let quotient = FiniteGroup::from_table(table, names, generators)?;
    Ok(QuotientGroup { group: Arc::new(quotient), projection, representatives })
}

/// `e = (1+s)/2`, `f = (1-s)/2`.
#[derive(Debug, Clone)]
pub struct CentralIdempotentPair {
    pub s: usize,
    pub e: GroupRingElement,
    pub f: GroupRingElement,
    pub quotient: QuotientGroup,
}

/// `alpha e` in quotient coordinates together with `alpha f`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitElement {
    pub quotient_part: GroupRingElement,
    pub f_part: GroupRingElement,
}

pub fn central_idempotents(slc: &SLCStructure, ring: &Arc<CoefficientRing>) -> CentralIdempotentPair {
    CentralIdempotentPair::new(slc.group(), ring, slc.s()).expect("s is a central involution of an SLC-group")
}

impl CentralIdempotentPair {
    pub fn new(group: &Arc<FiniteGroup>, ring: &Arc<CoefficientRing>, s: usize) -> Result<Self> {
        let quotient = quotient_by_central(group, s)?;
        let half = ring.two_inverse();
        let one = GroupRingElement::one(group, ring);
        let sv = GroupRingElement::basis(group, ring, s);
        let e = one.add(&sv)?.scalar_mul(&half);
        let f = one.sub(&sv)?.scalar_mul(&half);
        Ok(CentralIdempotentPair { s, e, f, quotient })
    }

    pub fn split(&self, alpha: &GroupRingElement) -> Result<SplitElement> {
        alpha.check_same_carrier(&self.e)?;
        let ring = alpha.ring();
        let mut coset_sums = vec![ring.zero(); self.quotient.group.order()];
        for (g, c) in alpha.coeffs().iter().enumerate() {
            let k = self.quotient.projection[g];
            coset_sums[k] = ring.add(&coset_sums[k], c);
        }
        Ok(SplitElement {
            quotient_part: GroupRingElement::from_coeffs(&self.quotient.group, ring, coset_sums)?,
            f_part: alpha.mul(&self.f)?,
        })
    }

    /// `lift(beta) e + gamma`, the inverse of [`Self::split`].
    pub fn reassemble(&self, parts: &SplitElement) -> Result<GroupRingElement> {
        let ring = self.e.ring();
        let group = self.e.group();
        if parts.quotient_part.coeffs().len() != self.quotient.group.order() {
            return Err(Error::MismatchedCarriers("quotient part has the wrong length".into()));
        }
        let mut lift = GroupRingElement::zero(group, ring);
        for (c, coef) in parts.quotient_part.coeffs().iter().enumerate() {
            lift.set_coeff(self.quotient.representatives[c], coef.clone());
        }
        lift.mul(&self.e)?.add(&parts.f_part)
    }

    /// Whether `alpha = alpha f`.
    pub fn in_f_component(&self, alpha: &GroupRingElement) -> Result<bool> {
        Ok(alpha.mul(&self.f)? == *alpha)
    }

    /// Maps quotient coordinates of `G/<s>` names back to indices, for display.
    pub fn coset_names(&self) -> HashMap<usize, String> {
        (0..self.quotient.group.order()).map(|c| (c, self.quotient.group.name(c).to_string())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{make_ring, RingSpec};
    use crate::groups::{build_slc, canonical_involution, PresentationType};
    use proptest::prelude::*;

    fn setup(p: u64) -> (SLCStructure, Arc<CoefficientRing>, CentralIdempotentPair) {
        let s = build_slc(PresentationType::D2, 1, None, None, &[]).unwrap();
        let r = Arc::new(make_ring(&RingSpec::FiniteField(p, 1)).unwrap());
        let pair = central_idempotents(&s, &r);
        (s, r, pair)
    }

    #[test]
    fn idempotent_pair_over_f3() {
        let (s, r, pair) = setup(3);
        let g = s.group();
        let two = r.from_int(2);
        let mut e = GroupRingElement::zero(g, &r);
        e.set_coeff(g.identity(), two.clone());
        e.set_coeff(s.s(), two.clone());
        let mut f = GroupRingElement::zero(g, &r);
        f.set_coeff(g.identity(), two);
        f.set_coeff(s.s(), r.one());
        assert_eq!(pair.e, e);
        assert_eq!(pair.f, f);
        assert!(pair.e.is_idempotent() && pair.f.is_idempotent());
        assert!(pair.e.mul(&pair.f).unwrap().is_zero());
        assert!(pair.e.add(&pair.f).unwrap().is_one());
        let sigma = canonical_involution(&s);
        assert!(pair.e.is_projection(&sigma) && pair.f.is_projection(&sigma));
        assert!(pair.e.is_central() && pair.f.is_central());
    }

    #[test]
    fn split_of_one_and_s() {
        let (s, r, pair) = setup(5);
        let g = s.group();
        let one = GroupRingElement::one(g, &r);
        let sp = pair.split(&one).unwrap();
        assert!(sp.quotient_part.is_one());
        assert_eq!(sp.f_part, pair.f);
        let sv = GroupRingElement::basis(g, &r, s.s());
        let sp = pair.split(&sv).unwrap();
        assert!(sp.quotient_part.is_one());
        assert_eq!(sp.f_part, pair.f.neg());
        assert_eq!(pair.quotient.group.order(), 4);
    }

    proptest! {
        #[test]
        fn split_roundtrip(coeffs in prop::collection::vec(0u16..5, 8)) {
            let (s, r, pair) = setup(5);
            let a = GroupRingElement::from_indices(s.group(), &r, &coeffs);
            let sp = pair.split(&a).unwrap();
            prop_assert_eq!(pair.reassemble(&sp).unwrap(), a.clone());
            // (1 - s) e = 0 and alpha f = alpha - alpha e
            let one_minus_s = GroupRingElement::one(s.group(), &r).sub(&GroupRingElement::basis(s.group(), &r, s.s())).unwrap();
            prop_assert!(one_minus_s.mul(&pair.e).unwrap().is_zero());
            prop_assert_eq!(a.mul(&pair.f).unwrap(), a.sub(&a.mul(&pair.e).unwrap()).unwrap());
        }
    }
}
