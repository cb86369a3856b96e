//! Exhaustive enumeration of elements, units and projections of `RG` for
//! finite `R`, guarded by a cardinality budget.

use std::sync::Arc;

use num_bigint::BigUint;

use super::{GroupRingElement, IndexedGroupRing};
use crate::coeff::CoefficientRing;
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, InvolutionMap};

/// `q^coords` exactly.
pub fn cardinality(q: u64, coords: usize) -> BigUint {
    BigUint::from(q).pow(coords as u32)
}

fn check_budget(q: u64, coords: usize, budget: u64) -> Result<()> {
    let card = cardinality(q, coords);
    if card > BigUint::from(budget) {
        return Err(Error::budget(card, budget));
    }
    Ok(())
}

fn ring_size(ring: &CoefficientRing) -> Result<u64> {
    ring.size().ok_or_else(|| Error::InvalidRing(format!("cannot enumerate over the infinite ring {ring}")))
}

/// Odometer over `q^k` digit vectors, least significant digit first.
#[derive(Debug, Clone)]
struct Odometer {
    q: u16,
    digits: Vec<u16>,
    started: bool,
    done: bool,
}

impl Odometer {
    fn new(q: u16, k: usize) -> Self {
        Odometer { q, digits: vec![0; k], started: false, done: false }
    }

    fn advance(&mut self) -> Option<&[u16]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.digits);
        }
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < self.q {
                return Some(&self.digits);
            }
            *d = 0;
        }
        self.done = true;
        None
    }
}

/// Every element of `RG`, each exactly once.
pub struct ElementEnumerator {
    group: Arc<FiniteGroup>,
    ring: Arc<CoefficientRing>,
    odometer: Odometer,
}

impl ElementEnumerator {
    pub fn new(group: &Arc<FiniteGroup>, ring: &Arc<CoefficientRing>, budget: u64) -> Result<Self> {
        let q = ring_size(ring)?;
        check_budget(q, group.order(), budget)?;
        Ok(ElementEnumerator {
            group: Arc::clone(group),
            ring: Arc::clone(ring),
            odometer: Odometer::new(q as u16, group.order()),
        })
    }
}

impl Iterator for ElementEnumerator {
    type Item = GroupRingElement;

    fn next(&mut self) -> Option<GroupRingElement> {
        let digits = self.odometer.advance()?;
        Some(GroupRingElement::from_indices(&self.group, &self.ring, digits))
    }
}

/// Units of `RG`, streamed out of the full element enumeration.
pub struct UnitEnumerator {
    inner: ElementEnumerator,
    fast: IndexedGroupRing,
    matrix: Vec<u16>,
    scratch: Vec<u16>,
}

impl UnitEnumerator {
    pub fn new(group: &Arc<FiniteGroup>, ring: &Arc<CoefficientRing>, budget: u64) -> Result<Self> {
        Ok(UnitEnumerator {
            inner: ElementEnumerator::new(group, ring, budget)?,
            fast: IndexedGroupRing::new(group, ring)?,
            matrix: Vec::new(),
            scratch: Vec::new(),
        })
    }
}

impl Iterator for UnitEnumerator {
    type Item = GroupRingElement;

    fn next(&mut self) -> Option<GroupRingElement> {
        loop {
            let digits = self.inner.odometer.advance()?.to_vec();
            if self.fast.is_unit(&digits, &mut self.matrix, &mut self.scratch) {
                return Some(self.fast.to_element(&digits));
            }
        }
    }
}

/// Projections `p = p^2 = p*`, enumerated over the subspace of symmetric
/// elements (one free coordinate per orbit of the involution).
pub struct ProjectionEnumerator {
    fast: IndexedGroupRing,
    orbits: Vec<Vec<usize>>,
    odometer: Odometer,
    scratch: Vec<u16>,
}

/// Orbits of an involution on group indices, each sorted, ordered by least element.
pub fn involution_orbits(sigma: &InvolutionMap) -> Vec<Vec<usize>> {
    let n = sigma.group().order();
    (0..n)
        .filter(|&g| sigma.apply(g) >= g)
        .map(|g| if sigma.apply(g) == g { vec![g] } else { vec![g, sigma.apply(g)] })
        .collect()
}

impl ProjectionEnumerator {
    pub fn new(sigma: &InvolutionMap, ring: &Arc<CoefficientRing>, budget: u64) -> Result<Self> {
        let q = ring_size(ring)?;
        let orbits = involution_orbits(sigma);
        check_budget(q, orbits.len(), budget)?;
        Ok(ProjectionEnumerator {
            fast: IndexedGroupRing::new(sigma.group(), ring)?,
            odometer: Odometer::new(q as u16, orbits.len()),
            orbits,
            scratch: Vec::new(),
        })
    }
}

impl Iterator for ProjectionEnumerator {
    type Item = GroupRingElement;

    fn next(&mut self) -> Option<GroupRingElement> {
        loop {
            let digits = self.odometer.advance()?;
            let mut v = self.fast.zero();
            for (orbit, &d) in self.orbits.iter().zip(digits) {
                for &g in orbit {
                    v[g] = d;
                }
            }
            if self.fast.is_idempotent(&v, &mut self.scratch) {
                return Some(self.fast.to_element(&v));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{make_ring, RingSpec};
    use crate::groups::{build_abelian, build_slc, canonical_involution, classical_involution, PresentationType};
    use crate::groupring::central_idempotents;

    #[test]
    fn f3_c2_counts() {
        let g = Arc::new(build_abelian(&[2]).unwrap());
        let r = Arc::new(make_ring(&RingSpec::FiniteField(3, 1)).unwrap());
        assert_eq!(ElementEnumerator::new(&g, &r, 1000).unwrap().count(), 9);
        assert_eq!(UnitEnumerator::new(&g, &r, 1000).unwrap().count(), 4);
        let idempotents: Vec<_> = ElementEnumerator::new(&g, &r, 1000).unwrap().filter(|a| a.is_idempotent()).collect();
        assert_eq!(idempotents.len(), 4);
        let sigma = classical_involution(&g);
        assert_eq!(ProjectionEnumerator::new(&sigma, &r, 1000).unwrap().count(), 4);
    }

    #[test]
    fn q8_projections_include_e_and_f() {
        let s = build_slc(PresentationType::D2, 1, None, None, &[]).unwrap();
        let r = Arc::new(make_ring(&RingSpec::FiniteField(3, 1)).unwrap());
        let sigma = canonical_involution(&s);
        let projections: Vec<_> = ProjectionEnumerator::new(&sigma, &r, 1 << 20).unwrap().collect();
        let pair = central_idempotents(&s, &r);
        for p in [GroupRingElement::zero(s.group(), &r), GroupRingElement::one(s.group(), &r), pair.e, pair.f] {
            assert!(projections.contains(&p));
        }
        assert!(projections.iter().all(|p| p.is_projection(&sigma)));
    }

    #[test]
    fn budget_exceeded_reports_cardinality() {
        let s = build_slc(PresentationType::D2, 1, None, None, &[2, 2]).unwrap();
        let r = Arc::new(make_ring(&RingSpec::FiniteField(3, 1)).unwrap());
        let err = ElementEnumerator::new(s.group(), &r, 1 << 40).err().unwrap();
        assert_eq!(err, Error::budget(cardinality(3, 32), 1u64 << 40));
        let q = Arc::new(make_ring(&RingSpec::Rationals).unwrap());
        assert!(ElementEnumerator::new(s.group(), &q, 10).is_err());
    }
}
