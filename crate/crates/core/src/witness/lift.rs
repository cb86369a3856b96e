//! *-clean decompositions and their lift from `RH` to `R(H x C2)`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::coeff::CoefficientRing;
use crate::error::{Error, Result};
use crate::groupring::GroupRingElement;
use crate::groups::{build_abelian, direct_product, FiniteGroup, InvolutionMap};

/// `target = unit + projection`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarCleanDecomposition {
    pub unit: GroupRingElement,
    pub projection: GroupRingElement,
}

impl StarCleanDecomposition {
    pub fn target(&self) -> GroupRingElement {
        self.unit.add(&self.projection).expect("parts share a carrier")
    }

    /// Checks that `unit` is a unit and `projection` is a projection for `sigma`.
    pub fn validate(&self, sigma: &InvolutionMap) -> Result<()> {
        self.unit.check_same_carrier(&self.projection)?;
        if !self.unit.is_unit() {
            return Err(Error::InvalidDecomposition(format!("{} is not a unit", self.unit)));
        }
        if !self.projection.is_projection(sigma) {
            return Err(Error::InvalidDecomposition(format!("{} is not a projection", self.projection)));
        }
        Ok(())
    }

    /// Validates and checks that the parts add up to `target`.
    pub fn validate_for(&self, target: &GroupRingElement, sigma: &InvolutionMap) -> Result<()> {
        self.validate(sigma)?;
        if self.target() != *target {
            return Err(Error::InvalidDecomposition("unit + projection differs from the target".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({ "unit": self.unit.to_json(), "projection": self.projection.to_json() })
    }
}

/// `G = H x C2`, with the involution of `H` extended by the identity on `C2`.
#[derive(Debug, Clone)]
pub struct C2Extension {
    h: Arc<FiniteGroup>,
    g: Arc<FiniteGroup>,
    a: usize,
    c2_identity: usize,
    sigma: InvolutionMap,
}

impl C2Extension {
    pub fn new(sigma_h: &InvolutionMap) -> Result<Self> {
        let h = Arc::clone(sigma_h.group());
        let c2 = Arc::new(build_abelian(&[2])?);
        let g = Arc::new(direct_product(&h, &c2)?);
        let sigma_c2 = InvolutionMap::identity(Arc::clone(&c2))?;
        let sigma = sigma_h.product(&sigma_c2, Arc::clone(&g))?;
        let a = h.identity() * 2 + c2.generator("c1").expect("C2 has a generator");
        Ok(C2Extension { h, g, a, c2_identity: c2.identity(), sigma })
    }

    pub fn h(&self) -> &Arc<FiniteGroup> {
        &self.h
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    /// The generator of the `C2` factor.
    pub fn a(&self) -> usize {
        self.a
    }

    pub fn involution(&self) -> &InvolutionMap {
        &self.sigma
    }

    /// The image of `h` in `G`.
    pub fn embed_group_element(&self, h: usize) -> usize {
        h * 2 + self.c2_identity
    }

    pub fn embed(&self, r: &GroupRingElement) -> Result<GroupRingElement> {
        if **r.group() != *self.h {
            return Err(Error::MismatchedCarriers("element is not over H".into()));
        }
        let ring = r.ring();
        let mut out = GroupRingElement::zero(&self.g, ring);
        for h in r.support() {
            out.set_coeff(self.embed_group_element(h), r.coeff(h).clone());
        }
        Ok(out)
    }

    /// `(1 + a)/2` and `(1 - a)/2`.
    pub fn idempotents(&self, ring: &Arc<CoefficientRing>) -> (GroupRingElement, GroupRingElement) {
        let one = GroupRingElement::one(&self.g, ring);
        let a = GroupRingElement::basis(&self.g, ring, self.a);
        let half = ring.two_inverse();
        (one.add(&a).unwrap().scalar_mul(&half), one.sub(&a).unwrap().scalar_mul(&half))
    }

    /// `(r/2)(1 - a)`, the element of the `(1 - a)/2` component determined by `r`.
    pub fn delta_element(&self, r: &GroupRingElement) -> Result<GroupRingElement> {
        let (_, minus) = self.idempotents(r.ring());
        self.embed(r)?.mul(&minus)
    }
}

/// Lifts `r = u + p` in `RH` to the decomposition
/// `(u/2)(1 - a) + (p/2)(1 - a)` of `(r/2)(1 - a)`, glued with a
/// decomposition `c = u_c + p_c` on the `(1 + a)/2` side (`0 = (-1) + 1` by
/// default). The result decomposes `c(1 + a)/2 + (r/2)(1 - a)` in `RG`.
pub fn lift_c2(
    ext: &C2Extension,
    sigma_h: &InvolutionMap,
    dec: &StarCleanDecomposition,
    plus_side: Option<&StarCleanDecomposition>,
) -> Result<StarCleanDecomposition> {
    dec.validate(sigma_h)
        .map_err(|e| Error::InvalidDecomposition(format!("input decomposition in RH: {e}")))?;
    let ring = dec.unit.ring();
    let (plus, minus) = ext.idempotents(ring);
    let (u_c, p_c) = match plus_side {
        Some(side) => {
            side.validate(sigma_h)
                .map_err(|e| Error::InvalidDecomposition(format!("(1+a)/2 side: {e}")))?;
            (side.unit.clone(), side.projection.clone())
        }
        None => {
            let one = GroupRingElement::one(ext.h(), ring);
            (one.neg(), one)
        }
    };
    let unit = ext.embed(&u_c)?.mul(&plus)?.add(&ext.embed(&dec.unit)?.mul(&minus)?)?;
    let projection = ext.embed(&p_c)?.mul(&plus)?.add(&ext.embed(&dec.projection)?.mul(&minus)?)?;
    let lifted = StarCleanDecomposition { unit, projection };
    lifted
        .validate(ext.involution())
        .map_err(|e| Error::Discrepancy(format!("lifted decomposition fails validation: {e}")))?;
    Ok(lifted)
}
