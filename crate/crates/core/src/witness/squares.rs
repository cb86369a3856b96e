//! Sums of two squares built from a central element `g` with `g^p = 1`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::coeff::CoefficientRing;
use crate::error::{Error, Result};
use crate::groupring::GroupRingElement;
use crate::groups::FiniteGroup;
use crate::numtheory::mod_pow;

/// `a^2 + b^2 = prod_{k=0..t} (1 + g^{2^k})` inside `RG`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSquaresCertificate {
    pub a: GroupRingElement,
    pub b: GroupRingElement,
    pub t: u32,
    pub g: usize,
    pub p: u64,
}

impl TwoSquaresCertificate {
    /// The right-hand side `prod_{k=0..t} (1 + g^{2^k})`.
    pub fn product(&self) -> GroupRingElement {
        let group = self.a.group();
        let ring = self.a.ring();
        let one = GroupRingElement::one(group, ring);
        let mut out = one.clone();
        for k in 0..=self.t {
            let factor = one.add(&power_of_two_power(group, ring, self.g, k, self.p)).unwrap();
            out = out.mul(&factor).unwrap();
        }
        out
    }

    pub fn verify(&self) -> bool {
        let lhs = self.a.mul(&self.a).unwrap().add(&self.b.mul(&self.b).unwrap()).unwrap();
        lhs == self.product()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "g": self.a.group().name(self.g),
            "p": self.p,
            "t": self.t,
            "a": self.a.to_json(),
            "b": self.b.to_json(),
        })
    }
}

/// The basis element `g^{2^k}`, with the exponent reduced modulo `p`.
fn power_of_two_power(group: &Arc<FiniteGroup>, ring: &Arc<CoefficientRing>, g: usize, k: u32, p: u64) -> GroupRingElement {
    let e = mod_pow(2, k as u64, p);
    GroupRingElement::basis(group, ring, group.pow(g, e))
}

fn check_hypotheses(group: &FiniteGroup, g: usize, p: u64) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::Hypothesis(format!("p = {p} must be odd and at least 3")));
    }
    if group.pow(g, p) != group.identity() {
        return Err(Error::Hypothesis(format!("{}^{p} is not 1", group.name(g))));
    }
    if (0..group.order()).any(|h| group.mul(g, h) != group.mul(h, g)) {
        return Err(Error::Hypothesis(format!("{} is not central", group.name(g))));
    }
    Ok(())
}

/// Runs the recursion `(a, b) -> (a g^{2^t} + b, b g^{2^t} - a)` from the base
/// case `1 + g = 1^2 + (g^{(p+1)/2})^2` up to depth `t`.
pub fn two_squares(
    group: &Arc<FiniteGroup>,
    ring: &Arc<CoefficientRing>,
    g: usize,
    p: u64,
    t: u32,
) -> Result<TwoSquaresCertificate> {
    check_hypotheses(group, g, p)?;
    let mut a = GroupRingElement::one(group, ring);
    let mut b = GroupRingElement::basis(group, ring, group.pow(g, p.div_ceil(2)));
    for step in 0..t {
        let h = power_of_two_power(group, ring, g, step, p);
        let next_a = a.mul(&h)?.add(&b)?;
        let next_b = b.mul(&h)?.sub(&a)?;
        a = next_a;
        b = next_b;
    }
    let cert = TwoSquaresCertificate { a, b, t, g, p };
    if !cert.verify() {
        return Err(Error::Discrepancy(format!("two-squares certificate fails at p = {p}, t = {t}")));
    }
    Ok(cert)
}

/// `(alpha, beta)` with `(alpha^2 + beta^2 + g^{2^n})(g - 1) = 0`, taken from
/// the two-squares certificate of depth `n - 1`. Requires `p | 2^n + 1`.
pub fn annihilator_pair(
    group: &Arc<FiniteGroup>,
    ring: &Arc<CoefficientRing>,
    g: usize,
    p: u64,
    n: u32,
) -> Result<(GroupRingElement, GroupRingElement)> {
    if n == 0 || p < 3 || !(mod_pow(2, n as u64, p) + 1).is_multiple_of(p) {
        return Err(Error::Hypothesis(format!("{p} does not divide 2^{n} + 1")));
    }
    let cert = two_squares(group, ring, g, p, n - 1)?;
    let identity = annihilator_identity(&cert.a, &cert.b, g, p, n);
    if !identity.is_zero() {
        return Err(Error::Discrepancy(format!("annihilator identity fails at p = {p}, n = {n}")));
    }
    Ok((cert.a, cert.b))
}

/// `(alpha^2 + beta^2 + g^{2^n})(g - 1)`.
pub fn annihilator_identity(alpha: &GroupRingElement, beta: &GroupRingElement, g: usize, p: u64, n: u32) -> GroupRingElement {
    let group = alpha.group();
    let ring = alpha.ring();
    let sum = alpha
        .mul(alpha)
        .unwrap()
        .add(&beta.mul(beta).unwrap())
        .unwrap()
        .add(&power_of_two_power(group, ring, g, n, p))
        .unwrap();
    let g_minus_one = GroupRingElement::basis(group, ring, g).sub(&GroupRingElement::one(group, ring)).unwrap();
    sum.mul(&g_minus_one).unwrap()
}
