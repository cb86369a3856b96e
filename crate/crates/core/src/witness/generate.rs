//! The six witness constructions, tried in a fixed order.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use super::annihilator_pair;
use crate::coeff::{solve_three_squares, CoefficientRing, ThreeSquaresOutcome, ThreeSquaresSolution};
use crate::groupring::GroupRingElement;
use crate::groups::{PresentationType, SLCStructure};
use crate::numtheory::{exists_n_dividing, factorize, mod_pow};

/// Which construction produced a witness.
#[derive(Debug, Clone, PartialEq)]
pub enum WitnessCase {
    /// Type 1: `gamma = y`, `tau_w = 1`.
    TypeOne,
    /// Types 3 to 5: `gamma = y`, `tau_w = sum_{i < r/2} y^{2i}` with `r = o(y)`.
    TypeThreeToFive { ptype: PresentationType, r: u64 },
    /// Type 2 with `m >= 4`: `gamma = x y a^{(m-4)/4}`, `tau_w = 1`.
    TypeTwoLargeM { m: u64 },
    /// `Q8 x A` with `g` in `A` of order 4: `gamma = x g`, `tau_w = 1 - g^2`.
    OrderFour { g: usize },
    /// `Q8 x A` with `g` in `A` of prime order `p | 2^n + 1`.
    ExcludedPrime { g: usize, p: u64, n: u32 },
    /// `Q8 x A` and a solution of `X^2 + Y^2 + Z^2 + 1 = 0` in `R`.
    ThreeSquares { solution: ThreeSquaresSolution },
}

impl WitnessCase {
    /// Citation tag used in verdict reasons.
    pub fn citation(&self) -> &'static str {
        match self {
            WitnessCase::TypeOne | WitnessCase::TypeThreeToFive { .. } | WitnessCase::TypeTwoLargeM { .. } => "TheoremA",
            WitnessCase::OrderFour { .. } => "TheoremA.1",
            WitnessCase::ExcludedPrime { .. } => "TheoremA.2",
            WitnessCase::ThreeSquares { .. } => "TheoremA.equation",
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            WitnessCase::TypeOne => "type-1",
            WitnessCase::TypeThreeToFive { .. } => "type-3-5",
            WitnessCase::TypeTwoLargeM { .. } => "type-2-large-m",
            WitnessCase::OrderFour { .. } => "order-4",
            WitnessCase::ExcludedPrime { .. } => "excluded-prime",
            WitnessCase::ThreeSquares { .. } => "three-squares",
        }
    }
}

impl fmt::Display for WitnessCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessCase::TypeOne => write!(f, "type D1"),
            WitnessCase::TypeThreeToFive { ptype, r } => write!(f, "type {ptype}, o(y) = {r}"),
            WitnessCase::TypeTwoLargeM { m } => write!(f, "type D2 with m = {m}"),
            WitnessCase::OrderFour { .. } => write!(f, "A has an element of order 4"),
            WitnessCase::ExcludedPrime { p, n, .. } => write!(f, "A has an element of order {p}, {p} | 2^{n}+1"),
            WitnessCase::ThreeSquares { .. } => write!(f, "X^2+Y^2+Z^2+1 = 0 is solvable in R"),
        }
    }
}

/// A pair `(gamma, tau_w)` meant to satisfy both conditions of the
/// non-*-cleanness criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct NonCleanWitness {
    pub gamma: GroupRingElement,
    pub tau_w: GroupRingElement,
    pub case: WitnessCase,
}

impl NonCleanWitness {
    /// The element `h = 4^-1 (1 + gamma)(1 - s)` of `(RG)f` that has no
    /// *-clean decomposition when the witness is valid.
    pub fn problem_element(&self, slc: &SLCStructure) -> GroupRingElement {
        let ring = self.gamma.ring();
        let quarter = ring.mul(&ring.two_inverse(), &ring.two_inverse());
        let one = GroupRingElement::one(slc.group(), ring);
        one.add(&self.gamma).unwrap().mul(&one_minus_s(slc, ring)).unwrap().scalar_mul(&quarter)
    }

    pub fn to_json(&self) -> Value {
        let ring = self.gamma.ring();
        let mut case = json!({ "tag": self.case.tag(), "citation": self.case.citation(), "description": self.case.to_string() });
        match &self.case {
            WitnessCase::OrderFour { g } | WitnessCase::ExcludedPrime { g, .. } => {
                case["g"] = json!(self.gamma.group().name(*g));
            }
            WitnessCase::ThreeSquares { solution } => {
                case["solution"] = json!([
                    ring.format_element(&solution.x),
                    ring.format_element(&solution.y),
                    ring.format_element(&solution.z)
                ]);
            }
            _ => {}
        }
        json!({ "case": case, "gamma": self.gamma.to_json(), "tau_w": self.tau_w.to_json() })
    }
}

pub(crate) fn one_minus_s(slc: &SLCStructure, ring: &Arc<CoefficientRing>) -> GroupRingElement {
    GroupRingElement::one(slc.group(), ring).sub(&GroupRingElement::basis(slc.group(), ring, slc.s())).unwrap()
}

#[derive(Debug, Clone, PartialEq)]
pub enum WitnessOutcome {
    Found(NonCleanWitness),
    /// No construction applies.
    NotFound,
    /// The three-squares search over `R` was inconclusive.
    Undetermined(String),
}

fn basis(slc: &SLCStructure, ring: &Arc<CoefficientRing>, g: usize) -> GroupRingElement {
    GroupRingElement::basis(slc.group(), ring, g)
}

/// First element of `A` (in its own enumeration order) with the given order.
fn abelian_element_of_order(slc: &SLCStructure, order: u64) -> Option<usize> {
    let group = slc.group();
    slc.abelian_elements().iter().copied().find(|&g| group.element_order(g) == order)
}

/// Tries the constructions in order: type 1; types 3 to 5; type 2 with
/// `m >= 4`; an order-4 element of `A`; an element of `A` of prime order
/// `p` with `p | 2^n + 1`; a solution of the three-squares equation in `R`.
pub fn generate_witness(slc: &SLCStructure, ring: &Arc<CoefficientRing>, height_bound: u64) -> WitnessOutcome {
    let group = slc.group();
    let presentation = slc.presentation();
    let one = GroupRingElement::one(group, ring);
    let found = |gamma, tau_w, case| WitnessOutcome::Found(NonCleanWitness { gamma, tau_w, case });

    match presentation.ptype {
        PresentationType::D1 => return found(basis(slc, ring, slc.y()), one, WitnessCase::TypeOne),
        ptype @ (PresentationType::D3 | PresentationType::D4 | PresentationType::D5) => {
            let y = slc.y();
            let r = group.element_order(y);
            let y2 = group.mul(y, y);
            let mut tau = GroupRingElement::zero(group, ring);
            for i in 0..r / 2 {
                tau = tau.add(&basis(slc, ring, group.pow(y2, i))).unwrap();
            }
            return found(basis(slc, ring, y), tau, WitnessCase::TypeThreeToFive { ptype, r });
        }
        PresentationType::D2 => {}
    }

    let m = presentation.m();
    if m >= 4 {
        let g = group.mul(slc.xy(), group.pow(slc.a(), (m - 4) / 4));
        return found(basis(slc, ring, g), one, WitnessCase::TypeTwoLargeM { m });
    }

    if let Some(g) = abelian_element_of_order(slc, 4) {
        let gamma = basis(slc, ring, group.mul(slc.x(), g));
        let tau = one.sub(&basis(slc, ring, group.mul(g, g))).unwrap();
        return found(gamma, tau, WitnessCase::OrderFour { g });
    }

    let abelian_order = slc.abelian_elements().len() as u64;
    for (p, _) in factorize(abelian_order) {
        if p == 2 {
            continue;
        }
        let Some(n) = exists_n_dividing(p) else { continue };
        let n = n as u32;
        let g = abelian_element_of_order(slc, p).expect("Cauchy: A has an element of each prime order dividing |A|");
        let (alpha, beta) = match annihilator_pair(group, ring, g, p, n) {
            Ok(pair) => pair,
            Err(e) => return WitnessOutcome::Undetermined(e.to_string()),
        };
        let shift = basis(slc, ring, group.pow(g, (mod_pow(2, (n - 1) as u64, p) + 1) % p));
        let gamma = alpha
            .mul(&shift)
            .unwrap()
            .mul(&basis(slc, ring, slc.x()))
            .unwrap()
            .add(&beta.mul(&shift).unwrap().mul(&basis(slc, ring, slc.y())).unwrap())
            .unwrap();
        let tau = basis(slc, ring, g).sub(&one).unwrap();
        return found(gamma, tau, WitnessCase::ExcludedPrime { g, p, n });
    }

    match solve_three_squares(ring, height_bound) {
        ThreeSquaresOutcome::Solution(solution) => {
            let mut w = GroupRingElement::zero(group, ring);
            for (coef, t) in [(&solution.x, slc.x()), (&solution.y, slc.y()), (&solution.z, slc.xy())] {
                w = w.add(&basis(slc, ring, t).scalar_mul(coef)).unwrap();
            }
            let gamma = w.mul(&one_minus_s(slc, ring)).unwrap().scalar_mul(&ring.two_inverse());
            found(gamma, one, WitnessCase::ThreeSquares { solution })
        }
        ThreeSquaresOutcome::NoSolution => WitnessOutcome::NotFound,
        ThreeSquaresOutcome::Unknown(why) => WitnessOutcome::Undetermined(why),
    }
}
