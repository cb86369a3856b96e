//! Decision procedures for *-cleanness and the brute-force checkers they are
//! validated against.

mod brute;
mod crossval;
mod theory;
mod verdict;

use std::fmt;
use std::sync::Arc;

use serde_json::json;

pub use brute::{
    brute_clean, brute_star_clean, element_star_clean, element_star_clean_in_component, BruteConfig, BruteMode,
    BruteResult,
};
pub use crossval::{cross_validate, Agreement, CrossValidation};
pub use theory::{
    clean_status_from_coefficients, corollary_a1_reason, equation_certificate, field_components, necessary_conditions,
    perlis_walker, root_degree, theorem_b_decide, theorem_c_decide, CleanStatus, NecessaryOutcome,
    PerlisWalkerComponent, PerlisWalkerDecomposition,
};
pub use verdict::{direct_sum_reduce, Certificate, Reason, Status, Verdict};

pub use crate::numtheory::exists_n_dividing;

use crate::coeff::{CoefficientRing, RingKind, DEFAULT_HEIGHT_BOUND};
use crate::error::{Error, Result};
use crate::groups::{canonical_involution, classical_involution, FiniteGroup, InvolutionMap, SLCStructure};
use crate::numtheory::is_prime;
use crate::witness::DEFAULT_CONDITION2_BUDGET;

/// The group a question is asked about: an SLC-group with its presentation
/// data, or any other finite group (brute force only).
#[derive(Debug, Clone)]
pub enum Carrier {
    Slc(SLCStructure),
    Plain(Arc<FiniteGroup>),
}

impl Carrier {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        match self {
            Carrier::Slc(s) => s.group(),
            Carrier::Plain(g) => g,
        }
    }

    pub fn slc(&self) -> Option<&SLCStructure> {
        match self {
            Carrier::Slc(s) => Some(s),
            Carrier::Plain(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvolutionKind {
    Canonical,
    Classical,
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionKind::Canonical => "canonical",
            InvolutionKind::Classical => "classical",
        })
    }
}

pub fn involution_for(carrier: &Carrier, kind: InvolutionKind) -> Result<InvolutionMap> {
    match (carrier, kind) {
        (Carrier::Slc(s), InvolutionKind::Canonical) => Ok(canonical_involution(s)),
        (Carrier::Plain(_), InvolutionKind::Canonical) => {
            Err(Error::InvalidParameter("the canonical involution needs an SLC-group".into()))
        }
        (c, InvolutionKind::Classical) => Ok(classical_involution(c.group())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    pub height_bound: u64,
    pub condition2_budget: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { height_bound: DEFAULT_HEIGHT_BOUND, condition2_budget: DEFAULT_CONDITION2_BUDGET }
    }
}

fn out_of_scope(detail: &str) -> Verdict {
    Verdict::unknown(Reason::new(
        "G is an SLC-group with the canonical involution",
        "TheoremA",
        json!({ "applicable": false, "detail": detail }),
    ))
}

fn both_conclusive(a: &Verdict, b: &Verdict) -> bool {
    a.status != Status::Unknown && b.status != Status::Unknown
}

/// Decides whether `RG` is *-clean from the structure of `G` and the
/// arithmetic of `R`, without enumerating `RG`.
pub fn decide(
    carrier: &Carrier,
    ring: &Arc<CoefficientRing>,
    involution: &InvolutionMap,
    opts: &DecideOptions,
) -> Result<Verdict> {
    let Carrier::Slc(slc) = carrier else {
        return Ok(out_of_scope("G is not given by an SLC presentation"));
    };
    if involution.image() != canonical_involution(slc).image() {
        return Ok(out_of_scope("the involution differs from the canonical one"));
    }
    let is_rationals = matches!(ring.kind(), RingKind::Rationals);
    let a_order = slc.abelian_elements().len() as u64;
    let necessary = match necessary_conditions(slc, ring, opts.height_bound, opts.condition2_budget)? {
        NecessaryOutcome::Violated(mut v) => {
            if is_rationals && slc.presentation().is_q8_times_abelian() {
                if let Some((reason, cert)) = corollary_a1_reason(a_order, opts.height_bound) {
                    v = v.with_reason(reason);
                    if let Some(c) = cert {
                        v = v.with_certificate(c);
                    }
                }
            }
            return Ok(v);
        }
        NecessaryOutcome::Undetermined(reasons) => {
            return Ok(Verdict { status: Status::Unknown, reasons, certificates: Vec::new() });
        }
        NecessaryOutcome::Satisfied(reasons) => reasons,
    };

    let a = slc.abelian_factor()?;
    let prefix = |v: Verdict| {
        let mut reasons = necessary.clone();
        reasons.extend(v.reasons);
        Verdict { status: v.status, reasons, certificates: v.certificates }
    };
    let field_verdict = match field_components(ring) {
        Some(fields) => match theorem_c_decide(&fields, &a, opts.height_bound) {
            Ok(v) => Some(v),
            Err(Error::CharDivides { characteristic, modulus }) => Some(Verdict::unknown(Reason::new(
                "char F does not divide |G|",
                "TheoremC",
                json!({ "holds": false, "characteristic": characteristic, "order": modulus }),
            ))),
            Err(e) => return Err(e),
        },
        None => None,
    };

    if a.exponent() <= 2 {
        let rank = a.order().trailing_zeros();
        let clean = clean_status_from_coefficients(ring);
        let by_b = theorem_b_decide(ring, rank, &clean, opts.height_bound);
        if let Some(by_c) = &field_verdict {
            if both_conclusive(&by_b, by_c) && by_b.status != by_c.status {
                return Err(Error::Discrepancy(format!(
                    "elementary abelian criterion gives {} but the field criterion gives {}",
                    by_b.status, by_c.status
                )));
            }
        }
        return Ok(prefix(by_b));
    }

    let Some(mut v) = field_verdict else {
        return Ok(prefix(Verdict::unknown(Reason::new(
            "R is a direct sum of fields",
            "TheoremC",
            json!({ "holds": false, "ring": ring.to_string() }),
        ))));
    };
    if is_rationals && v.status == Status::StarClean && is_prime(a_order) && a_order % 8 == 7 {
        v = v.with_reason(Reason::new(
            "G = Q8 x C_p with p ≡ 7 mod 8 and R = Q",
            "CorollaryA.2",
            json!({ "p": a_order, "level": "4" }),
        ));
    }
    Ok(prefix(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{make_ring, RingSpec};
    use crate::groups::{build_abelian, build_slc, PresentationType};

    fn ring(spec: RingSpec) -> Arc<CoefficientRing> {
        Arc::new(make_ring(&spec).unwrap())
    }

    fn run(carrier: &Carrier, r: &Arc<CoefficientRing>) -> Verdict {
        let sigma = involution_for(carrier, InvolutionKind::Canonical).unwrap();
        let v = decide(carrier, r, &sigma, &DecideOptions::default()).unwrap();
        assert!(v.is_well_formed());
        v
    }

    fn q8(abelian: &[u64]) -> Carrier {
        Carrier::Slc(build_slc(PresentationType::D2, 1, None, None, abelian).unwrap())
    }

    #[test]
    fn rational_examples() {
        let q = ring(RingSpec::Rationals);
        let v = run(&q8(&[3]), &q);
        assert_eq!(v.status, Status::NotStarClean);
        assert!(v.cites("CorollaryA.1") && v.cites("TheoremA.2"));
        assert_eq!(run(&q8(&[5]), &q).status, Status::NotStarClean);
        let v = run(&q8(&[7]), &q);
        assert_eq!(v.status, Status::StarClean);
        assert!(v.cites("CorollaryA.2"));
        let v = run(&q8(&[]), &q);
        assert_eq!(v.status, Status::StarClean);
        assert!(v.cites("TheoremB"));
        assert_eq!(run(&q8(&[2, 2]), &q).status, Status::StarClean);
        assert_eq!(run(&q8(&[4]), &q).status, Status::NotStarClean);
    }

    #[test]
    fn finite_and_structural_examples() {
        let f3 = ring(RingSpec::FiniteField(3, 1));
        let v = run(&q8(&[]), &f3);
        assert_eq!(v.status, Status::NotStarClean);
        assert!(v.certificates.iter().any(|c| c.kind == "equation"));
        let d4 = Carrier::Slc(build_slc(PresentationType::D4, 1, Some(1), None, &[]).unwrap());
        let v = run(&d4, &ring(RingSpec::Rationals));
        assert_eq!(v.status, Status::NotStarClean);
        assert!(v.cites("TheoremA"));
    }

    #[test]
    fn out_of_scope_is_unknown() {
        let plain = Carrier::Plain(Arc::new(build_abelian(&[2]).unwrap()));
        let sigma = involution_for(&plain, InvolutionKind::Classical).unwrap();
        let v = decide(&plain, &ring(RingSpec::Rationals), &sigma, &DecideOptions::default()).unwrap();
        assert_eq!(v.status, Status::Unknown);
        assert!(involution_for(&plain, InvolutionKind::Canonical).is_err());
        // classical differs from canonical on Q8 x C3
        let c = q8(&[3]);
        let sigma = involution_for(&c, InvolutionKind::Classical).unwrap();
        let v = decide(&c, &ring(RingSpec::Rationals), &sigma, &DecideOptions::default()).unwrap();
        assert_eq!(v.status, Status::Unknown);
    }

    #[test]
    fn seventeen_is_an_excluded_prime() {
        // ord_17(2) = 8, so 17 | 2^4 + 1
        assert_eq!(exists_n_dividing(17), Some(4));
        let v = run(&q8(&[17]), &ring(RingSpec::Rationals));
        assert_eq!(v.status, Status::NotStarClean);
        assert!(v.cites("TheoremA.2"));
    }
}
